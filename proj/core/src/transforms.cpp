#include "vcpc/transforms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>

#include "vcpc/error.hpp"

namespace vcpc {

double rosenberg_penalty(std::uint8_t a, std::uint8_t b, std::uint8_t y) {
  return static_cast<double>(a * b) - 2.0 * a * y - 2.0 * b * y + 3.0 * y;
}

namespace {

QuadratisationResult reduce(const EnergyModel& model, std::optional<double> uniform_strength) {
  const std::size_t n = model.num_vars();
  QuadratisationResult out;
  out.num_original = n;
  std::map<std::pair<VarIndex, VarIndex>, VarIndex> aux_of;
  std::vector<Term> objective;

  for (auto& term : model.terms()) {
    if (term.vars.size() <= 2) {
      objective.push_back(std::move(term));
      continue;
    }
    VarIndex acc = term.vars[0];
    for (std::size_t i = 1; i + 1 < term.vars.size(); ++i) {
      const auto key = std::minmax(acc, term.vars[i]);
      auto [it, inserted] = aux_of.try_emplace(key, static_cast<VarIndex>(n + out.aux_pairs.size()));
      if (inserted) out.aux_pairs.push_back(key);
      acc = it->second;
    }
    objective.push_back({term.coeff, {acc, term.vars.back()}});
  }

  const std::size_t aux = out.aux_pairs.size();
  out.strengths.assign(aux, uniform_strength.value_or(0.0));
  if (!uniform_strength) {
    // Each aux's penalty enters the bound of the aux it was built from, so
    // strengths are fixed from the newest aux backwards.
    std::vector<double> weight(aux, 0.0);
    for (const auto& t : objective)
      for (VarIndex v : t.vars)
        if (v >= n) weight[v - n] += std::abs(t.coeff);
    for (std::size_t y = aux; y-- > 0;) {
      out.strengths[y] = 1.0 + 2.0 * weight[y];
      // Penalty of y touches a and b via M ab and -2M ay (or -2M by): 3M in total.
      for (VarIndex input : {out.aux_pairs[y].first, out.aux_pairs[y].second})
        if (input >= n) weight[input - n] += 3.0 * out.strengths[y];
    }
  }

  ModelBuilder b(n + aux);
  for (auto& t : objective) b.add(t.coeff, std::move(t.vars));
  for (std::size_t y = 0; y < aux; ++y) {
    const auto [a, c] = out.aux_pairs[y];
    const auto yv = static_cast<VarIndex>(n + y);
    const double m = out.strengths[y];
    b.add_pair(a, c, m);
    b.add_pair(a, yv, -2.0 * m);
    b.add_pair(c, yv, -2.0 * m);
    b.add_linear(yv, 3.0 * m);
  }
  out.model = std::move(b).build();
  return out;
}

}  // namespace

QuadratisationResult quadratise(const EnergyModel& model) { return reduce(model, std::nullopt); }

QuadratisationResult quadratise(const EnergyModel& model, double strength) {
  if (!(strength > 0.0)) throw DomainError("quadratisation strength must be positive");
  return reduce(model, strength);
}

State extend_state(const QuadratisationResult& q, std::span<const std::uint8_t> original) {
  if (original.size() != q.num_original) throw DimensionError("state length does not match original model");
  State s(original.begin(), original.end());
  s.reserve(q.num_original + q.aux_count());
  for (const auto& [a, b] : q.aux_pairs) s.push_back(static_cast<std::uint8_t>(s[a] & s[b]));
  return s;
}

State project_state(const QuadratisationResult& q, std::span<const std::uint8_t> extended) {
  if (extended.size() != q.num_original + q.aux_count())
    throw DimensionError("state length does not match quadratised model");
  return State(extended.begin(), extended.begin() + static_cast<std::ptrdiff_t>(q.num_original));
}

IsingForm qubo_to_ising(const EnergyModel& qubo) {
  if (qubo.max_order() > 2) throw DomainError("Ising form needs a quadratic model");
  // s = (1 + sigma) / 2: Q s_i s_j = Q/4 (1 + sigma_i + sigma_j + sigma_i sigma_j), b s_i = b/2 (1 + sigma_i).
  const std::size_t n = qubo.num_vars();
  std::vector<IsingInstance::Coupling> couplings;
  std::vector<double> h(n, 0.0);
  double offset = qubo.constant();
  for (std::size_t t = 0; t < qubo.num_terms(); ++t) {
    const auto vars = qubo.term_vars(t);
    const double c = qubo.coeff(t);
    if (vars.size() == 1) {
      h[vars[0]] -= c / 2.0;
      offset += c / 2.0;
    } else {
      couplings.push_back({vars[0], vars[1], -c / 4.0});
      h[vars[0]] -= c / 4.0;
      h[vars[1]] -= c / 4.0;
      offset += c / 4.0;
    }
  }
  return {IsingInstance::make(n, std::move(couplings), std::move(h)), offset};
}

std::size_t copies_needed(std::size_t degree, std::size_t k) {
  if (k < 3) throw DomainError("neighbour budget must be >= 3 to build chains");
  if (degree <= k) return 1;
  return (degree - 2 + (k - 2) - 1) / (k - 2);
}

double default_lambda(const IsingInstance& g, std::size_t k) {
  double w = 0.0;
  for (const auto& c : g.couplings) w = std::max(w, std::abs(c.weight));
  for (double h : g.h) w = std::max(w, std::abs(h));
  if (w == 0.0) w = 1.0;
  return 2.0 * w * static_cast<double>(k - 1);
}

double safe_lambda(const IsingInstance& g) {
  std::vector<double> load(g.n, 0.0);
  for (std::size_t i = 0; i < g.n; ++i) load[i] = std::abs(g.h[i]);
  for (const auto& c : g.couplings) {
    load[c.i] += std::abs(c.weight);
    load[c.j] += std::abs(c.weight);
  }
  return 1.0 + (load.empty() ? 0.0 : *std::max_element(load.begin(), load.end()));
}

SparsifiedGraph sparsify(const IsingInstance& g, std::size_t k, std::optional<double> lambda) {
  if (k < 3) throw DomainError("neighbour budget must be >= 3 to build chains");
  const double link = lambda.value_or(default_lambda(g, k));
  if (!(link > 0.0)) throw DomainError("chain coupling lambda must be positive");

  std::vector<std::vector<std::size_t>> incident(g.n);
  for (std::size_t e = 0; e < g.couplings.size(); ++e) {
    incident[g.couplings[e].i].push_back(e);
    incident[g.couplings[e].j].push_back(e);
  }

  SparsifiedGraph out;
  out.lambda = link;
  out.budget = k;
  out.chains.resize(g.n);
  std::size_t next = 0;
  for (std::size_t v = 0; v < g.n; ++v) {
    const std::size_t c = copies_needed(incident[v].size(), k);
    for (std::size_t i = 0; i < c; ++i) out.chains[v].push_back(static_cast<VarIndex>(next++));
  }

  // slot[e] = physical endpoints of edge e on the i side and the j side.
  std::vector<std::array<VarIndex, 2>> slot(g.couplings.size());
  for (std::size_t v = 0; v < g.n; ++v) {
    const auto& chain = out.chains[v];
    const std::size_t c = chain.size();
    std::vector<std::size_t> room(c, c == 1 ? k : k - 2);
    if (c > 1) room.front() = room.back() = k - 1;
    std::size_t cursor = 0;
    for (std::size_t e : incident[v]) {
      while (room[cursor] == 0) cursor = (cursor + 1) % c;
      slot[e][g.couplings[e].i == v ? 0 : 1] = chain[cursor];
      --room[cursor];
      cursor = (cursor + 1) % c;
    }
  }

  std::vector<IsingInstance::Coupling> couplings;
  for (std::size_t e = 0; e < g.couplings.size(); ++e) {
    const auto& c = g.couplings[e];
    couplings.push_back({slot[e][0], slot[e][1], c.weight});
  }
  std::vector<double> h(next, 0.0);
  for (std::size_t v = 0; v < g.n; ++v) {
    const auto& chain = out.chains[v];
    h[chain.front()] = g.h[v];
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) couplings.push_back({chain[i], chain[i + 1], link});
  }
  out.physical = IsingInstance::make(next, std::move(couplings), std::move(h));
  return out;
}

State logical_state(const SparsifiedGraph& sg, std::span<const std::uint8_t> physical) {
  if (physical.size() != sg.num_physical()) throw DimensionError("state length does not match physical graph");
  State s(sg.chains.size(), 0);
  for (std::size_t v = 0; v < sg.chains.size(); ++v) s[v] = physical[sg.chains[v].front()];
  return s;
}

bool chains_consistent(const SparsifiedGraph& sg, std::span<const std::uint8_t> physical) {
  for (const auto& chain : sg.chains)
    for (VarIndex c : chain)
      if (physical[c] != physical[chain.front()]) return false;
  return true;
}

std::size_t max_degree(const IsingInstance& g) {
  std::vector<std::size_t> deg(g.n, 0);
  for (const auto& c : g.couplings) {
    ++deg[c.i];
    ++deg[c.j];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

double graph_density(const IsingInstance& g) {
  if (g.n < 2) return 0.0;
  const double v = static_cast<double>(g.n);
  return 2.0 * static_cast<double>(g.num_edges()) / (v * (v - 1.0));
}

GrowthMetrics growth_metrics(const IsingInstance& original, const IsingInstance& transformed) {
  if (original.n == 0) throw DomainError("growth metrics need a non-empty graph");
  GrowthMetrics m;
  m.r_n = static_cast<double>(transformed.n) / static_cast<double>(original.n);
  const std::size_t d_new = max_degree(transformed);
  m.r_s = d_new == 0 ? 1.0 : static_cast<double>(max_degree(original)) / static_cast<double>(d_new);
  m.m_original = graph_density(original);
  m.m_new = graph_density(transformed);
  return m;
}

std::vector<SparsifyPoint> sparsify_sweep(const IsingInstance& g, std::span<const std::size_t> budgets) {
  std::vector<SparsifyPoint> out;
  for (std::size_t k : budgets) {
    const auto sg = sparsify(g, k);
    const auto m = growth_metrics(g, sg.physical);
    out.push_back({k, sg.num_physical(), m.r_n, m.r_s});
  }
  return out;
}

}  // namespace vcpc
