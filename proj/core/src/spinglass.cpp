#include "vcpc/spinglass.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <string>
#include <tuple>

#include "vcpc/colouring.hpp"
#include "vcpc/error.hpp"
#include "vcpc/rng.hpp"
#include "vcpc/text.hpp"

namespace vcpc {

IsingInstance IsingInstance::make(std::size_t n, std::vector<Coupling> couplings, std::vector<double> h) {
  if (h.empty()) h.assign(n, 0.0);
  if (h.size() != n) throw DimensionError("field vector must have N entries");
  for (auto& c : couplings) {
    if (c.i >= n || c.j >= n) throw IndexError("coupling index out of range");
    if (c.i == c.j) throw DomainError("self-coupling J_ii is not allowed");
    if (c.i > c.j) std::swap(c.i, c.j);
  }
  std::sort(couplings.begin(), couplings.end(),
            [](const Coupling& a, const Coupling& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
  std::vector<Coupling> merged;
  for (const auto& c : couplings) {
    if (!merged.empty() && merged.back().i == c.i && merged.back().j == c.j)
      merged.back().weight += c.weight;
    else
      merged.push_back(c);
  }
  std::erase_if(merged, [](const Coupling& c) { return c.weight == 0.0; });
  IsingInstance inst;
  inst.n = n;
  inst.couplings = std::move(merged);
  inst.h = std::move(h);
  return inst;
}

IsingInstance gen_er(const ErSpec& spec, std::uint64_t seed) {
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw DomainError("edge probability must lie in [0, 1]");
  Rng rng(seed);
  IsingInstance inst;
  inst.n = spec.n;
  inst.h.assign(spec.n, 0.0);
  for (std::size_t i = 0; i < spec.n; ++i)
    for (std::size_t j = i + 1; j < spec.n; ++j) {
      const bool edge = rng.uniform() < spec.p;
      const bool positive = rng.coin();
      if (edge)
        inst.couplings.push_back({static_cast<VarIndex>(i), static_cast<VarIndex>(j), positive ? 1.0 : -1.0});
    }
  return inst;
}

double ising_energy(const IsingInstance& inst, std::span<const std::uint8_t> s) {
  if (s.size() != inst.n) throw DimensionError("state length does not match instance");
  auto spin = [&](VarIndex v) { return s[v] ? 1.0 : -1.0; };
  double e = 0.0;
  for (const auto& c : inst.couplings) e -= c.weight * spin(c.i) * spin(c.j);
  for (std::size_t i = 0; i < inst.n; ++i) e -= inst.h[i] * spin(static_cast<VarIndex>(i));
  return e;
}

EnergyModel ising_to_qubo(const IsingInstance& inst) {
  ModelBuilder b(inst.n);
  double constant = 0.0;
  for (std::size_t i = 0; i < inst.n; ++i) {
    b.add_linear(static_cast<VarIndex>(i), -2.0 * inst.h[i]);
    constant += inst.h[i];
  }
  for (const auto& c : inst.couplings) {
    b.add_pair(c.i, c.j, -4.0 * c.weight);
    b.add_linear(c.i, 2.0 * c.weight);
    b.add_linear(c.j, 2.0 * c.weight);
    constant -= c.weight;
  }
  b.add_constant(constant);
  return std::move(b).build();
}

double sg_update_drive(const EnergyModel& qubo, std::span<const std::uint8_t> s, VarIndex k) {
  if (k >= qubo.num_vars()) throw IndexError("variable " + std::to_string(k) + " out of range");
  if (s.size() != qubo.num_vars()) throw DimensionError("state length does not match model");
  double local = 0.0;
  for (std::uint32_t t : qubo.incident_terms(k)) {
    const auto vars = qubo.term_vars(t);
    if (vars.size() == 1) {
      local += qubo.coeff(t);
    } else if (vars.size() == 2) {
      const VarIndex other = vars[0] == k ? vars[1] : vars[0];
      local += qubo.coeff(t) * s[other];
    } else {
      throw DomainError("sg_update_drive needs a quadratic model");
    }
  }
  return -local;
}

GroundState brute_force_ground(const IsingInstance& inst) {
  const std::size_t n = inst.n;
  if (n > kMaxEnumerationVars)
    throw CapacityError("brute force limited to " + std::to_string(kMaxEnumerationVars) + " spins");
  std::vector<std::vector<std::pair<VarIndex, double>>> adj(n);
  for (const auto& c : inst.couplings) {
    adj[c.i].push_back({c.j, c.weight});
    adj[c.j].push_back({c.i, c.weight});
  }
  std::vector<int> sigma(n, -1);
  State s(n, 0);
  double e = ising_energy(inst, s);
  double best = e;
  std::uint64_t best_code = 0;
  std::uint64_t code = 0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t z = 1; z < count; ++z) {
    const auto flip = static_cast<std::size_t>(std::countr_zero(z));
    double field = inst.h[flip];
    for (auto [j, w] : adj[flip]) field += w * sigma[j];
    e += 2.0 * sigma[flip] * field;
    sigma[flip] = -sigma[flip];
    code ^= std::uint64_t{1} << flip;
    if (e < best) {
      best = e;
      best_code = code;
    }
  }
  GroundState out;
  out.state = state_from_index(best_code, n);
  out.energy = ising_energy(inst, out.state);  // exact recomputation, no drift
  return out;
}

PtConfig baseline_pt_config(std::uint64_t seed) {
  PtConfig cfg;
  cfg.beta_start = 1.0;
  cfg.beta_end = 5.0;
  cfg.replicas = 10;
  cfg.swap_interval = 10;
  cfg.iters = 3000;
  cfg.repeats = 20;
  cfg.seed = seed;
  return cfg;
}

double pt_baseline(const IsingInstance& inst, const PtConfig& cfg) {
  const auto model = ising_to_qubo(inst);
  const auto plan = plan_groups(model);
  return run_pt(model, plan, cfg).best_energy;
}

SgReference sg_reference(const IsingInstance& inst, std::uint64_t seed, std::size_t threads) {
  if (inst.n <= kMaxEnumerationVars) return {brute_force_ground(inst).energy, Provenance::BruteForce};
  auto cfg = baseline_pt_config(seed);
  cfg.threads = threads;
  return {pt_baseline(inst, cfg), Provenance::LongPt};
}

void save_ising(std::ostream& out, const IsingInstance& inst) {
  out << inst.n << '\n';
  for (const auto& c : inst.couplings) out << c.i << ' ' << c.j << ' ' << format_number(c.weight) << '\n';
  for (std::size_t i = 0; i < inst.n; ++i)
    if (inst.h[i] != 0.0) out << "field " << i << ' ' << format_number(inst.h[i]) << '\n';
}

IsingInstance load_ising(std::istream& in) {
  std::string line;
  long long n = -1;
  std::vector<IsingInstance::Coupling> couplings;
  std::vector<double> h;
  std::size_t line_no = 0;
  auto index = [&](std::string_view tok) {
    const long long v = parse_int(tok);
    if (v < 0 || v >= n) throw ParseError("line " + std::to_string(line_no) + ": spin index out of range");
    return static_cast<VarIndex>(v);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto tokens = split_ws(body);
    if (n < 0) {
      if (tokens.size() != 1) throw ParseError("spin-glass header must be 'N'");
      n = parse_int(tokens[0]);
      if (n < 0) throw ParseError("negative spin count");
      h.assign(static_cast<std::size_t>(n), 0.0);
      continue;
    }
    if (tokens[0] == "field") {
      if (tokens.size() != 3) throw ParseError("line " + std::to_string(line_no) + ": expected 'field i h'");
      h[index(tokens[1])] = parse_double(tokens[2]);
      continue;
    }
    if (tokens.size() != 3) throw ParseError("line " + std::to_string(line_no) + ": expected 'i j J'");
    couplings.push_back({index(tokens[0]), index(tokens[1]), parse_double(tokens[2])});
  }
  if (n < 0) throw ParseError("missing spin-glass header");
  try {
    return IsingInstance::make(static_cast<std::size_t>(n), std::move(couplings), std::move(h));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace vcpc
