#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oracle {

using vcpc::State;

Minimum brute_force_min(const vcpc::EnergyModel& model, double tol) {
  const std::size_t n = model.num_vars();
  if (n > 22) throw std::invalid_argument("brute_force_min: too many variables");
  Minimum out;
  out.energy = std::numeric_limits<double>::infinity();
  for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) {
    const State s = vcpc::state_from_index(z, n);
    const double e = vcpc::eval_energy(model, s);
    if (e < out.energy - tol) {
      out.energy = e;
      out.argmins.assign(1, s);
    } else if (std::abs(e - out.energy) <= tol) {
      out.argmins.push_back(s);
    }
  }
  return out;
}

double drive_by_difference(const vcpc::EnergyModel& model, State s, vcpc::VarIndex k) {
  s[k] = 0;
  const double e0 = vcpc::eval_energy(model, s);
  s[k] = 1;
  return e0 - vcpc::eval_energy(model, s);
}

vcpc::EnergyModel random_model(std::size_t n, std::size_t max_order, std::size_t terms, vcpc::Rng& rng,
                               int range) {
  std::vector<vcpc::Term> out;
  for (std::size_t t = 0; t < terms; ++t) {
    const std::size_t order = 1 + rng.below(std::min(max_order, n));
    std::vector<vcpc::VarIndex> vars;
    while (vars.size() < order) {
      const auto v = static_cast<vcpc::VarIndex>(rng.below(n));
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    const double c = static_cast<double>(static_cast<int>(rng.below(2 * range + 1)) - range);
    out.push_back({c, vars});
  }
  return vcpc::EnergyModel(n, out);
}

vcpc::EnergyModel random_qubo(std::size_t n, double density, vcpc::Rng& rng) {
  vcpc::ModelBuilder b(n);
  for (std::size_t i = 0; i < n; ++i) {
    b.add_linear(static_cast<vcpc::VarIndex>(i), 2.0 * rng.uniform() - 1.0);
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.uniform() < density)
        b.add_pair(static_cast<vcpc::VarIndex>(i), static_cast<vcpc::VarIndex>(j), 2.0 * rng.uniform() - 1.0);
  }
  return std::move(b).build();
}

State random_bits(std::size_t n, vcpc::Rng& rng) {
  State s(n);
  for (auto& b : s) b = rng.coin() ? 1 : 0;
  return s;
}

double held_karp(const vcpc::TspInstance& inst) {
  const std::size_t n = inst.size();
  if (n <= 1) return 0.0;
  if (n > 20) throw std::invalid_argument("held_karp: too many cities");
  const std::size_t full = std::size_t{1} << (n - 1);  // subsets of cities 1..n-1
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dp(full * (n - 1), inf);
  auto at = [&](std::size_t mask, std::size_t last) -> double& { return dp[mask * (n - 1) + last]; };
  for (std::size_t j = 1; j < n; ++j) at(std::size_t{1} << (j - 1), j - 1) = inst.distance(0, j);
  for (std::size_t mask = 1; mask < full; ++mask) {
    for (std::size_t last = 0; last + 1 < n; ++last) {
      const double base = at(mask, last);
      if (!(mask >> last & 1U) || base == inf) continue;
      for (std::size_t next = 0; next + 1 < n; ++next) {
        if (mask >> next & 1U) continue;
        double& slot = at(mask | (std::size_t{1} << next), next);
        slot = std::min(slot, base + inst.distance(last + 1, next + 1));
      }
    }
  }
  double best = inf;
  for (std::size_t last = 0; last + 1 < n; ++last) best = std::min(best, at(full - 1, last) + inst.distance(last + 1, 0));
  return best;
}

namespace {

bool hits_all(const vcpc::Hypergraph& h, const std::vector<std::size_t>& chosen) {
  for (const auto& e : h.edges) {
    bool hit = false;
    for (auto v : e)
      if (std::find(chosen.begin(), chosen.end(), v) != chosen.end()) hit = true;
    if (!hit) return false;
  }
  return true;
}

bool search(const vcpc::Hypergraph& h, std::size_t size, std::size_t start, std::vector<std::size_t>& chosen) {
  if (chosen.size() == size) return hits_all(h, chosen);
  for (std::size_t v = start; v < h.num_vertices; ++v) {
    chosen.push_back(v);
    if (search(h, size, v + 1, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

std::size_t min_hitting_set_size(const vcpc::Hypergraph& h) {
  for (std::size_t size = 0; size <= h.num_vertices; ++size) {
    std::vector<std::size_t> chosen;
    if (search(h, size, 0, chosen)) return size;
  }
  throw std::logic_error("no hitting set found");
}

double ising_ground_energy(const vcpc::IsingInstance& inst) {
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t z = 0; z < (std::uint64_t{1} << inst.n); ++z) {
    std::vector<int> sigma(inst.n);
    for (std::size_t i = 0; i < inst.n; ++i) sigma[i] = (z >> i & 1U) ? 1 : -1;
    double e = 0.0;
    for (const auto& c : inst.couplings) e -= c.weight * sigma[c.i] * sigma[c.j];
    for (std::size_t i = 0; i < inst.n; ++i) e -= inst.h[i] * sigma[i];
    best = std::min(best, e);
  }
  return best;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
  double tv = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) tv += std::abs(p[i] - q[i]);
  return 0.5 * tv;
}

}  // namespace oracle
