#include "vcpc/colouring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "vcpc/error.hpp"
#include "vcpc/hitting_set.hpp"
#include "vcpc/parallel.hpp"
#include "vcpc/rng.hpp"

namespace vcpc {

namespace {

void finalise(ConflictGraph& g) {
  for (auto& nbrs : g.adjacency) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
}

void connect_all(ConflictGraph& g, std::span<const VarIndex> vs) {
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b) {
      g.adjacency[vs[a]].push_back(vs[b]);
      g.adjacency[vs[b]].push_back(vs[a]);
    }
}

}  // namespace

std::size_t ConflictGraph::max_degree() const {
  std::size_t d = 0;
  for (const auto& nbrs : adjacency) d = std::max(d, nbrs.size());
  return d;
}

std::size_t ConflictGraph::num_edges() const {
  std::size_t total = 0;
  for (const auto& nbrs : adjacency) total += nbrs.size();
  return total / 2;
}

bool ConflictGraph::adjacent(VarIndex u, VarIndex v) const {
  const auto& nbrs = adjacency[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::size_t GroupPlan::num_free() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.size();
  return n;
}

double GroupPlan::avg_group_size() const {
  if (groups.empty()) return 0.0;
  return static_cast<double>(num_free()) / static_cast<double>(groups.size());
}

ConflictGraph build_conflict_graph(const EnergyModel& model, const ClampMask& clamp) {
  if (clamp.size() != model.num_vars())
    throw DimensionError("clamp mask size does not match model");
  ConflictGraph g;
  g.num_vars = model.num_vars();
  g.adjacency.resize(g.num_vars);
  g.excluded.assign(g.num_vars, 0);
  for (std::size_t v = 0; v < g.num_vars; ++v) g.excluded[v] = clamp.is_free(v) ? 0 : 1;

  std::vector<VarIndex> free_vars;
  for (std::size_t t = 0; t < model.num_terms(); ++t) {
    if (model.term_order(t) < 2) continue;
    free_vars.clear();
    for (VarIndex v : model.term_vars(t))
      if (clamp.is_free(v)) free_vars.push_back(v);
    connect_all(g, free_vars);
  }
  finalise(g);
  return g;
}

ConflictGraph build_conflict_graph(const EnergyModel& model) {
  return build_conflict_graph(model, ClampMask(model.num_vars()));
}

ConflictGraph build_conflict_graph(const Hypergraph& h) {
  ConflictGraph g;
  g.num_vars = h.num_vertices;
  g.adjacency.resize(g.num_vars);
  g.excluded.assign(g.num_vars, 0);
  for (const auto& e : h.edges) connect_all(g, e);
  finalise(g);
  return g;
}

GroupPlan greedy_colour(const ConflictGraph& g, const ClampMask& clamp) {
  if (clamp.size() != g.num_vars) throw DimensionError("clamp mask size does not match graph");
  std::vector<VarIndex> order;
  order.reserve(g.num_vars);
  for (std::size_t v = 0; v < g.num_vars; ++v)
    if (!g.excluded[v] && clamp.is_free(v)) order.push_back(static_cast<VarIndex>(v));
  std::stable_sort(order.begin(), order.end(), [&](VarIndex a, VarIndex b) {
    return g.degree(a) > g.degree(b);
  });

  constexpr std::size_t kUncoloured = static_cast<std::size_t>(-1);
  std::vector<std::size_t> colour(g.num_vars, kUncoloured);
  std::vector<std::size_t> seen;  // seen[c] == v+1 when colour c is taken by a neighbour of v
  std::size_t num_colours = 0;
  for (VarIndex v : order) {
    for (VarIndex u : g.adjacency[v])
      if (colour[u] != kUncoloured) seen[colour[u]] = v + 1;
    std::size_t c = 0;
    while (c < num_colours && seen[c] == v + 1) ++c;
    if (c == num_colours) {
      ++num_colours;
      seen.push_back(0);
    }
    colour[v] = c;
  }

  GroupPlan plan;
  plan.num_vars = g.num_vars;
  plan.clamp = clamp;
  plan.groups.resize(num_colours);
  for (std::size_t v = 0; v < g.num_vars; ++v)
    if (colour[v] != kUncoloured) plan.groups[colour[v]].push_back(static_cast<VarIndex>(v));
  return plan;
}

GroupPlan greedy_colour(const ConflictGraph& g) {
  ClampMask clamp(g.num_vars);
  for (std::size_t v = 0; v < g.num_vars; ++v)
    if (g.excluded[v]) clamp.set(v, VarStatus::ClampedZero);
  return greedy_colour(g, clamp);
}

GroupPlan plan_groups(const EnergyModel& model, const ClampMask& clamp) {
  return greedy_colour(build_conflict_graph(model, clamp), clamp);
}

GroupPlan plan_groups(const EnergyModel& model) { return plan_groups(model, ClampMask(model.num_vars())); }

bool is_valid_plan(const GroupPlan& plan, const ConflictGraph& g) {
  std::vector<std::uint8_t> covered(plan.num_vars, 0);
  for (const auto& group : plan.groups) {
    for (std::size_t a = 0; a < group.size(); ++a) {
      const VarIndex v = group[a];
      if (v >= plan.num_vars || covered[v] || !plan.clamp.is_free(v)) return false;
      covered[v] = 1;
      for (std::size_t b = a + 1; b < group.size(); ++b)
        if (g.adjacent(v, group[b])) return false;
    }
  }
  for (std::size_t v = 0; v < plan.num_vars; ++v)
    if (plan.clamp.is_free(v) && !covered[v]) return false;
  return true;
}

std::vector<GroupSweepCell> group_count_sweep(std::size_t n, std::span<const std::size_t> k_range,
                                              std::span<const std::size_t> m_range,
                                              std::size_t samples, std::uint64_t seed,
                                              std::size_t threads) {
  if (k_range.empty() || m_range.empty() || samples == 0)
    throw ConfigError("group_count_sweep needs non-empty k and m ranges and samples >= 1");
  std::vector<GroupSweepCell> cells;
  for (std::size_t k : k_range)
    for (std::size_t m : m_range) cells.push_back({k, m, 0.0, 0.0});

  parallel_for(cells.size(), threads, [&](std::size_t c) {
    auto& cell = cells[c];
    std::vector<double> counts(samples);
    for (std::size_t s = 0; s < samples; ++s) {
      const auto h = gen_hypergraph(n, cell.m, cell.k, derive_seed(seed, {cell.k, cell.m, s}));
      counts[s] = static_cast<double>(greedy_colour(build_conflict_graph(h)).num_groups());
    }
    const double mean = std::accumulate(counts.begin(), counts.end(), 0.0) / samples;
    double var = 0.0;
    for (double x : counts) var += (x - mean) * (x - mean);
    cell.mean_groups = mean;
    cell.std_groups = samples > 1 ? std::sqrt(var / (samples - 1)) : 0.0;
  });
  return cells;
}

double chromatic_estimate(double n, double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("chromatic_estimate requires 0 < p < 1");
  if (n < 2.0) throw DomainError("chromatic_estimate requires n >= 2");
  return n * std::log(1.0 / (1.0 - p)) / (2.0 * std::log(n));
}

}  // namespace vcpc
