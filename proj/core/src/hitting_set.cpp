#include "vcpc/hitting_set.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <set>
#include <string>

#include "vcpc/error.hpp"
#include "vcpc/rng.hpp"
#include "vcpc/text.hpp"

namespace vcpc {

namespace {

// C(n, k) saturating at `cap`.
std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double acc = 1.0L;
  for (std::size_t i = 1; i <= k; ++i) {
    acc = acc * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (acc >= static_cast<long double>(cap)) return cap;
  }
  return static_cast<std::size_t>(acc + 0.5L);
}

// Floyd's algorithm: k distinct values from [0, n), sorted.
std::vector<VarIndex> sample_subset(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<VarIndex> out;
  out.reserve(k);
  for (std::size_t j = n - k; j < n; ++j) {
    const auto t = static_cast<VarIndex>(rng.below(j + 1));
    if (std::find(out.begin(), out.end(), t) == out.end())
      out.push_back(t);
    else
      out.push_back(static_cast<VarIndex>(j));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool contains(const std::vector<VarIndex>& edge, VarIndex v) {
  return std::binary_search(edge.begin(), edge.end(), v);
}

}  // namespace

std::size_t Hypergraph::dimension() const {
  std::size_t k = 0;
  for (const auto& e : edges) k = std::max(k, e.size());
  return k;
}

Hypergraph gen_hypergraph(std::size_t n, std::size_t m, std::size_t k, std::uint64_t seed) {
  if (k == 0) throw DomainError("hyperedges must be non-empty (k >= 1)");
  if (k > n)
    throw DomainError("infeasible hypergraph: k=" + std::to_string(k) + " exceeds N=" +
                      std::to_string(n));
  if (binomial_capped(n, k, m) < m)
    throw DomainError("infeasible hypergraph: fewer than m distinct " + std::to_string(k) +
                      "-subsets of " + std::to_string(n) + " vertices");
  Rng rng(seed);
  Hypergraph h;
  h.num_vertices = n;
  std::set<std::vector<VarIndex>> seen;
  while (h.edges.size() < m) {
    auto edge = sample_subset(n, k, rng);
    if (seen.insert(edge).second) h.edges.push_back(std::move(edge));
  }
  return h;
}

EnergyModel encode_hitting_set(const Hypergraph& h, double a, double b) {
  if (!(a > b && b > 0.0)) throw DomainError("hitting-set encoding requires A > B > 0");
  if (h.dimension() > kMaxEnumerationVars)
    throw CapacityError("hyperedge of size " + std::to_string(h.dimension()) +
                        " expands to too many terms");
  ModelBuilder builder(h.num_vertices);
  for (std::size_t v = 0; v < h.num_vertices; ++v) builder.add_linear(static_cast<VarIndex>(v), b);
  for (const auto& edge : h.edges) {
    // prod (1 - s_v) = sum over subsets T of (-1)^|T| prod_{v in T} s_v
    const std::uint64_t subsets = std::uint64_t{1} << edge.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
      std::vector<VarIndex> vars;
      for (std::size_t i = 0; i < edge.size(); ++i)
        if ((mask >> i) & 1U) vars.push_back(edge[i]);
      const double sign = (std::popcount(mask) % 2 == 0) ? 1.0 : -1.0;
      builder.add(sign * a, std::move(vars));
    }
  }
  return std::move(builder).build();
}

double hs_update_drive(const Hypergraph& h, double a, double b, std::span<const std::uint8_t> s,
                       VarIndex vertex) {
  if (vertex >= h.num_vertices) throw IndexError("vertex " + std::to_string(vertex) + " out of range");
  if (s.size() != h.num_vertices) throw DimensionError("state length does not match hypergraph");
  double uncovered_elsewhere = 0.0;
  for (const auto& edge : h.edges) {
    if (!contains(edge, vertex)) continue;
    bool all_zero = true;
    for (VarIndex u : edge) {
      if (u != vertex && s[u]) {
        all_zero = false;
        break;
      }
    }
    if (all_zero) uncovered_elsewhere += 1.0;
  }
  return a * uncovered_elsewhere - b;
}

std::size_t uncovered_edges(const Hypergraph& h, std::span<const std::uint8_t> s) {
  std::size_t count = 0;
  for (const auto& edge : h.edges)
    if (std::none_of(edge.begin(), edge.end(), [&](VarIndex v) { return s[v] != 0; })) ++count;
  return count;
}

HittingSetSolution make_solution(const Hypergraph& h, std::vector<VarIndex> chosen) {
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  State s(h.num_vertices, 0);
  for (VarIndex v : chosen) {
    if (v >= h.num_vertices) throw IndexError("chosen vertex out of range");
    s[v] = 1;
  }
  return {std::move(chosen), uncovered_edges(h, s) == 0};
}

HittingSetSolution solution_from_state(const Hypergraph& h, std::span<const std::uint8_t> s) {
  if (s.size() < h.num_vertices) throw DimensionError("state shorter than vertex count");
  std::vector<VarIndex> chosen;
  for (std::size_t v = 0; v < h.num_vertices; ++v)
    if (s[v]) chosen.push_back(static_cast<VarIndex>(v));
  return make_solution(h, std::move(chosen));
}

namespace {

HittingSetSolution greedy_complete(const Hypergraph& h, std::vector<VarIndex> chosen) {
  std::vector<std::vector<std::uint32_t>> incident(h.num_vertices);
  for (std::size_t e = 0; e < h.edges.size(); ++e)
    for (VarIndex v : h.edges[e]) incident[v].push_back(static_cast<std::uint32_t>(e));

  std::vector<std::uint8_t> hit(h.edges.size(), 0);
  std::vector<std::size_t> gain(h.num_vertices, 0);
  for (std::size_t v = 0; v < h.num_vertices; ++v) gain[v] = incident[v].size();
  auto take = [&](VarIndex v) {
    for (std::uint32_t e : incident[v]) {
      if (hit[e]) continue;
      hit[e] = 1;
      for (VarIndex u : h.edges[e]) --gain[u];
    }
  };
  for (VarIndex v : chosen) take(v);

  for (;;) {
    std::size_t best_gain = 0;
    VarIndex best = 0;
    for (std::size_t v = 0; v < h.num_vertices; ++v) {
      if (gain[v] > best_gain) {
        best_gain = gain[v];
        best = static_cast<VarIndex>(v);
      }
    }
    if (best_gain == 0) break;
    chosen.push_back(best);
    take(best);
  }
  return make_solution(h, std::move(chosen));
}

}  // namespace

HittingSetSolution greedy_reference(const Hypergraph& h) { return greedy_complete(h, {}); }

HittingSetSolution repair_cover(const Hypergraph& h, const HittingSetSolution& partial) {
  if (partial.valid) return partial;
  return greedy_complete(h, partial.chosen);
}

HittingSetSolution exact_hitting_set(const Hypergraph& h) {
  const std::size_t n = h.num_vertices;
  if (n > kMaxEnumerationVars)
    throw CapacityError("exact hitting set limited to " + std::to_string(kMaxEnumerationVars) +
                        " vertices");
  std::vector<std::uint32_t> edge_masks;
  for (const auto& e : h.edges) {
    std::uint32_t mask = 0;
    for (VarIndex v : e) mask |= std::uint32_t{1} << v;
    edge_masks.push_back(mask);
  }
  std::uint32_t best = (std::uint32_t{1} << n) - 1;
  int best_size = static_cast<int>(n) + 1;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t z = 0; z < count; ++z) {
    const int size = std::popcount(z);
    if (size >= best_size) continue;
    const auto zm = static_cast<std::uint32_t>(z);
    if (std::all_of(edge_masks.begin(), edge_masks.end(),
                    [&](std::uint32_t e) { return (e & zm) != 0; })) {
      best = zm;
      best_size = size;
    }
  }
  std::vector<VarIndex> chosen;
  for (std::size_t v = 0; v < n; ++v)
    if ((best >> v) & 1U) chosen.push_back(static_cast<VarIndex>(v));
  return make_solution(h, std::move(chosen));
}

double hs_quality(const HittingSetSolution& found, const HittingSetSolution& ref) {
  if (!found.valid || !ref.valid) throw ScoringError("hs_quality requires valid covers");
  if (ref.size() == 0) {
    if (found.size() == 0) return 1.0;
    throw ScoringError("reference cover is empty; quality undefined");
  }
  return static_cast<double>(found.size()) / static_cast<double>(ref.size());
}

void save_hypergraph(std::ostream& out, const Hypergraph& h) {
  out << h.num_vertices << ' ' << h.edges.size() << '\n';
  for (const auto& e : h.edges) {
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
    out << '\n';
  }
}

Hypergraph load_hypergraph(std::istream& in) {
  std::string line;
  Hypergraph h;
  long long m = -1;
  while (std::getline(in, line)) {
    auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto tokens = split_ws(body);
    if (m < 0) {
      if (tokens.size() != 2) throw ParseError("hypergraph header must be 'N m'");
      const long long n = parse_int(tokens[0]);
      m = parse_int(tokens[1]);
      if (n < 0 || m < 0) throw ParseError("negative hypergraph size");
      h.num_vertices = static_cast<std::size_t>(n);
      continue;
    }
    std::vector<VarIndex> edge;
    for (auto tok : tokens) {
      const long long v = parse_int(tok);
      if (v < 0 || static_cast<std::size_t>(v) >= h.num_vertices)
        throw ParseError("hyperedge vertex out of range");
      edge.push_back(static_cast<VarIndex>(v));
    }
    std::sort(edge.begin(), edge.end());
    edge.erase(std::unique(edge.begin(), edge.end()), edge.end());
    h.edges.push_back(std::move(edge));
  }
  if (m < 0) throw ParseError("missing hypergraph header");
  if (h.edges.size() != static_cast<std::size_t>(m))
    throw ParseError("hypergraph header declares " + std::to_string(m) + " edges, found " +
                     std::to_string(h.edges.size()));
  return h;
}

}  // namespace vcpc
