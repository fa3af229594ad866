#include "vcpc/tsp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>

#include "vcpc/error.hpp"
#include "vcpc/text.hpp"

namespace vcpc {

namespace {

// TSPLIB GEO: DDD.MM coordinates, truncated degrees, PI as printed in the format definition.
double geo_radians(double x) {
  constexpr double kPi = 3.141592;
  const double deg = std::trunc(x);
  const double min = x - deg;
  return kPi * (deg + 5.0 * min / 3.0) / 180.0;
}

}  // namespace

double tsplib_distance(EdgeWeightType type, const Point& a, const Point& b) {
  if (type == EdgeWeightType::Euc2D) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::floor(std::sqrt(dx * dx + dy * dy) + 0.5);
  }
  constexpr double kEarthRadius = 6378.388;
  const double lat_a = geo_radians(a.x), lon_a = geo_radians(a.y);
  const double lat_b = geo_radians(b.x), lon_b = geo_radians(b.y);
  const double q1 = std::cos(lon_a - lon_b);
  const double q2 = std::cos(lat_a - lat_b);
  const double q3 = std::cos(lat_a + lat_b);
  return std::trunc(kEarthRadius * std::acos(0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)) + 1.0);
}

double TspInstance::max_distance() const {
  return dist.empty() ? 0.0 : *std::max_element(dist.begin(), dist.end());
}

TspInstance TspInstance::from_points(std::string name, EdgeWeightType type, std::vector<Point> points) {
  TspInstance inst;
  inst.name = std::move(name);
  inst.weight_type = type;
  inst.coords = std::move(points);
  const std::size_t n = inst.coords.size();
  inst.dist.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = tsplib_distance(type, inst.coords[i], inst.coords[j]);
      inst.dist[i * n + j] = d;
      inst.dist[j * n + i] = d;
    }
  return inst;
}

TspInstance TspInstance::from_matrix(std::string name, std::vector<double> matrix, std::size_t n) {
  if (matrix.size() != n * n) throw DimensionError("distance matrix must be n x n");
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i * n + i] != 0.0) throw DomainError("distance matrix diagonal must be zero");
    for (std::size_t j = 0; j < n; ++j)
      if (matrix[i * n + j] != matrix[j * n + i]) throw DomainError("distance matrix must be symmetric");
  }
  TspInstance inst;
  inst.name = std::move(name);
  inst.coords.assign(n, Point{});
  inst.dist = std::move(matrix);
  return inst;
}

TspInstance parse_tsplib(std::istream& in) {
  std::string name;
  std::optional<EdgeWeightType> type;
  long long dimension = -1;
  std::vector<std::optional<Point>> coords;
  bool in_coords = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto body = trim(line);
    if (body.empty()) continue;
    if (body == "EOF") break;
    if (in_coords) {
      auto tokens = split_ws(body);
      if (tokens.size() < 3)
        throw ParseError("line " + std::to_string(line_no) + ": expected 'id x y'");
      const long long id = parse_int(tokens[0]);
      if (id < 1 || id > dimension)
        throw ParseError("line " + std::to_string(line_no) + ": node id out of range");
      coords[static_cast<std::size_t>(id - 1)] = Point{parse_double(tokens[1]), parse_double(tokens[2])};
      continue;
    }
    if (body == "NODE_COORD_SECTION") {
      if (dimension < 0) throw ParseError("NODE_COORD_SECTION before DIMENSION");
      if (!type) throw ParseError("NODE_COORD_SECTION before EDGE_WEIGHT_TYPE");
      coords.assign(static_cast<std::size_t>(dimension), std::nullopt);
      in_coords = true;
      continue;
    }
    const auto colon = body.find(':');
    if (colon == std::string_view::npos)
      throw ParseError("line " + std::to_string(line_no) + ": malformed header '" + std::string(body) + "'");
    const auto key = trim(body.substr(0, colon));
    const auto value = trim(body.substr(colon + 1));
    if (key == "NAME") {
      name = std::string(value);
    } else if (key == "TYPE") {
      if (value != "TSP") throw ParseError("unsupported problem type '" + std::string(value) + "'");
    } else if (key == "DIMENSION") {
      dimension = parse_int(value);
      if (dimension < 1) throw ParseError("DIMENSION must be positive");
    } else if (key == "EDGE_WEIGHT_TYPE") {
      if (value == "EUC_2D")
        type = EdgeWeightType::Euc2D;
      else if (value == "GEO")
        type = EdgeWeightType::Geo;
      else
        throw ParseError("unsupported EDGE_WEIGHT_TYPE '" + std::string(value) + "'");
    }
    // COMMENT, EDGE_WEIGHT_FORMAT, DISPLAY_DATA_TYPE and friends carry nothing we need.
  }
  if (!in_coords) throw ParseError("missing NODE_COORD_SECTION");
  std::vector<Point> points;
  points.reserve(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!coords[i]) throw ParseError("missing coordinates for node " + std::to_string(i + 1));
    points.push_back(*coords[i]);
  }
  return TspInstance::from_points(name, *type, std::move(points));
}

TspInstance parse_tsplib(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  auto inst = parse_tsplib(in);
  if (inst.name.empty()) inst.name = path.stem().string();
  return inst;
}

std::size_t MaskMatrix::ones() const {
  return static_cast<std::size_t>(std::count(m.begin(), m.end(), std::uint8_t{1}));
}

TspEncoding encode_tsp(const TspInstance& inst, double a, double b, const MaskMatrix* mask) {
  const std::size_t n = inst.size();
  if (mask && mask->k != n)
    throw DimensionError("mask is " + std::to_string(mask->k) + "x" + std::to_string(mask->k) +
                         " but instance has " + std::to_string(n) + " cities");
  auto free_cell = [&](std::size_t i, std::size_t t) { return !mask || mask->allowed(i, t); };

  ModelBuilder builder(n * n);
  // A (sum_t S_it - 1)^2 = A (1 - sum_t S_it + 2 sum_{t<t'} S_it S_it'), likewise per column.
  for (std::size_t line = 0; line < n; ++line) {
    for (int axis = 0; axis < 2; ++axis) {
      auto cell = [&](std::size_t idx) {
        return axis == 0 ? std::pair{line, idx} : std::pair{idx, line};
      };
      builder.add_constant(a);
      for (std::size_t p = 0; p < n; ++p) {
        const auto [i, t] = cell(p);
        if (!free_cell(i, t)) continue;
        builder.add_linear(tsp_var(n, i, t), -a);
        for (std::size_t q = p + 1; q < n; ++q) {
          const auto [i2, t2] = cell(q);
          if (free_cell(i2, t2)) builder.add_pair(tsp_var(n, i, t), tsp_var(n, i2, t2), 2.0 * a);
        }
      }
    }
  }
  // B sum_{i != j} D_ij S_{i,t} S_{j,t+1 mod n}
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t next = (t + 1) % n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!free_cell(i, t)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || !free_cell(j, next)) continue;
        const double d = inst.distance(i, j);
        if (d != 0.0) builder.add_pair(tsp_var(n, i, t), tsp_var(n, j, next), b * d);
      }
    }
  }

  TspEncoding enc;
  enc.n = n;
  enc.model = std::move(builder).build();
  enc.clamp = ClampMask(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < n; ++t)
      if (!free_cell(i, t)) enc.clamp.set(tsp_var(n, i, t), VarStatus::ClampedZero);
  return enc;
}

double tsp_update_drive(const TspInstance& inst, double a, double b, std::span<const std::uint8_t> s,
                        std::size_t city, std::size_t position, const MaskMatrix* mask) {
  const std::size_t n = inst.size();
  if (s.size() != n * n) throw DimensionError("state must hold n^2 cells");
  if (city >= n || position >= n) throw IndexError("cell out of range");
  if (mask && !mask->allowed(city, position)) throw IndexError("cell is clamped by the mask");
  auto at = [&](std::size_t i, std::size_t t) { return static_cast<double>(s[tsp_var(n, i, t)]); };

  double row_others = 0.0;
  for (std::size_t t = 0; t < n; ++t)
    if (t != position) row_others += at(city, t);
  double col_others = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (i != city) col_others += at(i, position);

  const std::size_t next = (position + 1) % n;
  const std::size_t prev = (position + n - 1) % n;
  double neighbours = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == city) continue;
    neighbours += inst.distance(city, j) * at(j, next);
    neighbours += inst.distance(j, city) * at(j, prev);
  }
  const auto square = [](double x) { return x * x; };
  return a * (square(row_others - 1.0) - square(row_others)) +
         a * (square(col_others - 1.0) - square(col_others)) - b * neighbours;
}

DecodedTour decode_tour(const TspInstance& inst, std::span<const std::uint8_t> s) {
  const std::size_t n = inst.size();
  if (s.size() != n * n) throw DimensionError("state must hold n^2 cells");
  DecodedTour out;
  out.tour.assign(n, 0);
  std::vector<std::size_t> col_sum(n, 0);
  bool valid = true;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t row_sum = 0;
    for (std::size_t t = 0; t < n; ++t) {
      if (s[tsp_var(n, i, t)]) {
        ++row_sum;
        ++col_sum[t];
        out.tour[t] = i;
      }
    }
    if (row_sum != 1) valid = false;
  }
  for (std::size_t t = 0; t < n; ++t)
    if (col_sum[t] != 1) valid = false;
  out.valid = valid && n > 0;
  out.cost = out.valid ? tour_cost(inst, out.tour) : 0.0;
  return out;
}

double tour_cost(const TspInstance& inst, std::span<const std::size_t> tour) {
  double cost = 0.0;
  for (std::size_t p = 0; p < tour.size(); ++p) cost += inst.distance(tour[p], tour[(p + 1) % tour.size()]);
  return cost;
}

double tsp_density(std::size_t n) {
  if (n < 2) throw DomainError("tsp_density requires N >= 2");
  return 2.0 / static_cast<double>(n);
}

MaskMatrix build_mask(std::span<const std::size_t> parent_tour, std::span<const std::size_t> assignment,
                      std::size_t k) {
  if (assignment.size() != k)
    throw DomainError("cluster cardinalities sum to " + std::to_string(assignment.size()) +
                      ", expected " + std::to_string(k));
  const std::size_t clusters = parent_tour.size();
  std::vector<std::size_t> size(clusters, 0);
  for (std::size_t c : assignment) {
    if (c >= clusters) throw DomainError("entity assigned to a cluster missing from the parent tour");
    ++size[c];
  }
  std::vector<std::uint8_t> seen(clusters, 0);
  for (std::size_t c : parent_tour) {
    if (c >= clusters || seen[c]) throw DomainError("parent tour must visit each cluster exactly once");
    seen[c] = 1;
  }
  if (std::find(size.begin(), size.end(), std::size_t{0}) != size.end())
    throw DomainError("empty cluster in parent tour");

  std::size_t rotation = 0;
  if (k > 0) rotation = std::find(parent_tour.begin(), parent_tour.end(), assignment[0]) - parent_tour.begin();
  std::vector<std::size_t> block_start(clusters, 0);
  std::size_t column = 0;
  for (std::size_t p = 0; p < clusters; ++p) {
    const std::size_t c = parent_tour[(rotation + p) % clusters];
    block_start[c] = column;
    column += size[c];
  }

  MaskMatrix mask;
  mask.k = k;
  mask.m.assign(k * k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t c = assignment[i];
    for (std::size_t t = block_start[c]; t < block_start[c] + size[c]; ++t) mask.m[i * k + t] = 1;
  }
  return mask;
}

namespace {

double sq_dist(const Point& a, const Point& b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

}  // namespace

KMeansResult kmeans(std::span<const Point> points, std::size_t k, std::uint64_t seed,
                    std::size_t max_rounds) {
  const std::size_t n = points.size();
  if (k == 0 || k > n) throw DomainError("k-means needs 1 <= k <= number of points");
  Rng rng(seed);

  KMeansResult out;
  out.centroids.push_back(points[rng.below(n)]);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  while (out.centroids.size() < k) {
    std::size_t far = 0;
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], sq_dist(points[i], out.centroids.back()));
      if (nearest[i] > nearest[far]) far = i;
    }
    out.centroids.push_back(points[far]);
  }

  out.assignment.assign(n, k);  // k = unassigned
  for (std::size_t round = 0; round < std::max<std::size_t>(max_rounds, 1); ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      for (std::size_t c = 1; c < k; ++c)
        if (sq_dist(points[i], out.centroids[c]) < sq_dist(points[i], out.centroids[best])) best = c;
      if (out.assignment[i] != best) {
        out.assignment[i] = best;
        changed = true;
      }
    }

    for (;;) {
      std::vector<std::size_t> count(k, 0);
      for (std::size_t c : out.assignment) ++count[c];
      const auto empty = std::find(count.begin(), count.end(), std::size_t{0});
      if (empty == count.end()) break;
      const std::size_t largest = std::max_element(count.begin(), count.end()) - count.begin();
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (out.assignment[i] != largest) continue;
        if (far == n || sq_dist(points[i], out.centroids[largest]) > sq_dist(points[far], out.centroids[largest]))
          far = i;
      }
      const std::size_t target = empty - count.begin();
      out.assignment[far] = target;
      out.centroids[target] = points[far];
      changed = true;
    }

    std::vector<Point> sum(k);
    std::vector<std::size_t> count(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sum[out.assignment[i]].x += points[i].x;
      sum[out.assignment[i]].y += points[i].y;
      ++count[out.assignment[i]];
    }
    for (std::size_t c = 0; c < k; ++c)
      out.centroids[c] = {sum[c].x / static_cast<double>(count[c]), sum[c].y / static_cast<double>(count[c])};
    out.iterations = round + 1;
    if (!changed) break;
  }
  return out;
}

std::vector<std::size_t> ClusterTree::level_sizes() const {
  std::vector<std::size_t> out;
  for (const auto& l : levels) out.push_back(l.points.size());
  return out;
}

ClusterTree build_cluster_tree(std::span<const Point> coords, std::span<const std::size_t> sizes,
                               std::uint64_t seed) {
  ClusterTree tree;
  tree.levels.push_back({{coords.begin(), coords.end()}, {}});
  for (std::size_t l = 0; l < sizes.size(); ++l) {
    auto& current = tree.levels.back();
    if (sizes[l] >= current.points.size())
      throw DomainError("cluster sizes must strictly decrease below the number of entities");
    auto result = kmeans(current.points, sizes[l], derive_seed(seed, {l}));
    current.parent = std::move(result.assignment);
    tree.levels.push_back({std::move(result.centroids), {}});
  }
  return tree;
}

void KmcConfig::validate(std::size_t num_cities) const {
  if (penalties.size() != cluster_sizes.size() + 1)
    throw ConfigError("KMC needs one penalty per level: A_0 plus one per cluster size");
  std::size_t previous = num_cities;
  for (std::size_t k : cluster_sizes) {
    if (k >= previous) throw ConfigError("KMC cluster sizes must strictly decrease");
    if (k < 2) throw ConfigError("KMC coarsest level must keep at least 2 clusters");
    previous = k;
  }
  for (double a : penalties)
    if (!(a > 0.0)) throw ConfigError("KMC penalties must be positive");
}

DecodedTour best_valid_tour(const TspInstance& inst, const SolveResult& result) {
  DecodedTour best;
  for (const auto& rep : result.repeats) {
    auto tour = decode_tour(inst, rep.best_state);
    if (tour.valid && (!best.valid || tour.cost < best.cost)) best = std::move(tour);
  }
  return best;
}

SolveResult solve_tsp(const TspEncoding& enc, const GroupPlan& plan, SolverKind solver, const SaConfig& sa,
                      const PtConfig& pt, std::uint64_t seed) {
  if (solver == SolverKind::SA) {
    SaConfig cfg = sa;
    cfg.seed = seed;
    return run_sa(enc.model, plan, cfg);
  }
  PtConfig cfg = pt;
  cfg.seed = seed;
  return run_pt(enc.model, plan, cfg);
}

KmcResult kmc_pipeline(const TspInstance& inst, const KmcConfig& cfg) {
  cfg.validate(inst.size());
  KmcResult out;
  const auto tree = build_cluster_tree(inst.coords, cfg.cluster_sizes, derive_seed(cfg.seed, {0}));
  const std::size_t top = tree.levels.size() - 1;

  std::vector<std::size_t> parent_tour;
  for (std::size_t level = top + 1; level-- > 0;) {
    const TspInstance level_inst =
        level == 0 ? inst
                   : TspInstance::from_points(inst.name + "/K" + std::to_string(tree.levels[level].points.size()),
                                              inst.weight_type, tree.levels[level].points);
    std::optional<MaskMatrix> mask;
    if (level < top) mask = build_mask(parent_tour, tree.levels[level].parent, level_inst.size());

    const double a = cfg.penalties[level];
    const auto enc = encode_tsp(level_inst, a, cfg.b, mask ? &*mask : nullptr);
    const auto plan = plan_groups(enc.model, enc.clamp);
    auto result = solve_tsp(enc, plan, cfg.solver, cfg.sa, cfg.pt, derive_seed(cfg.seed, {1, level}));
    auto tour = best_valid_tour(level_inst, result);
    out.total_iterations += result.total_iterations;
    out.levels.push_back({level_inst.size(), a, enc.clamp.num_free(), plan.num_groups(), tour.valid, tour.cost});

    if (!tour.valid) {
      out.diagnostic = "no valid tour at level with " + std::to_string(level_inst.size()) +
                       " entities (A=" + format_number(a) + ")";
      out.final_solve = std::move(result);
      return out;
    }
    parent_tour = tour.tour;
    if (level == 0) {
      out.tour = std::move(tour);
      out.final_solve = std::move(result);
    }
  }
  out.valid = true;
  return out;
}

void save_tour(std::ostream& out, const DecodedTour& tour, std::size_t n) {
  out << "tour " << n << " cost " << format_number(tour.cost) << " valid " << (tour.valid ? 1 : 0) << '\n';
  if (!tour.valid) return;
  for (std::size_t c : tour.tour) out << c << '\n';
}

}  // namespace vcpc
