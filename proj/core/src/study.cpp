#include "vcpc/study.hpp"

#include <chrono>
#include <deque>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "vcpc/colouring.hpp"
#include "vcpc/error.hpp"
#include "vcpc/io.hpp"
#include "vcpc/parallel.hpp"
#include "vcpc/spinglass.hpp"
#include "vcpc/text.hpp"
#include "vcpc/transforms.hpp"

namespace vcpc {

using json = nlohmann::ordered_json;

SaConfig budgeted_sa(const SaConfig& base, std::size_t num_vars, double iters_per_var) {
  if (!(iters_per_var > 0.0)) throw ConfigError("iteration budget per variable must be positive");
  SaConfig sa = base;
  const double total = iters_per_var * static_cast<double>(num_vars);
  sa.iters_per_step = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(total / static_cast<double>(base.steps))));
  return sa;
}

HsOutcome solve_hitting_set(const Hypergraph& h, const EnergyModel& model, const GroupPlan& plan,
                            const SaConfig& sa, double b, const HittingSetSolution& reference) {
  if (model.num_vars() < h.num_vertices) throw DimensionError("model has fewer variables than vertices");
  const auto result = run_sa(model, plan, sa);
  const auto raw = solution_from_state(h, std::span(result.best_state).first(h.num_vertices));
  HsOutcome out;
  out.raw_valid = raw.valid;
  out.cover = repair_cover(h, raw);
  out.q = hs_quality(out.cover, reference);
  out.num_groups = plan.num_groups();
  for (const auto& p : result.trajectory) out.cover_bound.push_back({p.iteration, p.best_energy / b});
  return out;
}

std::string to_string(TspMethod m) {
  switch (m) {
    case TspMethod::SA: return "sa";
    case TspMethod::PT: return "pt";
    case TspMethod::SaKmc: return "sa-kmc";
    case TspMethod::PtKmc: return "pt-kmc";
  }
  return "?";
}

TspMethod parse_tsp_method(const std::string& text) {
  for (auto m : {TspMethod::SA, TspMethod::PT, TspMethod::SaKmc, TspMethod::PtKmc})
    if (to_string(m) == text) return m;
  throw ConfigError("unknown TSP method '" + text + "' (expected sa, pt, sa-kmc or pt-kmc)");
}

TspBenchParams default_tsp_params() {
  TspBenchParams p;
  p.sa.beta_start = 1e-4;
  p.sa.beta_end = 1e-2;
  p.sa.steps = 200;
  p.sa.iters_per_step = 1000;
  p.pt.beta_start = 1e-4;
  p.pt.beta_end = 1e-2;
  p.pt.iters = 10000;
  p.pt.swap_interval = 100;
  p.pt.replicas = 20;
  return p;
}

DecodedTour run_tsp_method(const TspInstance& inst, TspMethod method, const TspBenchParams& params,
                           std::uint64_t seed) {
  if (params.penalties.empty()) throw ConfigError("TSP run needs at least the penalty A_0");
  if (method == TspMethod::SaKmc || method == TspMethod::PtKmc) {
    KmcConfig cfg;
    cfg.cluster_sizes = params.cluster_sizes;
    cfg.penalties = params.penalties;
    cfg.b = params.b;
    cfg.solver = method == TspMethod::SaKmc ? SolverKind::SA : SolverKind::PT;
    cfg.sa = params.sa;
    cfg.pt = params.pt;
    cfg.seed = seed;
    auto r = kmc_pipeline(inst, cfg);
    return r.valid ? r.tour : DecodedTour{};
  }
  const std::size_t levels = params.cluster_sizes.size() + 1;
  SaConfig sa = params.sa;
  PtConfig pt = params.pt;
  sa.iters_per_step *= levels;
  pt.iters *= levels;
  const auto enc = encode_tsp(inst, params.penalties[0], params.b);
  const auto plan = plan_groups(enc.model, enc.clamp);
  const auto kind = method == TspMethod::SA ? SolverKind::SA : SolverKind::PT;
  return best_valid_tour(inst, solve_tsp(enc, plan, kind, sa, pt, seed));
}

namespace {

std::string cell(double v) { return std::isnan(v) ? std::string("nan") : format_number(v); }
std::string cell(std::size_t v) { return std::to_string(v); }

struct Context {
  Context(const Config& s, const StudyOptions& o) : spec(s), opt(o) {}

  const Config& spec;
  const StudyOptions& opt;
  json references = json::array();
  StudyOutput output;

  std::ostringstream& open_csv(const std::string& name) {
    names.push_back(name);
    buffers.emplace_back();
    return buffers.back();
  }
  void flush() {
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto path = opt.out_dir / names[i];
      write_text_file(path, buffers[i].str());
      output.files.push_back(path);
    }
  }
  std::vector<std::string> names;
  std::deque<std::ostringstream> buffers;  // deque keeps earlier streams in place
};

const std::vector<std::string> kScheduleKeys = {"beta_start", "beta_end", "steps", "iters",
                                                "swap", "spacing", "iters_per_n", "pt_iters"};
const std::vector<std::string> kSolverKeys = {"method", "reps", "repls", "seed", "selection", "threads"};

void check_sections(const Config& spec, std::vector<std::string> problem_keys) {
  problem_keys.push_back("kind");
  spec.require_known("problem", problem_keys);
  spec.require_known("schedule", kScheduleKeys);
  spec.require_known("solver", kSolverKeys);
  spec.require_known("output", {"csv"});
}

// ---- hitting set ----------------------------------------------------------

struct HsSetup {
  std::size_t k;
  std::vector<std::size_t> ns;
  double m_per_n;
  std::size_t instances;
  double a;
  double b;
  std::uint64_t seed;

  std::size_t edges(std::size_t n) const {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(m_per_n * static_cast<double>(n))));
  }
};

HsSetup read_hs(const Config& spec, std::size_t default_instances) {
  HsSetup s;
  s.k = spec.get_size("problem", "k", 5);
  s.ns = spec.get_sizes("problem", "n", {50, 100, 200});
  s.m_per_n = spec.get_double("problem", "m_per_n", 1.0);
  s.instances = spec.get_size("problem", "instances", default_instances);
  s.a = spec.get_double("problem", "a", kDefaultHsPenalty);
  s.b = spec.get_double("problem", "b", kDefaultHsWeight);
  s.seed = spec.get_u64("problem", "seed", 1);
  return s;
}

SaConfig hs_base_sa(const Config& spec) {
  SaConfig base;
  base.repeats = 20;
  base = sa_config_from(spec, base);
  base.threads = 1;
  return base;
}

void study_hs_quality(Context& ctx) {
  check_sections(ctx.spec, {"k", "n", "m_per_n", "instances", "a", "b", "seed"});
  const auto setup = read_hs(ctx.spec, 100);
  const auto base = hs_base_sa(ctx.spec);
  const double per_var = ctx.spec.get_double("schedule", "iters_per_n", 5.0);

  CsvWriter csv(ctx.open_csv(ctx.spec.get_string("output", "csv", "hs_quality.csv")),
                {"N", "m", "k", "A", "B", "instances", "iters_per_step", "q_mean", "q_std", "q_max",
                 "raw_valid_fraction", "mean_groups"});
  for (std::size_t n : setup.ns) {
    const std::size_t m = setup.edges(n);
    const auto sa_proto = budgeted_sa(base, n, per_var);
    std::vector<HsOutcome> runs(setup.instances);
    parallel_for(setup.instances, ctx.opt.threads, [&](std::size_t i) {
      const auto h = gen_hypergraph(n, m, setup.k, derive_seed(setup.seed, {n, i, 0}));
      const auto model = encode_hitting_set(h, setup.a, setup.b);
      SaConfig sa = sa_proto;
      sa.seed = derive_seed(setup.seed, {n, i, 1});
      runs[i] = solve_hitting_set(h, model, plan_groups(model), sa, setup.b, greedy_reference(h));
    });
    std::vector<double> qs, groups;
    std::size_t raw_valid = 0;
    for (const auto& r : runs) {
      qs.push_back(r.q);
      groups.push_back(static_cast<double>(r.num_groups));
      raw_valid += r.raw_valid;
    }
    const auto q = mean_std(qs);
    csv.row({cell(n), cell(m), cell(setup.k), cell(setup.a), cell(setup.b), cell(setup.instances),
             cell(sa_proto.iters_per_step), cell(q.mean), cell(q.std), cell(*std::max_element(qs.begin(), qs.end())),
             cell(static_cast<double>(raw_valid) / static_cast<double>(runs.size())), cell(mean_std(groups).mean)});
  }
  ctx.references.push_back({{"problem", "hitting-set"}, {"provenance", to_string(Provenance::Greedy)}});
}

void study_hs_scaling(Context& ctx) {
  check_sections(ctx.spec, {"k", "n", "m_per_n", "instances", "a", "b", "seed", "targets"});
  const auto setup = read_hs(ctx.spec, 20);
  const auto targets = ctx.spec.get_doubles("problem", "targets", {1.2, 1.1, 1.05, 1.0});
  SaConfig base;
  base.steps = 2000;
  base.iters_per_step = 1;
  base.repeats = 20;
  base = sa_config_from(ctx.spec, base);
  base.threads = 1;

  CsvWriter csv(ctx.open_csv(ctx.spec.get_string("output", "csv", "hs_scaling.csv")),
                {"N", "m", "k", "q_target", "mean_iters", "std_iters", "reached", "runs"});
  for (std::size_t n : setup.ns) {
    const std::size_t m = setup.edges(n);
    std::vector<std::vector<std::optional<std::size_t>>> hits(setup.instances);
    parallel_for(setup.instances, ctx.opt.threads, [&](std::size_t i) {
      const auto h = gen_hypergraph(n, m, setup.k, derive_seed(setup.seed, {n, i, 0}));
      const auto model = encode_hitting_set(h, setup.a, setup.b);
      const auto ref = greedy_reference(h);
      SaConfig sa = base;
      sa.seed = derive_seed(setup.seed, {n, i, 1});
      const auto out = solve_hitting_set(h, model, plan_groups(model), sa, setup.b, ref);
      for (double t : targets)
        hits[i].push_back(first_reaching(out.cover_bound, static_cast<double>(ref.size()), t,
                                         Objective::PositiveCost));
    });
    for (std::size_t t = 0; t < targets.size(); ++t) {
      std::vector<std::optional<std::size_t>> column;
      for (const auto& row : hits) column.push_back(row[t]);
      const auto s = summarise_hits(targets[t], column);
      csv.row({cell(n), cell(m), cell(setup.k), cell(targets[t]), cell(s.mean_iterations), cell(s.std_iterations),
               cell(s.reached), cell(s.runs)});
    }
  }
  ctx.references.push_back({{"problem", "hitting-set"}, {"provenance", to_string(Provenance::Greedy)}});
}

void study_hubo_vs_qubo(Context& ctx) {
  check_sections(ctx.spec, {"k", "n", "m_per_n", "instances", "a", "b", "seed", "strengths"});
  const auto setup = read_hs(ctx.spec, 20);
  const auto strengths = ctx.spec.get_strings("problem", "strengths", {"auto"});
  const auto base = hs_base_sa(ctx.spec);
  const double per_var = ctx.spec.get_double("schedule", "iters_per_n", 5.0);

  CsvWriter csv(ctx.open_csv(ctx.spec.get_string("output", "csv", "hubo_vs_qubo.csv")),
                {"N", "k", "hubo_vars", "qubo_vars_mean", "budget_rule", "strength", "hubo_q_mean", "qubo_q_mean",
                 "qubo_q_std"});
  for (std::size_t n : setup.ns) {
    const std::size_t m = setup.edges(n);
    struct Row {
      double hubo_q = 0.0;
      std::vector<double> qubo_q_small, qubo_q_large;  // per strength
      std::size_t qubo_vars = 0;
    };
    std::vector<Row> rows(setup.instances);
    parallel_for(setup.instances, ctx.opt.threads, [&](std::size_t i) {
      const auto h = gen_hypergraph(n, m, setup.k, derive_seed(setup.seed, {n, i, 0}));
      const auto model = encode_hitting_set(h, setup.a, setup.b);
      const auto ref = greedy_reference(h);
      SaConfig sa = budgeted_sa(base, n, per_var);
      sa.seed = derive_seed(setup.seed, {n, i, 1});
      rows[i].hubo_q = solve_hitting_set(h, model, plan_groups(model), sa, setup.b, ref).q;
      for (std::size_t s = 0; s < strengths.size(); ++s) {
        const auto quad = strengths[s] == "auto" ? quadratise(model) : quadratise(model, parse_double(strengths[s]));
        const auto plan = plan_groups(quad.model);
        rows[i].qubo_vars = quad.model.num_vars();
        SaConfig small = budgeted_sa(base, n, per_var);
        small.seed = derive_seed(setup.seed, {n, i, 2, s});
        rows[i].qubo_q_small.push_back(solve_hitting_set(h, quad.model, plan, small, setup.b, ref).q);
        SaConfig large = budgeted_sa(base, quad.model.num_vars(), per_var);
        large.seed = derive_seed(setup.seed, {n, i, 3, s});
        rows[i].qubo_q_large.push_back(solve_hitting_set(h, quad.model, plan, large, setup.b, ref).q);
      }
    });
    std::vector<double> hubo, vars;
    for (const auto& r : rows) {
      hubo.push_back(r.hubo_q);
      vars.push_back(static_cast<double>(r.qubo_vars));
    }
    const double hubo_mean = mean_std(hubo).mean;
    for (int rule = 0; rule < 2; ++rule) {
      for (std::size_t s = 0; s < strengths.size(); ++s) {
        std::vector<double> q;
        for (const auto& r : rows) q.push_back(rule == 0 ? r.qubo_q_small[s] : r.qubo_q_large[s]);
        const auto ms = mean_std(q);
        csv.row({cell(n), cell(setup.k), cell(n), cell(mean_std(vars).mean), rule == 0 ? "5N_V" : "5N_V*",
                 strengths[s], cell(hubo_mean), cell(ms.mean), cell(ms.std)});
      }
    }
  }
  ctx.references.push_back({{"problem", "hitting-set"}, {"provenance", to_string(Provenance::Greedy)}});
}

// ---- colouring ------------------------------------------------------------

void study_group_sweep(Context& ctx) {
  check_sections(ctx.spec, {"n", "k", "m", "samples", "seed"});
  const auto ns = ctx.spec.get_sizes("problem", "n", {500, 1000});
  const auto ks = ctx.spec.get_sizes("problem", "k", {2, 3, 4, 5, 6});
  const auto ms = ctx.spec.get_sizes("problem", "m", {10, 50, 100, 150, 200});
  const auto samples = ctx.spec.get_size("problem", "samples", 5);
  const auto seed = ctx.spec.get_u64("problem", "seed", 1);

  CsvWriter csv(ctx.open_csv(ctx.spec.get_string("output", "csv", "group_sweep.csv")),
                {"N", "k", "m", "mean_groups", "std_groups"});
  for (std::size_t n : ns) {
    for (const auto& c : group_count_sweep(n, ks, ms, samples, derive_seed(seed, {n}), ctx.opt.threads))
      csv.row({cell(n), cell(c.k), cell(c.m), cell(c.mean_groups), cell(c.std_groups)});
  }
}

// ---- spin glass -----------------------------------------------------------

void study_sg_er(Context& ctx) {
  check_sections(ctx.spec, {"n", "p", "instances", "seed", "targets"});
  const auto ns = ctx.spec.get_sizes("problem", "n", {100});
  const auto ps = ctx.spec.get_doubles("problem", "p", {0.1, 0.5, 1.0});
  const auto instances = ctx.spec.get_size("problem", "instances", 20);
  const auto seed = ctx.spec.get_u64("problem", "seed", 1);
  const auto targets = ctx.spec.get_doubles("problem", "targets", {0.8, 0.9, 0.95});
  SaConfig base;
  base.beta_start = 0.074;
  base.beta_end = 0.74;
  base.steps = 10000;
  base.iters_per_step = 1;
  base = sa_config_from(ctx.spec, base);
  base.threads = 1;

  CsvWriter csv(ctx.open_csv(ctx.spec.get_string("output", "csv", "sg_er.csv")),
                {"N", "p", "q_target", "mean_iterations", "std", "reached", "instances", "skipped", "reference",
                 "avg_group_size", "adjusted_mean_iterations"});
  for (std::size_t n : ns) {
    for (std::size_t pi = 0; pi < ps.size(); ++pi) {
      struct Run {
        SgReference ref;
        bool usable = false;
        std::vector<std::optional<std::size_t>> hits;
        double avg_group_size = 0.0;
      };
      std::vector<Run> runs(instances);
      parallel_for(instances, ctx.opt.threads, [&](std::size_t i) {
        const auto inst = gen_er({n, ps[pi]}, derive_seed(seed, {n, pi, i, 0}));
        auto& run = runs[i];
        run.ref = sg_reference(inst, derive_seed(seed, {n, pi, i, 1}));
        if (!(run.ref.energy < 0.0)) return;
        run.usable = true;
        const auto model = ising_to_qubo(inst);
        const auto plan = plan_groups(model);
        run.avg_group_size = plan.avg_group_size();
        SaConfig sa = base;
        sa.seed = derive_seed(seed, {n, pi, i, 2});
        const auto result = run_sa(model, plan, sa);
        for (double t : targets)
          run.hits.push_back(first_reaching(result.trajectory, run.ref.energy, t, Objective::NegativeEnergy));
      });

      std::size_t skipped = 0;
      std::vector<double> group_sizes;
      std::string provenance;
      for (std::size_t i = 0; i < instances; ++i) {
        const auto& r = runs[i];
        ctx.references.push_back({{"N", n}, {"p", ps[pi]}, {"instance", i}, {"energy", r.ref.energy},
                                  {"provenance", to_string(r.ref.provenance)}, {"used", r.usable}});
        if (!r.usable) {
          ++skipped;
          continue;
        }
        group_sizes.push_back(r.avg_group_size);
        const auto name = to_string(r.ref.provenance);
        if (provenance.empty()) provenance = name;
        else if (provenance != name) provenance = "mixed";
      }
      const double g_bar = mean_std(group_sizes).mean;
      for (std::size_t t = 0; t < targets.size(); ++t) {
        std::vector<std::optional<std::size_t>> column;
        for (const auto& r : runs)
          if (r.usable) column.push_back(r.hits[t]);
        const auto s = summarise_hits(targets[t], column);
        const double adjusted = std::isnan(s.mean_iterations) || group_sizes.empty()
                                    ? std::nan("")
                                    : group_adjusted_iterations(s.mean_iterations, g_bar);
        csv.row({cell(n), cell(ps[pi]), cell(targets[t]), cell(s.mean_iterations), cell(s.std_iterations),
                 cell(s.reached), cell(instances), cell(skipped), provenance.empty() ? "none" : provenance,
                 cell(g_bar), cell(adjusted)});
      }
    }
  }
}

// ---- TSP ------------------------------------------------------------------

void study_tsp_bench(Context& ctx) {
  const auto paths = ctx.spec.get_strings("problem", "instances", {});
  if (paths.empty()) throw ConfigError("tsp-bench needs [problem] instances = <path>, ...");
  check_sections(ctx.spec, {"instances", "methods", "seeds", "seed"});
  const auto methods = ctx.spec.get_strings("problem", "methods", {"sa", "pt", "sa-kmc", "pt-kmc"});
  const auto seeds = ctx.spec.get_size("problem", "seeds", 20);
  const auto seed = ctx.spec.get_u64("problem", "seed", 1);

  auto proto = default_tsp_params();
  proto.sa.repeats = 1;
  proto.pt.repeats = 1;
  {
    Config sa_view = ctx.spec;
    sa_view.set("schedule", "iters", ctx.spec.get_string("schedule", "iters", std::to_string(proto.sa.iters_per_step)));
    proto.sa = sa_config_from(sa_view, proto.sa);
    // `iters` is the SA count per step here, so PT takes `pt_iters`.
    Config pt_view = ctx.spec;
    pt_view.set("schedule", "iters", ctx.spec.get_string("schedule", "pt_iters", std::to_string(proto.pt.iters)));
    proto.pt = pt_config_from(pt_view, proto.pt);
  }
  proto.sa.threads = proto.pt.threads = 1;

  CsvWriter csv(ctx.open_csv(ctx.spec.get_string("output", "csv", "tsp_bench.csv")),
                {"instance", "method", "runs", "valid", "best", "ave", "best_ratio", "ave_ratio", "optimum"});
  for (std::size_t ii = 0; ii < paths.size(); ++ii) {
    const auto path = ctx.opt.base_dir / paths[ii];
    if (!std::filesystem::exists(path)) throw ConfigError("missing instance file " + path.string());
    const auto inst = parse_tsplib(path);
    const auto name = path.stem().string();
    ctx.spec.require_known(name, {"clusters", "penalties", "optimum", "b"});
    auto params = proto;
    params.cluster_sizes = ctx.spec.get_sizes(name, "clusters", {});
    params.penalties = ctx.spec.get_doubles(name, "penalties", {});
    params.b = ctx.spec.get_double(name, "b", 1.0);
    if (params.penalties.size() != params.cluster_sizes.size() + 1)
      throw ConfigError("[" + name + "] needs penalties = A_0, A_1, ... (one more than clusters)");
    const double optimum = ctx.spec.get_double(name, "optimum", 0.0);
    if (!(optimum > 0.0)) throw ConfigError("[" + name + "] needs optimum = <known optimal tour length>");
    ctx.references.push_back({{"instance", name}, {"optimum", optimum}, {"provenance", to_string(Provenance::Known)}});

    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      const auto method = parse_tsp_method(methods[mi]);
      std::vector<DecodedTour> tours(seeds);
      parallel_for(seeds, ctx.opt.threads, [&](std::size_t r) {
        tours[r] = run_tsp_method(inst, method, params, derive_seed(seed, {ii, mi, r}));
      });
      std::vector<double> costs;
      for (const auto& t : tours)
        if (t.valid) costs.push_back(t.cost);
      const double best = costs.empty() ? std::nan("") : *std::min_element(costs.begin(), costs.end());
      const double ave = mean_std(costs).mean;
      csv.row({name, to_string(method), cell(seeds), cell(costs.size()), cell(best), cell(ave), cell(best / optimum),
               cell(ave / optimum), cell(optimum)});
    }
  }
}

// ---- sparsification -------------------------------------------------------

void study_sparsify(Context& ctx) {
  check_sections(ctx.spec, {"source", "n", "p", "seed", "instance", "a", "budgets"});
  const auto source = ctx.spec.get_string("problem", "source", "er");
  const auto budgets = ctx.spec.get_sizes("problem", "budgets", {3, 4, 6, 10, 20, 40, 60, 80, 100});
  std::vector<std::pair<std::string, IsingInstance>> graphs;
  if (source == "er") {
    const auto n = ctx.spec.get_size("problem", "n", 100);
    const auto seed = ctx.spec.get_u64("problem", "seed", 1);
    for (double p : ctx.spec.get_doubles("problem", "p", {0.1, 0.5, 1.0}))
      graphs.emplace_back("er-n" + std::to_string(n) + "-p" + format_number(p), gen_er({n, p}, derive_seed(seed, {n})));
  } else if (source == "tsp") {
    const auto path = ctx.opt.base_dir / ctx.spec.get("problem", "instance");
    if (!std::filesystem::exists(path)) throw ConfigError("missing instance file " + path.string());
    const auto inst = parse_tsplib(path);
    const auto enc = encode_tsp(inst, ctx.spec.get_double("problem", "a", 1000.0));
    graphs.emplace_back(inst.name, qubo_to_ising(enc.model).ising);
  } else {
    throw ConfigError("sparsify source must be 'er' or 'tsp'");
  }

  CsvWriter csv(ctx.open_csv(ctx.spec.get_string("output", "csv", "sparsify.csv")),
                {"graph", "k", "physical_nodes", "r_N", "r_S"});
  for (const auto& [label, g] : graphs)
    for (const auto& pt : sparsify_sweep(g, budgets))
      csv.row({label, cell(pt.budget), cell(pt.physical_nodes), cell(pt.r_n), cell(pt.r_s)});
}

using StudyFn = void (*)(Context&);

const std::vector<std::pair<std::string, StudyFn>>& registry() {
  static const std::vector<std::pair<std::string, StudyFn>> r = {
      {"hs-quality", study_hs_quality}, {"hs-scaling", study_hs_scaling}, {"hubo-vs-qubo", study_hubo_vs_qubo},
      {"group-sweep", study_group_sweep}, {"sg-er", study_sg_er},        {"tsp-bench", study_tsp_bench},
      {"sparsify", study_sparsify},
  };
  return r;
}

}  // namespace

std::vector<std::string> study_kinds() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : registry()) out.push_back(name);
  return out;
}

StudyOutput run_study(const Config& spec, const StudyOptions& options) {
  const auto kind = spec.get_string("problem", "kind", "");
  StudyFn fn = nullptr;
  for (const auto& [name, f] : registry())
    if (name == kind) fn = f;
  if (!fn) {
    std::string known;
    for (const auto& k : study_kinds()) known += (known.empty() ? "" : ", ") + k;
    throw ConfigError("unknown study kind '" + kind + "' (known: " + known + ")");
  }

  Context ctx(spec, options);
  const auto start = std::chrono::steady_clock::now();
  fn(ctx);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ctx.flush();

  json manifest;
  manifest["kind"] = kind;
  json sections = json::object();
  for (const auto& [section, body] : spec.sections()) {
    json s = json::object();
    for (const auto& [key, value] : body) s[key] = value;
    sections[section] = s;
  }
  manifest["spec"] = sections;
  manifest["outputs"] = ctx.names;
  manifest["references"] = ctx.references;
  const auto manifest_path = options.out_dir / "manifest.json";
  write_text_file(manifest_path, manifest.dump(2) + "\n");
  ctx.output.files.push_back(manifest_path);

  json timings;
  timings["kind"] = kind;
  timings["wall_seconds"] = seconds;
  timings["threads"] = options.threads;
  const auto timings_path = options.out_dir / "timings.json";
  write_text_file(timings_path, timings.dump(2) + "\n");
  ctx.output.files.push_back(timings_path);
  return ctx.output;
}

}  // namespace vcpc
