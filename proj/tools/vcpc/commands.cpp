#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "vcpc/analysis.hpp"
#include "vcpc/colouring.hpp"
#include "vcpc/error.hpp"
#include "vcpc/hitting_set.hpp"
#include "vcpc/io.hpp"
#include "vcpc/spinglass.hpp"
#include "vcpc/study.hpp"
#include "vcpc/text.hpp"
#include "vcpc/transforms.hpp"
#include "vcpc/tsp.hpp"

namespace vcpc::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

void Run::write(const std::string& name, const std::string& text) {
  write_text_file(out_dir / name, text);
  outputs.push_back(name);
}

const std::string& Run::required(const std::string& section, const std::string& key) const {
  if (!cfg.has(section, key)) throw UsageError(command + ": missing required setting [" + section + "] " + key);
  return cfg.get(section, key);
}

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open input " + path);
  return in;
}

EnergyModel read_model(const std::string& path) {
  auto in = open_input(path);
  return load_hubo(in);
}

IsingInstance read_ising(const std::string& path) {
  auto in = open_input(path);
  return load_ising(in);
}

template <class Fn>
std::string to_text(Fn&& fn) {
  std::ostringstream out;
  fn(out);
  return out.str();
}

// ---- flags shared by several commands ---------------------------------------

std::vector<FlagSpec> schedule_flags(bool pt) {
  std::vector<FlagSpec> f = {
      {"--beta-start", "schedule", "beta_start", "first (SA) or lowest (PT) inverse temperature"},
      {"--beta-end", "schedule", "beta_end", "last (SA) or highest (PT) inverse temperature"},
      {"--iters", "schedule", "iters", pt ? "PT iterations" : "SA iterations per beta step"},
      {"--spacing", "schedule", "spacing", "linear | geometric"},
      {"--reps", "solver", "reps", "independent repeats"},
      {"--selection", "solver", "selection", "random | round-robin group choice"},
      {"--seed", "solver", "seed", "root seed"},
  };
  if (pt) {
    f.push_back({"--replicas", "solver", "repls", "number of replicas"});
    f.push_back({"--swap", "schedule", "swap", "iterations between swap attempts"});
  } else {
    f.push_back({"--steps", "schedule", "steps", "number of beta steps"});
  }
  return f;
}

std::vector<FlagSpec> concat(std::vector<FlagSpec> a, const std::vector<FlagSpec>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// ---- generators ---------------------------------------------------------------

void cmd_gen_hs(Run& run) {
  const auto n = run.cfg.get_size("problem", "n", 0);
  if (n == 0) throw UsageError("gen-hs: --n is required");
  const auto m = run.cfg.get_size("problem", "m", n);
  const auto k = run.cfg.get_size("problem", "k", 5);
  const auto seed = run.cfg.get_u64("problem", "seed", 0);
  const auto h = gen_hypergraph(n, m, k, seed);
  run.write("hypergraph.txt", to_text([&](std::ostream& o) { save_hypergraph(o, h); }));
  const auto g = build_conflict_graph(h);
  run.summary = {{"N", n}, {"m", m}, {"k", k}, {"seed", seed}, {"greedy_cover", greedy_reference(h).size()},
                 {"conflict_max_degree", g.max_degree()}, {"num_groups", greedy_colour(g).num_groups()}};
}

void cmd_gen_er(Run& run) {
  const auto n = run.cfg.get_size("problem", "n", 0);
  if (n == 0) throw UsageError("gen-er: --n is required");
  const double p = run.cfg.get_double("problem", "p", 0.5);
  const auto seed = run.cfg.get_u64("problem", "seed", 0);
  const auto inst = gen_er({n, p}, seed);
  run.write("instance.ising", to_text([&](std::ostream& o) { save_ising(o, inst); }));
  const auto plan = plan_groups(ising_to_qubo(inst));
  run.summary = {{"N", n}, {"p", p}, {"seed", seed}, {"edges", inst.num_edges()},
                 {"density", n > 1 ? graph_density(inst) : 0.0}, {"max_degree", max_degree(inst)},
                 {"num_groups", plan.num_groups()}};
  if (p > 0.0 && p < 1.0 && n >= 2) run.summary["chromatic_estimate"] = chromatic_estimate(static_cast<double>(n), p);
}

// ---- encoding and colouring -----------------------------------------------------

void cmd_encode(Run& run) {
  const auto problem = run.required("input", "problem");
  const auto path = run.required("input", "path");
  EnergyModel model;
  if (problem == "hs") {
    auto in = open_input(path);
    const auto h = load_hypergraph(in);
    model = encode_hitting_set(h, run.cfg.get_double("problem", "a", kDefaultHsPenalty),
                               run.cfg.get_double("problem", "b", kDefaultHsWeight));
  } else if (problem == "tsp") {
    const auto inst = parse_tsplib(fs::path(path));
    const double a = run.cfg.get_double("problem", "a", 2.0 * inst.max_distance());
    model = encode_tsp(inst, a, run.cfg.get_double("problem", "b", 1.0)).model;
  } else if (problem == "sg") {
    model = ising_to_qubo(read_ising(path));
  } else {
    throw UsageError("encode: --problem must be hs, tsp or sg");
  }
  run.write("model.hubo", to_text([&](std::ostream& o) { save_hubo(o, model); }));
  run.summary = {{"problem", problem}, {"num_vars", model.num_vars()}, {"num_terms", model.num_terms()},
                 {"max_order", model.max_order()}, {"constant", model.constant()}};
}

void cmd_colour(Run& run) {
  const auto model = read_model(run.required("input", "model"));
  const auto g = build_conflict_graph(model);
  const auto plan = greedy_colour(g);
  run.write("groups.txt", to_text([&](std::ostream& o) {
    for (const auto& group : plan.groups) {
      for (std::size_t i = 0; i < group.size(); ++i) o << (i ? " " : "") << group[i];
      o << '\n';
    }
  }));
  run.summary = {{"num_vars", model.num_vars()},       {"conflict_edges", g.num_edges()},
                 {"max_degree", g.max_degree()},       {"num_groups", plan.num_groups()},
                 {"avg_group_size", plan.avg_group_size()}, {"valid", is_valid_plan(plan, g)}};
}

// ---- solvers ------------------------------------------------------------------

void finish_solve(Run& run, const SolveResult& r) {
  run.write("result.json", solve_result_json(r));
  run.write("trajectory.csv", to_text([&](std::ostream& o) { write_trajectory_csv(o, r); }));
  run.summary = {{"best_energy", r.best_energy}, {"total_iterations", r.total_iterations},
                 {"repeats", r.repeats.size()},   {"num_groups", r.num_groups},
                 {"avg_group_size", r.avg_group_size}, {"seed", r.seed}};
}

void cmd_solve_sa(Run& run) {
  const auto model = read_model(run.required("input", "model"));
  auto sa = sa_config_from(run.cfg);
  sa.threads = run.threads;
  store_sa_config(run.cfg, sa);
  finish_solve(run, run_sa(model, plan_groups(model), sa));
}

void cmd_solve_pt(Run& run) {
  const auto model = read_model(run.required("input", "model"));
  auto pt = pt_config_from(run.cfg);
  pt.threads = run.threads;
  store_pt_config(run.cfg, pt);
  finish_solve(run, run_pt(model, plan_groups(model), pt));
}

void cmd_tsp_kmc(Run& run) {
  const auto inst = parse_tsplib(fs::path(run.required("input", "instance")));
  const auto defaults = default_tsp_params();
  KmcConfig cfg;
  cfg.cluster_sizes = run.cfg.get_sizes("problem", "clusters", {});
  cfg.penalties = run.cfg.get_doubles("problem", "penalties", {});
  if (cfg.penalties.empty()) throw UsageError("tsp-kmc: --penalties A_0,A_1,... is required");
  cfg.b = run.cfg.get_double("problem", "b", 1.0);
  const auto method = run.cfg.get_string("solver", "method", "sa");
  if (method == "sa") {
    cfg.solver = SolverKind::SA;
    cfg.sa = sa_config_from(run.cfg, defaults.sa);
    cfg.sa.threads = run.threads;
    store_sa_config(run.cfg, cfg.sa);
    cfg.seed = cfg.sa.seed;
  } else if (method == "pt") {
    cfg.solver = SolverKind::PT;
    cfg.pt = pt_config_from(run.cfg, defaults.pt);
    cfg.pt.threads = run.threads;
    store_pt_config(run.cfg, cfg.pt);
    cfg.seed = cfg.pt.seed;
  } else {
    throw UsageError("tsp-kmc: --method must be sa or pt");
  }
  const auto r = kmc_pipeline(inst, cfg);
  run.write("tour.txt", to_text([&](std::ostream& o) { save_tour(o, r.tour, inst.size()); }));
  run.write("levels.csv", to_text([&](std::ostream& o) {
    CsvWriter csv(o, {"level", "entities", "penalty", "free_vars", "num_groups", "valid", "cost"});
    for (std::size_t l = 0; l < r.levels.size(); ++l) {
      const auto& lv = r.levels[l];
      csv.row({CsvWriter::cell(l), CsvWriter::cell(lv.entities), CsvWriter::cell(lv.penalty),
               CsvWriter::cell(lv.free_vars), CsvWriter::cell(lv.num_groups), lv.valid ? "1" : "0",
               CsvWriter::cell(lv.cost)});
    }
  }));
  run.summary = {{"instance", inst.name}, {"cities", inst.size()}, {"method", method}, {"valid", r.valid},
                 {"cost", r.tour.cost}, {"total_iterations", r.total_iterations}};
  if (run.cfg.has("problem", "optimum") && r.valid)
    run.summary["ratio"] = r.tour.cost / run.cfg.get_double("problem", "optimum", 1.0);
  if (!r.diagnostic.empty()) run.summary["diagnostic"] = r.diagnostic;
}

// ---- transforms ---------------------------------------------------------------

void cmd_quadratise(Run& run) {
  const auto model = read_model(run.required("input", "model"));
  const auto strength = run.cfg.get_string("problem", "strength", "auto");
  const auto q = strength == "auto" ? quadratise(model) : quadratise(model, parse_double(strength));
  run.write("quadratised.hubo", to_text([&](std::ostream& o) { save_hubo(o, q.model); }));
  run.write("aux.csv", to_text([&](std::ostream& o) {
    CsvWriter csv(o, {"aux", "a", "b", "strength"});
    for (std::size_t i = 0; i < q.aux_count(); ++i)
      csv.row({CsvWriter::cell(q.num_original + i), CsvWriter::cell(std::size_t{q.aux_pairs[i].first}),
               CsvWriter::cell(std::size_t{q.aux_pairs[i].second}), CsvWriter::cell(q.strengths[i])});
  }));
  std::size_t reduced = 0;
  for (std::size_t t = 0; t < model.num_terms(); ++t) reduced += model.term_order(t) > 2;
  run.summary = {{"original_vars", model.num_vars()}, {"max_order", model.max_order()},
                 {"terms_reduced", reduced},          {"aux_vars", q.aux_count()},
                 {"total_vars", q.model.num_vars()},  {"strength", strength}};
  if (reduced > 0)
    run.summary["aux_per_reduced_term"] = static_cast<double>(q.aux_count()) / static_cast<double>(reduced);
}

void cmd_sparsify(Run& run) {
  IsingInstance g;
  if (run.cfg.has("input", "instance")) {
    g = read_ising(run.cfg.get("input", "instance"));
  } else if (run.cfg.has("input", "model")) {
    g = qubo_to_ising(read_model(run.cfg.get("input", "model"))).ising;
  } else {
    throw UsageError("sparsify: give --instance (Ising file) or --model (QUBO file)");
  }
  const auto k = run.cfg.get_size("problem", "budget", 0);
  if (k == 0) throw UsageError("sparsify: --budget is required");
  const auto lambda_text = run.cfg.get_string("problem", "lambda", "default");
  std::optional<double> lambda;
  if (lambda_text == "safe")
    lambda = safe_lambda(g);
  else if (lambda_text != "default")
    lambda = parse_double(lambda_text);
  const auto sg = sparsify(g, k, lambda);
  run.write("physical.ising", to_text([&](std::ostream& o) { save_ising(o, sg.physical); }));
  run.write("chains.txt", to_text([&](std::ostream& o) {
    for (const auto& chain : sg.chains) {
      for (std::size_t i = 0; i < chain.size(); ++i) o << (i ? " " : "") << chain[i];
      o << '\n';
    }
  }));
  const auto gm = growth_metrics(g, sg.physical);
  run.summary = {{"logical_nodes", g.n}, {"physical_nodes", sg.num_physical()}, {"budget", k},
                 {"lambda", sg.lambda},  {"max_degree", max_degree(sg.physical)},  {"r_N", gm.r_n},
                 {"r_S", gm.r_s},        {"M_original", gm.m_original},            {"M_new", gm.m_new}};
}

// ---- analysis -----------------------------------------------------------------

void cmd_tts(Run& run) {
  if (!run.cfg.has("problem", "iters") || !run.cfg.has("problem", "n"))
    throw UsageError("tts: --iters and --n are required");
  double iters = run.cfg.get_double("problem", "iters", 0.0);
  if (run.cfg.has("problem", "group_size"))
    iters = group_adjusted_iterations(iters, run.cfg.get_double("problem", "group_size", 1.0));
  const auto t = estimate_tts(iters, run.cfg.get_size("problem", "n", 0), run.cfg.get_double("problem", "freq", 2.7e9),
                              run.cfg.get_double("problem", "overhead", kDefaultOverheadCycles));
  run.summary = {{"adjusted_iterations", t.adjusted_iterations}, {"N", t.n},
                 {"frequency_hz", t.frequency_hz},               {"overhead_cycles", t.overhead_cycles},
                 {"cycles_per_iteration", t.cycles_per_iteration}, {"seconds", t.seconds}};
}

void cmd_study(Run& run) {
  StudyOptions opt;
  opt.out_dir = run.out_dir;
  opt.base_dir = run.base_dir;
  opt.threads = run.threads;
  const auto out = run_study(run.cfg, opt);
  for (const auto& f : out.files) {
    const auto name = f.filename().string();
    if (name != "timings.json") run.outputs.push_back(name);
  }
  run.summary = {{"kind", run.cfg.get("problem", "kind")}, {"files", run.outputs.size()}};
}

}  // namespace

const std::vector<Command>& commands() {
  static const std::vector<Command> all = {
      {"gen-hs", "generate a random k-uniform hypergraph",
       {{"--n", "problem", "n", "number of vertices"},
        {"--m", "problem", "m", "number of hyperedges (default N)"},
        {"--k", "problem", "k", "hyperedge size (default 5)"},
        {"--seed", "problem", "seed", "generator seed"}},
       cmd_gen_hs},
      {"gen-er", "generate an Erdos-Renyi +-1 spin glass",
       {{"--n", "problem", "n", "number of spins"},
        {"--p", "problem", "p", "edge probability (default 0.5)"},
        {"--seed", "problem", "seed", "generator seed"}},
       cmd_gen_er},
      {"encode", "encode a problem instance as a HUBO/QUBO model file",
       {{"--problem", "input", "problem", "hs | tsp | sg"},
        {"--input", "input", "path", "hypergraph, TSPLIB or Ising file"},
        {"--a", "problem", "a", "constraint penalty A"},
        {"--b", "problem", "b", "objective weight B"}},
       cmd_encode},
      {"colour", "build the conflict graph of a model and colour it greedily",
       {{"--model", "input", "model", "model file"}},
       cmd_colour},
      {"solve-sa", "graph-coloured simulated annealing on a model",
       concat({{"--model", "input", "model", "model file"}}, schedule_flags(false)), cmd_solve_sa},
      {"solve-pt", "graph-coloured parallel tempering on a model",
       concat({{"--model", "input", "model", "model file"}}, schedule_flags(true)), cmd_solve_pt},
      {"tsp-kmc", "solve a TSPLIB instance with recursive k-means clustering",
       concat({{"--instance", "input", "instance", "TSPLIB .tsp file"},
               {"--clusters", "problem", "clusters", "cluster counts K_1,K_2,... (coarsest last)"},
               {"--penalties", "problem", "penalties", "penalties A_0,A_1,... (one more than clusters)"},
               {"--b", "problem", "b", "distance weight B"},
               {"--optimum", "problem", "optimum", "known optimum, for the ratio column"},
               {"--method", "solver", "method", "sa | pt"},
               {"--steps", "schedule", "steps", "SA beta steps"},
               {"--replicas", "solver", "repls", "PT replicas"},
               {"--swap", "schedule", "swap", "PT swap interval"}},
              [] {
                auto f = schedule_flags(false);
                f.pop_back();  // --steps is listed above
                return f;
              }()),
       cmd_tsp_kmc},
      {"quadratise", "reduce a HUBO to a QUBO with auxiliary product variables",
       {{"--model", "input", "model", "model file"},
        {"--strength", "problem", "strength", "penalty strength, or auto (default)"}},
       cmd_quadratise},
      {"sparsify", "split high-degree nodes into ferromagnetic copy chains",
       {{"--instance", "input", "instance", "Ising instance file"},
        {"--model", "input", "model", "QUBO model file (converted to Ising form)"},
        {"--budget", "problem", "budget", "neighbour budget k (>= 3)"},
        {"--lambda", "problem", "lambda", "chain coupling: number, default or safe"}},
       cmd_sparsify},
      {"tts", "estimate time-to-solution from an iteration count",
       {{"--iters", "problem", "iters", "iterations to the target quality"},
        {"--n", "problem", "n", "problem size N"},
        {"--freq", "problem", "freq", "clock frequency in Hz (default 2.7e9)"},
        {"--overhead", "problem", "overhead", "overhead cycles C (default 10)"},
        {"--group-size", "problem", "group_size", "average group size; divides iters when given"}},
       cmd_tts},
      {"study", "run an experiment described by a study spec file",
       {{"--seed", "problem", "seed", "overrides [problem] seed"}},
       cmd_study},
  };
  return all;
}

const Command& find_command(const std::string& name) {
  for (const auto& c : commands())
    if (c.name == name) return c;
  throw UsageError("unknown command '" + name + "'");
}

std::string render_summary(const json& summary, const std::string& format) {
  auto text = [](const json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return format_number(v.get<double>());
    return v.dump();
  };
  if (format == "json") return summary.dump(2) + "\n";
  std::ostringstream out;
  std::vector<std::string> header, row;
  for (const auto& [key, value] : summary.items()) {
    header.push_back(key);
    row.push_back(text(value));
  }
  CsvWriter csv(out, header);
  csv.row(row);
  return out.str();
}

void execute(const Command& cmd, Run& run, const std::vector<std::string>& argv) {
  if (run.format != "json" && run.format != "csv") throw UsageError("--format must be csv or json");
  fs::create_directories(run.out_dir);
  cmd.body(run);
  if (cmd.name != "study") run.write(run.format == "json" ? "summary.json" : "summary.csv", render_summary(run.summary, run.format));

  json manifest;
  manifest["command"] = cmd.name;
  manifest["argv"] = argv;
  manifest["format"] = run.format;
  manifest["base_dir"] = run.base_dir.string();
  json config = json::object();
  for (const auto& [section, body] : run.cfg.sections()) {
    json s = json::object();
    for (const auto& [key, value] : body) s[key] = value;
    config[section] = s;
  }
  manifest["config"] = config;
  manifest["outputs"] = run.outputs;
  write_text_file(run.out_dir / "invocation.json", manifest.dump(2) + "\n");
}

std::vector<std::string> replay(const fs::path& manifest_path, const fs::path& out_dir) {
  const auto manifest = json::parse(read_text_file(manifest_path));
  const auto& cmd = find_command(manifest.at("command").get<std::string>());
  Run run;
  run.command = cmd.name;
  run.out_dir = out_dir;
  run.format = manifest.at("format").get<std::string>();
  run.base_dir = manifest.at("base_dir").get<std::string>();
  for (const auto& [section, body] : manifest.at("config").items())
    for (const auto& [key, value] : body.items()) run.cfg.set(section, key, value.get<std::string>());
  std::vector<std::string> argv = {"replay", manifest_path.string()};
  execute(cmd, run, argv);

  std::vector<std::string> differing;
  const auto original_dir = manifest_path.parent_path();
  for (const auto& name : manifest.at("outputs")) {
    const auto file = name.get<std::string>();
    if (!fs::exists(original_dir / file) || !fs::exists(out_dir / file) ||
        read_text_file(original_dir / file) != read_text_file(out_dir / file))
      differing.push_back(file);
  }
  return differing;
}

}  // namespace vcpc::cli
