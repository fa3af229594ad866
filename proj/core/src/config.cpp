#include "vcpc/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <algorithm>
#include <fstream>
#include <sstream>

#include "vcpc/error.hpp"
#include "vcpc/text.hpp"

namespace vcpc {

namespace pt = boost::property_tree;

Config Config::parse(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError("config line " + std::to_string(e.line()) + ": " + e.message());
  }
  Config cfg;
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ParseError("config key '" + section + "' must live inside a [section]");
    for (const auto& [key, value] : body) cfg.set(section, key, value.data());
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return parse(in);
}

bool Config::has(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

void Config::set(const std::string& section, const std::string& key, std::string value) {
  sections_[section][key] = std::string(trim(value));
}

const std::string& Config::get(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end() || !s->second.count(key))
    throw ConfigError("missing config key [" + section + "] " + key);
  return s->second.at(key);
}

namespace {

template <class Fn>
auto convert(const std::string& section, const std::string& key, const std::string& text, Fn&& fn) {
  try {
    return fn(text);
  } catch (const ParseError& e) {
    throw ConfigError("[" + section + "] " + key + ": " + e.what());
  }
}

std::size_t to_size(std::string_view s) {
  const long long v = parse_int(s);
  if (v < 0) throw ParseError("expected a non-negative integer, got '" + std::string(s) + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key, double fallback) const {
  if (!has(section, key)) return fallback;
  return convert(section, key, get(section, key), [](const std::string& t) { return parse_double(t); });
}

std::size_t Config::get_size(const std::string& section, const std::string& key, std::size_t fallback) const {
  if (!has(section, key)) return fallback;
  return convert(section, key, get(section, key), [](const std::string& t) { return to_size(t); });
}

std::uint64_t Config::get_u64(const std::string& section, const std::string& key, std::uint64_t fallback) const {
  return get_size(section, key, fallback);
}

std::vector<double> Config::get_doubles(const std::string& section, const std::string& key,
                                        std::vector<double> fallback) const {
  if (!has(section, key)) return fallback;
  return convert(section, key, get(section, key), [](const std::string& t) {
    std::vector<double> out;
    for (const auto& item : split_list(t)) out.push_back(parse_double(item));
    return out;
  });
}

std::vector<std::size_t> Config::get_sizes(const std::string& section, const std::string& key,
                                           std::vector<std::size_t> fallback) const {
  if (!has(section, key)) return fallback;
  return convert(section, key, get(section, key), [](const std::string& t) {
    std::vector<std::size_t> out;
    for (const auto& item : split_list(t)) out.push_back(to_size(item));
    return out;
  });
}

std::vector<std::string> Config::get_strings(const std::string& section, const std::string& key,
                                             std::vector<std::string> fallback) const {
  if (!has(section, key)) return fallback;
  return split_list(get(section, key));
}

void Config::require_known(const std::string& section, const std::vector<std::string>& allowed) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return;
  for (const auto& [key, value] : s->second)
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError("unknown config key [" + section + "] " + key);
}

std::string Config::to_ini() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [section, body] : sections_) {
    if (!first) out << '\n';
    first = false;
    out << '[' << section << "]\n";
    for (const auto& [key, value] : body) out << key << " = " << value << '\n';
  }
  return out.str();
}

Spacing parse_spacing(const std::string& text) {
  if (text == "linear") return Spacing::Linear;
  if (text == "geometric") return Spacing::Geometric;
  throw ConfigError("spacing must be 'linear' or 'geometric', got '" + text + "'");
}

GroupSelection parse_selection(const std::string& text) {
  if (text == "random") return GroupSelection::Random;
  if (text == "round-robin") return GroupSelection::RoundRobin;
  throw ConfigError("selection must be 'random' or 'round-robin', got '" + text + "'");
}

std::string to_string(Spacing s) { return s == Spacing::Linear ? "linear" : "geometric"; }
std::string to_string(GroupSelection s) { return s == GroupSelection::Random ? "random" : "round-robin"; }

SaConfig sa_config_from(const Config& cfg, SaConfig sa) {
  sa.beta_start = cfg.get_double("schedule", "beta_start", sa.beta_start);
  sa.beta_end = cfg.get_double("schedule", "beta_end", sa.beta_end);
  sa.steps = cfg.get_size("schedule", "steps", sa.steps);
  sa.iters_per_step = cfg.get_size("schedule", "iters", sa.iters_per_step);
  sa.spacing = parse_spacing(cfg.get_string("schedule", "spacing", to_string(sa.spacing)));
  sa.repeats = cfg.get_size("solver", "reps", sa.repeats);
  sa.seed = cfg.get_u64("solver", "seed", sa.seed);
  sa.selection = parse_selection(cfg.get_string("solver", "selection", to_string(sa.selection)));
  sa.threads = cfg.get_size("solver", "threads", sa.threads);
  sa.validate();
  return sa;
}

PtConfig pt_config_from(const Config& cfg, PtConfig p) {
  p.beta_start = cfg.get_double("schedule", "beta_start", p.beta_start);
  p.beta_end = cfg.get_double("schedule", "beta_end", p.beta_end);
  p.iters = cfg.get_size("schedule", "iters", p.iters);
  p.swap_interval = cfg.get_size("schedule", "swap", p.swap_interval);
  p.spacing = parse_spacing(cfg.get_string("schedule", "spacing", to_string(p.spacing)));
  p.replicas = cfg.get_size("solver", "repls", p.replicas);
  p.repeats = cfg.get_size("solver", "reps", p.repeats);
  p.seed = cfg.get_u64("solver", "seed", p.seed);
  p.selection = parse_selection(cfg.get_string("solver", "selection", to_string(p.selection)));
  p.threads = cfg.get_size("solver", "threads", p.threads);
  p.validate();
  return p;
}

void store_sa_config(Config& cfg, const SaConfig& sa) {
  cfg.set("solver", "method", "sa");
  cfg.set("schedule", "beta_start", format_number(sa.beta_start));
  cfg.set("schedule", "beta_end", format_number(sa.beta_end));
  cfg.set("schedule", "steps", std::to_string(sa.steps));
  cfg.set("schedule", "iters", std::to_string(sa.iters_per_step));
  cfg.set("schedule", "spacing", to_string(sa.spacing));
  cfg.set("solver", "reps", std::to_string(sa.repeats));
  cfg.set("solver", "seed", std::to_string(sa.seed));
  cfg.set("solver", "selection", to_string(sa.selection));
}

void store_pt_config(Config& cfg, const PtConfig& p) {
  cfg.set("solver", "method", "pt");
  cfg.set("schedule", "beta_start", format_number(p.beta_start));
  cfg.set("schedule", "beta_end", format_number(p.beta_end));
  cfg.set("schedule", "iters", std::to_string(p.iters));
  cfg.set("schedule", "swap", std::to_string(p.swap_interval));
  cfg.set("schedule", "spacing", to_string(p.spacing));
  cfg.set("solver", "repls", std::to_string(p.replicas));
  cfg.set("solver", "reps", std::to_string(p.repeats));
  cfg.set("solver", "seed", std::to_string(p.seed));
  cfg.set("solver", "selection", to_string(p.selection));
}

}  // namespace vcpc
