#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "vcpc/solvers.hpp"

namespace vcpc {

/// Sectioned key = value configuration (INI style, `;` or `#` comments).
/// Keys are looked up as section.key; values stay strings until read.
class Config {
 public:
  using Section = std::map<std::string, std::string>;

  static Config parse(std::istream& in);
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& section, const std::string& key) const;
  void set(const std::string& section, const std::string& key, std::string value);

  /// Throws ConfigError when the key is absent.
  const std::string& get(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  std::size_t get_size(const std::string& section, const std::string& key, std::size_t fallback) const;
  std::uint64_t get_u64(const std::string& section, const std::string& key, std::uint64_t fallback) const;
  std::vector<double> get_doubles(const std::string& section, const std::string& key,
                                  std::vector<double> fallback) const;
  std::vector<std::size_t> get_sizes(const std::string& section, const std::string& key,
                                     std::vector<std::size_t> fallback) const;
  std::vector<std::string> get_strings(const std::string& section, const std::string& key,
                                       std::vector<std::string> fallback) const;

  /// Throws ConfigError naming the first key in `section` outside `allowed`.
  void require_known(const std::string& section, const std::vector<std::string>& allowed) const;

  const std::map<std::string, Section>& sections() const { return sections_; }

  /// Canonical INI text: sections and keys in sorted order.
  std::string to_ini() const;

 private:
  std::map<std::string, Section> sections_;
};

/// Solver keys shared by config files and flags.
///   [schedule] beta_start, beta_end, steps, iters, swap, spacing (linear|geometric)
///   [solver]   reps, repls, seed, selection (random|round-robin), threads
SaConfig sa_config_from(const Config& cfg, SaConfig base = {});
PtConfig pt_config_from(const Config& cfg, PtConfig base = {});

Spacing parse_spacing(const std::string& text);
GroupSelection parse_selection(const std::string& text);
std::string to_string(Spacing s);
std::string to_string(GroupSelection s);

/// Writes the effective solver settings back into `cfg`.
void store_sa_config(Config& cfg, const SaConfig& sa);
void store_pt_config(Config& cfg, const PtConfig& pt);

}  // namespace vcpc
