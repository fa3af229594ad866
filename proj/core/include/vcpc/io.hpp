#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "vcpc/solvers.hpp"

namespace vcpc {

/// Minimal RFC 4180 writer: a header row, then rows of the same width.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);

  void row(const std::vector<std::string>& cells);

  static std::string cell(double v);
  static std::string cell(std::size_t v);
  static std::string cell(const std::string& v) { return v; }

 private:
  std::ostream& out_;
  std::size_t width_;
};

/// JSON summary of a solve: best energy/state, per-repeat bests and seeds.
std::string solve_result_json(const SolveResult& r);

/// Long-form trajectory CSV: repeat, iteration, best_energy (repeat "all" is the pooled curve).
void write_trajectory_csv(std::ostream& out, const SolveResult& r);

/// Writes `text` to `path`, creating parent directories; throws Error on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace vcpc
