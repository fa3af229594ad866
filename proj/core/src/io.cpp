#include "vcpc/io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "vcpc/error.hpp"
#include "vcpc/text.hpp"

namespace vcpc {

namespace {

std::string quote(const std::string& v) {
  if (v.find_first_of(",\"\n\r") == std::string::npos) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string bits(const State& s) {
  std::string out;
  out.reserve(s.size());
  for (auto b : s) out += b ? '1' : '0';
  return out;
}

}  // namespace

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header) : out_(out), width_(header.size()) {
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw DimensionError("CSV row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << quote(cells[i]);
  out_ << '\n';
}

std::string CsvWriter::cell(double v) { return format_number(v); }
std::string CsvWriter::cell(std::size_t v) { return std::to_string(v); }

std::string solve_result_json(const SolveResult& r) {
  nlohmann::ordered_json j;
  j["best_energy"] = r.best_energy;
  j["best_state"] = bits(r.best_state);
  j["seed"] = r.seed;
  j["total_iterations"] = r.total_iterations;
  j["num_groups"] = r.num_groups;
  j["avg_group_size"] = r.avg_group_size;
  auto& reps = j["repeats"] = nlohmann::ordered_json::array();
  for (const auto& rep : r.repeats) {
    reps.push_back({{"seed", rep.seed},
                    {"best_energy", rep.best_energy},
                    {"best_iteration", rep.best_iteration},
                    {"accepted_swaps", rep.accepted_swaps},
                    {"best_state", bits(rep.best_state)}});
  }
  return j.dump(2) + "\n";
}

void write_trajectory_csv(std::ostream& out, const SolveResult& r) {
  CsvWriter csv(out, {"repeat", "iteration", "best_energy"});
  for (std::size_t i = 0; i < r.repeats.size(); ++i)
    for (const auto& p : r.repeats[i].trajectory)
      csv.row({std::to_string(i), CsvWriter::cell(p.iteration), CsvWriter::cell(p.best_energy)});
  for (const auto& p : r.trajectory) csv.row({"all", CsvWriter::cell(p.iteration), CsvWriter::cell(p.best_energy)});
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace vcpc
