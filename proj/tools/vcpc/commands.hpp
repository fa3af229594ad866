#pragma once

#include <filesystem>
#include <functional>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcpc/config.hpp"

namespace vcpc::cli {

/// Missing or contradictory arguments; reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A flag that writes into one config key. Flags given on the command line
/// override the same key from --config.
struct FlagSpec {
  std::string name;  // e.g. "--beta-start"
  std::string section;
  std::string key;
  std::string help;
};

/// One execution of a subcommand: its effective config, where outputs go and
/// what was written. Everything a replay needs ends up in invocation.json.
struct Run {
  std::string command;
  Config cfg;
  std::filesystem::path out_dir;
  std::filesystem::path base_dir = ".";  // study specs resolve instance paths here
  std::string format = "json";
  std::size_t threads = 1;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<std::string> outputs;

  void write(const std::string& name, const std::string& text);
  const std::string& required(const std::string& section, const std::string& key) const;
};

struct Command {
  std::string name;
  std::string help;
  std::vector<FlagSpec> flags;
  std::function<void(Run&)> body;
};

const std::vector<Command>& commands();
const Command& find_command(const std::string& name);

/// Runs the command body, writes the summary and invocation.json.
void execute(const Command& cmd, Run& run, const std::vector<std::string>& argv);

/// Re-runs the invocation recorded in `manifest` into `out_dir` and compares
/// every listed output byte for byte. Returns the names that differ.
std::vector<std::string> replay(const std::filesystem::path& manifest, const std::filesystem::path& out_dir);

std::string render_summary(const nlohmann::ordered_json& summary, const std::string& format);

}  // namespace vcpc::cli
