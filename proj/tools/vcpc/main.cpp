#include <CLI11.hpp>
#include <cstdlib>
#include <deque>
#include <iostream>

#include "commands.hpp"
#include "vcpc/error.hpp"

namespace {

namespace cli = vcpc::cli;

struct Bound {
  CLI::App* owner;
  CLI::Option* option;
  const cli::FlagSpec* spec;
  std::string* value;
};

std::string default_out_dir() {
  const char* env = std::getenv("VCPC_OUT");
  return env && *env ? env : "vcpc-out";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vcpc: probabilistic-computer style solvers for higher-order and quadratic binary models"};
  app.require_subcommand(1);

  std::deque<std::string> storage;
  std::vector<Bound> bound;
  struct Common {
    std::string config, out = default_out_dir(), format = "json", spec;
    std::size_t threads = 1;
  };
  std::deque<Common> commons;
  std::vector<std::pair<CLI::App*, const cli::Command*>> subs;

  for (const auto& cmd : cli::commands()) {
    auto* sub = app.add_subcommand(cmd.name, cmd.help);
    auto& common = commons.emplace_back();
    for (const auto& flag : cmd.flags) {
      auto& value = storage.emplace_back();
      bound.push_back({sub, sub->add_option(flag.name, value, flag.help + "  [" + flag.section + "] " + flag.key), &flag,
                       &value});
    }
    if (cmd.name == "study") {
      sub->add_option("--spec", common.spec, "study spec file")->required()->check(CLI::ExistingFile);
    } else {
      sub->add_option("--config", common.config, "INI config file; flags override its keys")
          ->check(CLI::ExistingFile);
      sub->add_option("--format", common.format, "summary format")->check(CLI::IsMember({"csv", "json"}));
    }
    sub->add_option("--out", common.out, "output directory (default $VCPC_OUT or ./vcpc-out)");
    sub->add_option("--threads", common.threads, "worker threads; 1 is the bit-reproducible mode")
        ->check(CLI::PositiveNumber);
    subs.emplace_back(sub, &cmd);
  }

  std::string replay_manifest, replay_out = default_out_dir();
  auto* replay = app.add_subcommand("replay", "re-run a recorded invocation and compare outputs byte for byte");
  replay->add_option("--manifest", replay_manifest, "invocation.json of an earlier run")
      ->required()
      ->check(CLI::ExistingFile);
  replay->add_option("--out", replay_out, "directory for the replayed outputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (replay->parsed()) {
      const auto differing = cli::replay(replay_manifest, replay_out);
      if (differing.empty()) {
        std::cout << "replay identical\n";
        return 0;
      }
      for (const auto& f : differing) std::cerr << "replay differs: " << f << '\n';
      return 1;
    }
    for (std::size_t i = 0; i < subs.size(); ++i) {
      auto* sub = subs[i].first;
      if (!sub->parsed()) continue;
      const auto& cmd = *subs[i].second;
      const auto& common = commons[i];
      cli::Run run;
      run.command = cmd.name;
      run.out_dir = common.out;
      run.format = common.format;
      run.threads = common.threads;
      if (!common.spec.empty()) {
        run.cfg = vcpc::Config::load(common.spec);
        run.base_dir = std::filesystem::path(common.spec).parent_path();
        if (run.base_dir.empty()) run.base_dir = ".";
      } else if (!common.config.empty()) {
        run.cfg = vcpc::Config::load(common.config);
      }
      for (const auto& b : bound)
        if (b.option->count() > 0 && b.owner == sub) run.cfg.set(b.spec->section, b.spec->key, *b.value);
      cli::execute(cmd, run, std::vector<std::string>(argv, argv + argc));
      std::cout << cli::render_summary(run.summary, run.format);
      return 0;
    }
  } catch (const cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\nrun with --help for the option list\n";
    return 2;
  } catch (const vcpc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
