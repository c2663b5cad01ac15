#include <iostream>

#include <CLI11.hpp>

#include "nncomp/cli.hpp"

int main(int argc, char** argv) {
  using namespace nncomp::cli;
  init_logging();

  CLI::App app{"Verify temporal compositions of neural-network controllers against co-safe LTL tasks"};
  app.require_subcommand(1);

  std::string cfg;
  std::optional<std::string> out_path, trace_path;
  auto* verify = app.add_subcommand("verify", "search for a verified controller strategy");
  verify->add_option("config", cfg, "configuration file")->required();
  verify->add_option("--out", out_path, "strategy output file (default: stdout)");
  verify->add_option("--trace", trace_path, "line-delimited reach trace output file");

  bool dot = false, as_json = false, pruned = false, preprocessed = false;
  auto* dfa = app.add_subcommand("dfa", "print the automaton of the configured formula");
  dfa->add_option("config", cfg, "configuration file")->required();
  auto* fmt = dfa->add_option_group("format");
  fmt->add_flag("--dot", dot, "Graphviz output (default)");
  fmt->add_flag("--json", as_json, "JSON output");
  fmt->require_option(0, 1);
  auto* variant = dfa->add_option_group("variant");
  variant->add_flag("--pruned", pruned, "after removing edges ruled out by disjoint regions");
  variant->add_flag("--preprocessed", preprocessed, "after unfolding into unique-path form");
  variant->require_option(0, 1);

  std::string strategy_path;
  std::size_t samples = 1000;
  std::optional<std::uint64_t> seed;
  auto* validate = app.add_subcommand("validate", "Monte Carlo check of a verified strategy");
  validate->add_option("config", cfg, "configuration file")->required();
  validate->add_option("strategy", strategy_path, "strategy file written by verify")->required();
  validate->add_option("--samples", samples, "number of sampled initial states");
  validate->add_option("--seed", seed, "sampling seed (default: the configured seed)");

  std::string controller;
  std::optional<int> steps;
  auto* reachdump = app.add_subcommand("reachdump", "dump reachable sets of one controller from the initial set");
  reachdump->add_option("config", cfg, "configuration file")->required();
  reachdump->add_option("controller", controller, "controller name")->required();
  reachdump->add_option("--steps", steps, "number of steps (default: the configured horizon)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  if (*verify) return cmd_verify(cfg, out_path, trace_path, std::cout, std::cerr);
  if (*dfa) {
    const auto v = pruned ? DfaVariant::Pruned : preprocessed ? DfaVariant::Preprocessed : DfaVariant::Plain;
    return cmd_dfa(cfg, as_json ? DfaFormat::Json : DfaFormat::Dot, v, std::cout, std::cerr);
  }
  if (*validate) return cmd_validate(cfg, strategy_path, samples, seed, std::cout, std::cerr);
  if (*reachdump) return cmd_reachdump(cfg, controller, steps, std::cout, std::cerr);
  return kExitInputError;
}
