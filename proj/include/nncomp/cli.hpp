#pragma once

// Configuration loading and the command implementations behind the
// `nncomp` executable. Commands write results to the given streams and
// return the process exit status.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "nncomp/automata.hpp"
#include "nncomp/ltl.hpp"
#include "nncomp/nn.hpp"
#include "nncomp/reach.hpp"
#include "nncomp/space.hpp"
#include "nncomp/system.hpp"
#include "nncomp/verifier.hpp"

namespace nncomp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitFailed = 2;

// Error tagged with the pipeline stage that raised it.
class StageError : public Error {
 public:
  StageError(const std::string& stage, const std::string& what) : Error(stage + ": " + what), stage_(stage) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

struct InitialSet {
  space::Box box;  // the set itself, or the bounding box of the ellipsoid
  std::optional<space::Ellipsoid> ellipsoid;

  Eigen::VectorXd sample(std::mt19937_64& rng) const;
};

struct Config {
  std::string formula_text;
  ltl::Formula formula;
  space::RegionMap regions;
  InitialSet initial;
  std::shared_ptr<const sys::LtvSystem> system;
  std::vector<nn::NnController> controllers;  // declaration order
  nn::ControlSchedule bounds;
  reach::ReachOptions reach;
  verifier::SearchOptions search;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
};

// Relative weight paths resolve against base_dir.
Config config_from_json(const nlohmann::json& j, const std::string& base_dir);
Config load_config(const std::string& path);

// Reads NNCOMP_LOG_LEVEL (default "warn") and logs to stderr.
void init_logging();

struct Automata {
  automata::Dfa dfa;
  automata::Dfa pruned;
  automata::PreprocessedDfa preprocessed;
};
Automata build_automata(const Config& cfg);

struct VerifyReport {
  verifier::VerifierResult result;
  nlohmann::json strategy;  // the strategy file contents
  std::string trace_jsonl;
};
VerifyReport run_verify(const Config& cfg);
std::string dump_strategy(const nlohmann::json& strategy);

sys::Strategy strategy_from_json(const nlohmann::json& j);

struct ValidateReport {
  std::size_t samples = 0;
  std::size_t satisfied = 0;
  std::vector<std::size_t> counterexamples;  // sample indices, ascending
  std::vector<std::string> details;          // one line per counterexample
};
ValidateReport run_validate(const Config& cfg, const sys::Strategy& strategy, std::size_t samples,
                            std::uint64_t seed);

int cmd_verify(const std::string& config_path, const std::optional<std::string>& out_path,
               const std::optional<std::string>& trace_path, std::ostream& out, std::ostream& err);

enum class DfaFormat { Dot, Json };
enum class DfaVariant { Plain, Pruned, Preprocessed };
int cmd_dfa(const std::string& config_path, DfaFormat format, DfaVariant variant, std::ostream& out,
            std::ostream& err);

int cmd_validate(const std::string& config_path, const std::string& strategy_path, std::size_t samples,
                 std::optional<std::uint64_t> seed, std::ostream& out, std::ostream& err);

int cmd_reachdump(const std::string& config_path, const std::string& controller, std::optional<int> steps,
                  std::ostream& out, std::ostream& err);

}  // namespace nncomp::cli
