// End-to-end acceptance checks. Prints one PASS/FAIL line per check and
// exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "nncomp/cli.hpp"
#include "oracle.hpp"

using namespace nncomp;
using nlohmann::json;

namespace {

const std::string kScenarios = NNCOMP_SCENARIO_DIR;

// Pinned limits.
constexpr double kDfaSeconds = 60.0;
constexpr double kCaseOneSeconds = 30.0;
constexpr int kMaxWordLength = 6;
constexpr int kReachInstances = 50;
constexpr int kReachSamples = 10000;
constexpr int kReachSteps = 10;
constexpr double kReachEps = 1e-9;
constexpr std::size_t kValidationSamples = 1000;
constexpr int kMonotoneInstances = 20;
constexpr double kMonotoneTol = 1e-9;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x, int prec = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(prec);
  os << x;
  return os.str();
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("nncomp_acceptance_" + name)).string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Returns the satisfied count printed by cmd_validate, or -1.
long validated(const std::string& cfg, const std::string& strategy, std::size_t n, std::string& report) {
  std::ostringstream out, err;
  const int code = cli::cmd_validate(cfg, strategy, n, std::nullopt, out, err);
  report = out.str() + err.str();
  if (code != cli::kExitOk && code != cli::kExitFailed) return -1;
  const auto pos = report.find("satisfied: ");
  if (pos == std::string::npos) return -1;
  return std::stol(report.substr(pos + 11));
}

// ---------------------------------------------------------------------------

Outcome dfa_semantics() {
  const auto t0 = std::chrono::steady_clock::now();
  // Three-atom corpus. The case-study formulas merge their two obstacles
  // into one atom here; the literal four-atom versions follow below.
  const std::vector<std::string> corpus = {
      "F(l1) & (!l2 U l1)",
      "F l2 & (!l2 U l1)",
      "F l1 & F l2 & (!l3 U l1) & (!l3 U l2)",
      "F (l1 | l2) & (!l3 U (l1 | l2))",
      "true",
      "false",
      "l1",
      "X l1",
      "X X (l1 & !l2)",
      "l1 U l2",
      "(l1 U l2) U l3",
      "l1 U (l2 U l3)",
      "F (l1 & X (l2 & X l3))",
      "F l1 & F l2 & F l3",
      "F (l1 & F (l2 & F l3))",
      "!l1 U (l2 & X l3)",
      "(l1 -> X l2) & F l3",
      "F (l1 & !l2) | X F (l2 & l3)",
      "X (l1 | l2) U (l3 & !l1)",
      "F (X l1 & X X !l1)",
      "!(l1 & l2) U (l3 | X false)",
      "(F l1 | F l2) & X !l3",
      "F (l1 & X !l1 & X X l1)",
      "l1 & l2 & l3 & !l1",
  };
  const std::vector<std::string> atoms{"l1", "l2", "l3"};
  long words = 0, mismatches = 0;
  std::string first_bad;
  auto check = [&](const ltl::Formula& f, const std::vector<std::string>& ap, int len) {
    const auto d = automata::to_dfa(f, std::set<std::string>(ap.begin(), ap.end()));
    oracle::for_each_word(ap, len, [&](const ltl::Word& w) {
      ++words;
      if (d.accepts(w) != ltl::eval_trace(f, w)) {
        if (mismatches++ == 0) first_bad = ltl::to_string(f);
      }
    });
  };
  for (const auto& text : corpus) check(ltl::parse_formula(text), atoms, kMaxWordLength);
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 20; ++i) check(oracle::random_cosafe(rng, atoms, 4), atoms, kMaxWordLength);
  // Literal case-study formulas over four atoms, words up to length 5.
  const std::vector<std::string> four{"l1", "l2", "l3", "l4"};
  check(ltl::parse_formula("F l1 & F l2 & (!(l3 | l4) U l1) & (!(l3 | l4) U l2)"), four, 5);
  check(ltl::parse_formula("F (l1 | l2) & (!(l3 | l4) U (l1 | l2))"), four, 5);

  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = mismatches == 0 && secs < kDfaSeconds;
  o.detail = std::to_string(corpus.size() + 22) + " formulas, " + std::to_string(words) + " words, " +
             std::to_string(mismatches) + " mismatches, " + fmt(secs) + " s";
  if (!first_bad.empty()) o.detail += ", first mismatch on " + first_bad;
  return o;
}

// ---------------------------------------------------------------------------

Outcome reach_soundness() {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> dim(2, 4), inputs(1, 2), layers(1, 2), width(4, 16), split(1, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  long violations = 0, states = 0, diverged = 0;
  for (int inst = 0; inst < kReachInstances; ++inst) {
    const int d = dim(rng), n = inputs(rng);
    const auto sys = oracle::random_plant(rng, d, n, 0.6 + 0.5 * unit(rng));
    const auto net = oracle::random_net(rng, d, n, layers(rng), width(rng));
    const double umax = 0.5 + 1.5 * unit(rng);
    const auto bounds = nn::ControlSchedule::constant({Eigen::VectorXd::Constant(n, -umax), Eigen::VectorXd::Constant(n, umax)});
    Eigen::VectorXd lo(d), hi(d);
    for (int i = 0; i < d; ++i) {
      lo[i] = -1.0 + 2.0 * unit(rng);
      hi[i] = lo[i] + 0.5 * unit(rng);
    }
    const space::Box x0(lo, hi);
    reach::ReachOptions opts;
    opts.split_depth = split(rng);
    opts.merge = unit(rng) < 0.5;
    opts.epsilon = kReachEps;
    std::vector<reach::ReachSet> seq;
    try {
      seq = reach::reach_sequence(sys, {{x0}, 0, ""}, net, bounds, opts, kReachSteps);
    } catch (const reach::DivergenceError&) {
      ++diverged;
      continue;
    }
    const auto onet = oracle::to_net(net);
    const auto oplant = oracle::to_plant(sys.at(0));
    const auto obounds = oracle::to_bounds(bounds.at(0));
    for (int s = 0; s < kReachSamples; ++s) {
      oracle::Vec x = oracle::to_vec(space::sample_box(x0, rng));
      for (int t = 1; t <= kReachSteps; ++t) {
        x = oracle::plant(oplant, x, oracle::clamp(oracle::forward(onet, x), obounds));
        ++states;
        if (!oracle::in_boxes(seq[static_cast<std::size_t>(t)].boxes, x, kReachEps)) ++violations;
      }
    }
  }
  Outcome o;
  o.pass = violations == 0 && diverged == 0;
  o.detail = std::to_string(kReachInstances) + " instances, " + std::to_string(states) + " sampled states, " +
             std::to_string(violations) + " outside, " + std::to_string(diverged) + " diverged";
  return o;
}

// ---------------------------------------------------------------------------

Outcome case_one() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string cfg = kScenarios + "/case1.json";
  const std::string out = temp_path("case1.strategy.json");
  std::ostringstream so, se;
  const int code = cli::cmd_verify(cfg, out, std::nullopt, so, se);
  Outcome o;
  if (code != cli::kExitOk) {
    o.detail = "verify exited " + std::to_string(code) + ": " + se.str();
    return o;
  }
  const json s = json::parse(read_file(out));
  std::string report;
  const long sat = validated(cfg, out, kValidationSamples, report);
  const double secs = seconds_since(t0);
  std::string steps;
  for (const auto& st : s["steps"])
    steps += (steps.empty() ? "" : ",") + st["controller"].get<std::string>() + ":" + std::to_string(st["horizon"].get<int>());
  o.pass = s["verified"] == true && s["steps"].size() == 2 && sat == static_cast<long>(kValidationSamples) &&
           secs < kCaseOneSeconds;
  o.detail = "strategy [" + steps + "], " + std::to_string(sat) + "/" + std::to_string(kValidationSamples) +
             " validated, " + fmt(secs) + " s";
  return o;
}

// ---------------------------------------------------------------------------

Outcome case_two() {
  const std::string cfg_path = kScenarios + "/case2.json";
  const auto cfg = cli::load_config(cfg_path);
  const auto rep = cli::run_verify(cfg);
  const auto& log = rep.result.log;
  Outcome o;
  if (log.size() < 2) {
    o.detail = "expected at least two attempts, got " + std::to_string(log.size());
    return o;
  }
  const auto& a = log[0];
  const auto& b = log[1];
  const bool weak_fails = !a.certified && a.controller == cfg.controllers[0].name() &&
                          a.kind == verifier::FailureKind::FailureToReach;
  const bool second_certifies = b.certified && b.controller == cfg.controllers[1].name() && b.from == a.from &&
                                b.to == a.to;
  const std::string out = temp_path("case2.strategy.json");
  {
    std::ofstream f(out, std::ios::binary);
    f << cli::dump_strategy(rep.strategy);
  }
  std::string report;
  const long sat = validated(cfg_path, out, kValidationSamples, report);
  o.pass = weak_fails && second_certifies && rep.result.verified && sat == static_cast<long>(kValidationSamples);
  o.detail = a.from + "->" + a.to + ": " + a.controller + " " + verifier::to_string(a.kind) + " at t=" +
             std::to_string(a.bad_t) + ", then " + b.controller + (b.certified ? " certified H=" + std::to_string(b.horizon) : " rejected") +
             "; " + std::to_string(sat) + "/" + std::to_string(kValidationSamples) + " validated";
  return o;
}

// ---------------------------------------------------------------------------

Outcome case_three() {
  const std::string out = temp_path("case3.strategy.json");
  std::ostringstream so, se;
  const int code = cli::cmd_verify(kScenarios + "/case3.json", out, std::nullopt, so, se);
  Outcome o;
  if (!std::filesystem::exists(out)) {
    o.detail = "exit " + std::to_string(code) + ", no strategy file: " + se.str();
    return o;
  }
  const json s = json::parse(read_file(out));
  const json* hit = nullptr;
  for (const auto& f : s["failure_log"])
    if (f["from"] == "q0" && f["to"] == "q1" && f["t"].is_number_integer()) {
      hit = &f;
      break;
    }
  o.pass = code == cli::kExitFailed && s["verified"] == false && hit != nullptr;
  o.detail = "exit " + std::to_string(code);
  if (hit)
    o.detail += ", q0->q1 rejected: " + (*hit)["controller"].get<std::string>() + " " +
                (*hit)["kind"].get<std::string>() + " at t=" + std::to_string((*hit)["t"].get<int>()) + " (avoid " +
                (*hit)["avoid"].dump() + ")";
  return o;
}

// ---------------------------------------------------------------------------

std::set<std::vector<std::string>> simple_paths(const automata::Dfa& d) {
  std::set<std::vector<std::string>> out;
  std::vector<std::string> path{d.name(d.initial)};
  std::vector<bool> on(static_cast<std::size_t>(d.num_states()), false);
  std::function<void(int)> rec = [&](int q) {
    if (q == d.final_state) {
      out.insert(path);
      return;
    }
    on[static_cast<std::size_t>(q)] = true;
    for (const auto& e : d.edges) {
      if (e.from != q || e.to == q || !d.is_live(e.to) || on[static_cast<std::size_t>(e.to)]) continue;
      path.push_back(d.name(e.to));
      rec(e.to);
      path.pop_back();
    }
    on[static_cast<std::size_t>(q)] = false;
  };
  rec(d.initial);
  return out;
}

// Checks in-degree and the path bijection. Returns an empty string on success.
std::string check_unfolding(const automata::PreprocessedDfa& p, std::size_t& paths) {
  if (p.simple_path_mode) return "simple-path mode";
  for (int r = 0; r < p.num_states(); ++r) {
    const auto in = p.in_edges[static_cast<std::size_t>(r)].size();
    if (in != (r == p.initial ? 0u : 1u)) return p.names[static_cast<std::size_t>(r)] + " has in-degree " + std::to_string(in);
  }
  std::vector<std::vector<std::string>> got;
  std::vector<std::string> path{p.source.name(p.origin[static_cast<std::size_t>(p.initial)])};
  std::function<void(int)> rec = [&](int r) {
    if (p.is_final(r)) {
      got.push_back(path);
      return;
    }
    for (int ei : p.out_edges[static_cast<std::size_t>(r)]) {
      const int to = p.edges[static_cast<std::size_t>(ei)].to;
      path.push_back(p.source.name(p.origin[static_cast<std::size_t>(to)]));
      rec(to);
      path.pop_back();
    }
  };
  rec(p.initial);
  const auto want = simple_paths(p.source);
  paths += got.size();
  if (got.size() != want.size() || std::set<std::vector<std::string>>(got.begin(), got.end()) != want)
    return "path sets differ (" + std::to_string(got.size()) + " vs " + std::to_string(want.size()) + ")";
  return "";
}

Outcome pruning() {
  const auto cfg = cli::load_config(kScenarios + "/case1.json");
  const auto a = cli::build_automata(cfg);
  Outcome o;
  const bool before = a.dfa.find_edge(a.dfa.initial, a.dfa.final_state) != nullptr;
  const bool after = a.pruned.find_edge(a.pruned.initial, a.pruned.final_state) != nullptr;
  std::size_t paths = 0;
  std::string problem = check_unfolding(a.preprocessed, paths);
  const std::size_t case_paths = paths;

  // The same properties on random DAG-shaped automata with self-loops.
  std::mt19937_64 rng(606);
  std::bernoulli_distribution coin(0.4);
  int dags = 0;
  for (int i = 0; i < 50 && problem.empty(); ++i) {
    automata::Dfa d;
    const int n = 3 + i % 8;
    d.atoms = {"a"};
    for (int k = 0; k < n; ++k) d.state_names.push_back(k == n - 1 ? "qF" : "s" + std::to_string(k));
    d.final_state = n - 1;
    for (int k = 0; k < n; ++k) {
      if (k % 2 == 0 || k == n - 1) d.edges.push_back({k, k, ltl::Formula::truth()});
      for (int j = k + 1; j < n && k != n - 1; ++j)
        if (j == k + 1 || coin(rng)) d.edges.push_back({k, j, ltl::Formula::truth()});
    }
    problem = check_unfolding(automata::preprocess_unique_paths(d), paths);
    ++dags;
  }
  o.pass = before && !after && problem.empty();
  o.detail = std::string("q0->qF ") + (before ? "present" : "absent") + " before pruning, " +
             (after ? "present" : "absent") + " after; case-study unfolding has " +
             std::to_string(a.preprocessed.num_states()) + " nodes and " + std::to_string(case_paths) +
             " paths; " + std::to_string(dags) + " random DAGs, " + std::to_string(paths) + " paths matched";
  if (!problem.empty()) o.detail += "; " + problem;
  return o;
}

// ---------------------------------------------------------------------------

Outcome refinement() {
  auto cfg = cli::load_config(kScenarios + "/case1.json");
  cfg.reach.split_depth = 1;
  const bool coarse = cli::run_verify(cfg).result.verified;
  cfg.reach.split_depth = 4;
  const bool fine = cli::run_verify(cfg).result.verified;

  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::vector<std::pair<int, int>> pairs{{1, 2}, {1, 3}, {2, 4}, {1, 4}};
  long comparisons = 0, grown = 0;
  for (int inst = 0; inst < kMonotoneInstances; ++inst) {
    const int d = 2 + inst % 2;
    const auto sys = oracle::random_plant(rng, d, 1, 0.7 + 0.3 * unit(rng));
    const auto net = oracle::random_net(rng, d, 1, 2, 8);
    const auto bounds = nn::ControlSchedule::constant({Eigen::VectorXd::Constant(1, -1), Eigen::VectorXd::Constant(1, 1)});
    const space::Box x0(Eigen::VectorXd::Constant(d, -0.5), Eigen::VectorXd::Constant(d, -0.5 + unit(rng)));
    for (bool merge : {true, false}) {
      for (const auto& [k1, k2] : pairs) {
        reach::ReachOptions a, b;
        a.split_depth = k1;
        b.split_depth = k2;
        a.merge = b.merge = merge;
        const auto sa = reach::reach_sequence(sys, {{x0}, 0, ""}, net, bounds, a, 8);
        const auto sb = reach::reach_sequence(sys, {{x0}, 0, ""}, net, bounds, b, 8);
        for (std::size_t t = 1; t < sa.size(); ++t) {
          ++comparisons;
          if (!sa[t].hull().inflated(kMonotoneTol).contains(sb[t].hull())) ++grown;
        }
      }
    }
  }
  Outcome o;
  o.pass = !coarse && fine && grown == 0;
  o.detail = std::string("case1 split 1: ") + (coarse ? "verified" : "not verified") + ", split 4: " +
             (fine ? "verified" : "not verified") + "; " + std::to_string(comparisons) + " nested comparisons, " +
             std::to_string(grown) + " grew";
  return o;
}

// ---------------------------------------------------------------------------

Outcome determinism() {
  std::vector<std::string> configs;
  for (const auto& e : std::filesystem::directory_iterator(kScenarios))
    if (e.path().extension() == ".json") configs.push_back(e.path().string());
  std::sort(configs.begin(), configs.end());
  int identical = 0;
  std::string differing;
  for (const auto& cfg : configs) {
    std::string runs[2], traces[2];
    for (int r = 0; r < 2; ++r) {
      const auto out = temp_path("det" + std::to_string(r) + ".json");
      const auto trace = temp_path("det" + std::to_string(r) + ".jsonl");
      std::filesystem::remove(out);
      std::ostringstream so, se;
      cli::cmd_verify(cfg, out, trace, so, se);
      runs[r] = read_file(out);
      traces[r] = read_file(trace);
    }
    if (!runs[0].empty() && runs[0] == runs[1] && traces[0] == traces[1]) ++identical;
    else differing += " " + std::filesystem::path(cfg).filename().string();
  }
  Outcome o;
  o.pass = !configs.empty() && identical == static_cast<int>(configs.size());
  o.detail = std::to_string(identical) + "/" + std::to_string(configs.size()) + " configs byte-identical";
  if (!differing.empty()) o.detail += "; differing:" + differing;
  return o;
}

}  // namespace

int main() {
  cli::init_logging();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> checks = {
      {"dfa acceptance equals finite-trace semantics", dfa_semantics},
      {"reachable sets contain sampled trajectories", reach_soundness},
      {"case I analog verifies and validates", case_one},
      {"case II analog rejects the weak controller", case_two},
      {"case III analog fails with a located violation", case_three},
      {"pruning and unique-path unfolding", pruning},
      {"input splitting refines monotonically", refinement},
      {"repeated runs are byte-identical", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    Outcome o;
    try {
      o = checks[i].second();
    } catch (const std::exception& e) {
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::cout << "[" << i + 1 << "] " << (o.pass ? "PASS" : "FAIL") << "  " << checks[i].first << ": " << o.detail
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
