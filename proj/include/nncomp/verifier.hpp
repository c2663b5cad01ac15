#pragma once

// Edge certification by reach-avoid checks over reachable sets, and the
// depth-first search that chains certified edges from the initial DFA state
// to the accepting one.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nncomp/automata.hpp"
#include "nncomp/reach.hpp"
#include "nncomp/space.hpp"
#include "nncomp/system.hpp"

namespace nncomp::verifier {

using reach::ReachSet;
using space::Verdict;

// Controllers named after regions that occur unnegated in the NNF of the
// guard, in declaration order.
std::vector<std::string> controllers_for_edge(const ltl::Formula& guard,
                                              const std::vector<nn::NnController>& controllers);

struct Problem {
  const sys::LtvSystem& system;
  const std::vector<nn::NnController>& controllers;
  const nn::ControlSchedule& bounds;
  const space::RegionMap& regions;
  reach::ReachOptions reach;
};

struct EdgeQuery {
  std::string from;
  std::string to;
  ltl::Formula target;                     // guard of the edge
  std::optional<ltl::Formula> self_loop;   // guard of the source self-loop
  ReachSet entry;                          // global time in entry.t
  // The symbol at entry.t was already read by the edge into the source
  // state, so the first check is one step later.
  bool entry_consumed = false;
};

enum class FailureKind { AvoidViolation, FailureToReach, NoControllers, Divergence };
const char* to_string(FailureKind k);

// One verdict pair per checked step of an attempt.
struct StepRecord {
  int t = 0;  // global time
  std::vector<space::Box> boxes;
  Verdict reach = Verdict::Unknown;
  std::optional<Verdict> avoid;  // absent when the target already holds
};

struct EdgeAttempt {
  std::string from;
  std::string to;
  std::string controller;  // empty for NoControllers
  bool certified = false;
  int horizon = -1;        // when certified
  FailureKind kind = FailureKind::FailureToReach;
  int bad_t = -1;          // global time of the first failing check
  Verdict reach_verdict = Verdict::Unknown;
  std::optional<Verdict> avoid_verdict;
  std::string message;
  std::vector<StepRecord> steps;
};

struct EdgeCertificate {
  std::string from;
  std::string to;
  std::string controller;
  int horizon = 0;
  ReachSet entry;
  ReachSet exit;
};

struct EdgeResult {
  std::vector<EdgeAttempt> attempts;
  std::vector<EdgeCertificate> certificates;  // at most one unless all requested
};

EdgeResult verify_edge(const Problem& p, const EdgeQuery& q, const std::vector<std::string>& candidates,
                       bool all_certificates = false);

struct SearchOptions {
  bool try_all_controllers = false;
  bool shuffle = false;
  std::uint64_t seed = 0;
};

struct VerifierResult {
  bool verified = false;
  sys::Strategy strategy;
  std::vector<EdgeCertificate> certificates;
  std::vector<EdgeAttempt> log;  // every attempt, in search order
};

VerifierResult reach_dfs(const automata::PreprocessedDfa& d, const Problem& p, const ReachSet& x0,
                         const SearchOptions& opts = {});

}  // namespace nncomp::verifier
