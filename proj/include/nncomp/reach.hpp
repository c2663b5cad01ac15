#pragma once

// Over-approximate forward reachable sets of the closed loop, represented as
// unions of boxes.

#include <string>
#include <vector>

#include "nncomp/nn.hpp"
#include "nncomp/space.hpp"
#include "nncomp/system.hpp"

namespace nncomp::reach {

using space::Box;

struct ReachOptions {
  int split_depth = 1;  // pieces per axis when the entry set is a single box
  bool merge = true;    // replace each step's union by its hull
  int horizon = 50;     // H-bar
  double epsilon = 1e-9;
  double divergence_cap = 1e6;

  void validate() const;
};

struct ReachSet {
  std::vector<Box> boxes;
  int t = 0;  // global time
  std::string controller;

  Box hull() const { return space::hull(boxes); }
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, int t) : Error(what), t_(t) {}
  int t() const noexcept { return t_; }

 private:
  int t_;
};

// Splits a single-box set into split_depth^d pieces; unions pass through.
ReachSet refine(const ReachSet& rs, const ReachOptions& opts);

// One closed-loop step from rs.t to rs.t + 1. Does not split.
ReachSet reach_step(const sys::LtvSystem& sys, const ReachSet& rs, const nn::NnController& c,
                    const nn::ControlSchedule& bounds, const ReachOptions& opts);

// [R_0 = x0, R_1, ..., R_steps]; R_0 is returned unsplit, later sets come
// from the refined entry set.
std::vector<ReachSet> reach_sequence(const sys::LtvSystem& sys, const ReachSet& x0, const nn::NnController& c,
                                     const nn::ControlSchedule& bounds, const ReachOptions& opts, int steps);

// Lazily extended sequence, for callers that stop early.
class ReachStream {
 public:
  ReachStream(const sys::LtvSystem& sys, const ReachSet& x0, const nn::NnController& c,
              const nn::ControlSchedule& bounds, const ReachOptions& opts);

  // Set k steps after the start (k = 0 is the entry set itself).
  const ReachSet& at(int k);
  const std::vector<ReachSet>& computed() const { return sets_; }

 private:
  const sys::LtvSystem& sys_;
  const nn::NnController& c_;
  const nn::ControlSchedule& bounds_;
  ReachOptions opts_;
  std::vector<ReachSet> sets_;
  ReachSet current_;  // refined version of the last set
};

}  // namespace nncomp::reach
