#include <cmath>

#include "nncomp/reach.hpp"

namespace nncomp::reach {

void ReachOptions::validate() const {
  if (split_depth < 1) throw Error("split_depth must be >= 1");
  if (horizon < 1) throw Error("horizon must be >= 1");
  if (!(epsilon >= 0.0)) throw Error("epsilon must be >= 0");
  if (!(divergence_cap > 0.0)) throw Error("divergence_cap must be > 0");
}

ReachSet refine(const ReachSet& rs, const ReachOptions& opts) {
  if (rs.boxes.size() != 1 || opts.split_depth == 1) return rs;
  ReachSet out{rs.boxes.front().split(opts.split_depth), rs.t, rs.controller};
  return out;
}

namespace {

Box image(const sys::AffineStep& s, const Box& x, const Box& u) {
  // Midpoint/radius form of interval matrix-vector products.
  const Eigen::VectorXd mid = s.A * x.center() + s.B * u.center() + s.c;
  const Eigen::VectorXd rad = s.A.cwiseAbs() * x.radius() + s.B.cwiseAbs() * u.radius();
  return Box(mid - rad, mid + rad);
}

void check_divergence(const Box& b, double cap, int t) {
  const double m = std::max(b.lo().cwiseAbs().maxCoeff(), b.hi().cwiseAbs().maxCoeff());
  if (!(m <= cap))
    throw DivergenceError("reachable set diverged at t=" + std::to_string(t) + " (|x| > " + std::to_string(cap) + ")",
                          t);
}

}  // namespace

ReachSet reach_step(const sys::LtvSystem& sys, const ReachSet& rs, const nn::NnController& c,
                    const nn::ControlSchedule& bounds, const ReachOptions& opts) {
  if (rs.boxes.empty()) throw Error("reach_step on an empty set");
  const auto& s = sys.at(rs.t);
  const auto& ub = bounds.at(rs.t);
  ReachSet out{{}, rs.t + 1, c.name()};
  out.boxes.reserve(rs.boxes.size());
  for (const auto& b : rs.boxes) {
    if (b.dim() != sys.state_dim()) throw DimensionError("reach set has the wrong dimension");
    out.boxes.push_back(image(s, b, nn::bound_output(c, b, ub)));
  }
  if (opts.merge && out.boxes.size() > 1) out.boxes = {out.hull()};
  for (const auto& b : out.boxes) check_divergence(b, opts.divergence_cap, out.t);
  return out;
}

ReachStream::ReachStream(const sys::LtvSystem& sys, const ReachSet& x0, const nn::NnController& c,
                         const nn::ControlSchedule& bounds, const ReachOptions& opts)
    : sys_(sys), c_(c), bounds_(bounds), opts_(opts), sets_{x0}, current_(refine(x0, opts)) {
  sets_.front().controller = c.name();
}

const ReachSet& ReachStream::at(int k) {
  if (k < 0) throw Error("negative reach step");
  while (static_cast<int>(sets_.size()) <= k) {
    current_ = reach_step(sys_, current_, c_, bounds_, opts_);
    sets_.push_back(current_);
  }
  return sets_[static_cast<std::size_t>(k)];
}

std::vector<ReachSet> reach_sequence(const sys::LtvSystem& sys, const ReachSet& x0, const nn::NnController& c,
                                     const nn::ControlSchedule& bounds, const ReachOptions& opts, int steps) {
  opts.validate();
  ReachStream stream(sys, x0, c, bounds, opts);
  stream.at(steps);
  return stream.computed();
}

}  // namespace nncomp::reach
