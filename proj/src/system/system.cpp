#include <algorithm>

#include "nncomp/system.hpp"

namespace nncomp::sys {

LtvSystem::LtvSystem(std::vector<AffineStep> schedule) : schedule_(std::move(schedule)) {
  if (schedule_.empty()) throw Error("system schedule is empty");
  const auto d = schedule_.front().A.rows();
  const auto n = schedule_.front().B.cols();
  if (d == 0) throw DimensionError("system has state dimension 0");
  for (std::size_t i = 0; i < schedule_.size(); ++i) {
    const auto& s = schedule_[i];
    const std::string where = "system entry " + std::to_string(i);
    if (s.A.rows() != d || s.A.cols() != d) throw DimensionError(where + ": A must be square of the state dimension");
    if (s.B.rows() != d || s.B.cols() != n) throw DimensionError(where + ": B has the wrong shape");
    if (s.c.size() != d) throw DimensionError(where + ": c has the wrong size");
    if (!s.A.allFinite() || !s.B.allFinite() || !s.c.allFinite()) throw Error(where + ": non-finite entry");
  }
}

LtvSystem LtvSystem::lti(MatrixXd A, MatrixXd B, VectorXd c) {
  return LtvSystem({AffineStep{std::move(A), std::move(B), std::move(c)}});
}

const AffineStep& LtvSystem::at(int t) const {
  if (t < 0) throw Error("negative time index");
  return schedule_[std::min(static_cast<std::size_t>(t), schedule_.size() - 1)];
}

VectorXd step(const LtvSystem& sys, int t, const VectorXd& x, const VectorXd& u) {
  const auto& s = sys.at(t);
  if (x.size() != s.A.cols()) throw DimensionError("state has the wrong dimension");
  if (u.size() != s.B.cols()) throw DimensionError("control has the wrong dimension");
  return s.A * x + s.B * u + s.c;
}

int Strategy::total_horizon() const {
  int total = 0;
  for (const auto& s : steps) total += s.horizon;
  return total;
}

Trace simulate(const LtvSystem& sys, const std::vector<nn::NnController>& controllers, const Strategy& strategy,
               const nn::ControlSchedule& bounds, const VectorXd& x0) {
  Trace tr;
  tr.states.push_back(x0);
  int t = 0;
  for (const auto& s : strategy.steps) {
    if (s.horizon < 0) throw Error("negative horizon in strategy");
    const auto& c = nn::find_controller(controllers, s.controller);
    for (int k = 0; k < s.horizon; ++k, ++t) {
      const VectorXd u = nn::project(nn::eval(c, tr.states.back()), bounds.at(t));
      tr.states.push_back(step(sys, t, tr.states.back(), u));
      tr.controls.push_back(u);
      tr.controller_ids.push_back(s.controller);
    }
  }
  return tr;
}

}  // namespace nncomp::sys
