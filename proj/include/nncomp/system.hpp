#pragma once

// Discrete-time linear time-varying plant x_{t+1} = A_t x_t + B_t u_t + c_t
// and closed-loop simulation under a controller strategy.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nncomp/nn.hpp"

namespace nncomp::sys {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct AffineStep {
  MatrixXd A;
  MatrixXd B;
  VectorXd c;
};

class LtvSystem {
 public:
  // Entry t applies at global time t; the last entry repeats.
  explicit LtvSystem(std::vector<AffineStep> schedule);
  static LtvSystem lti(MatrixXd A, MatrixXd B, VectorXd c);

  int state_dim() const { return static_cast<int>(schedule_.front().A.rows()); }
  int input_dim() const { return static_cast<int>(schedule_.front().B.cols()); }
  const AffineStep& at(int t) const;
  const std::vector<AffineStep>& schedule() const { return schedule_; }

 private:
  std::vector<AffineStep> schedule_;
};

VectorXd step(const LtvSystem& sys, int t, const VectorXd& x, const VectorXd& u);

struct StrategyStep {
  std::string controller;
  int horizon = 0;
};

struct Strategy {
  std::vector<StrategyStep> steps;
  int total_horizon() const;
};

struct Trace {
  std::vector<VectorXd> states;    // x_0 .. x_F
  std::vector<VectorXd> controls;  // u_0 .. u_{F-1}
  std::vector<std::string> controller_ids;
};

Trace simulate(const LtvSystem& sys, const std::vector<nn::NnController>& controllers, const Strategy& strategy,
               const nn::ControlSchedule& bounds, const VectorXd& x0);

}  // namespace nncomp::sys
