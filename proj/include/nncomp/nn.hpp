#pragma once

// Feedforward affine+ReLU controllers, the input projection onto U_t, and
// interval bound propagation.

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "nncomp/space.hpp"

namespace nncomp::nn {

using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class Activation { Relu, Linear };

struct Layer {
  MatrixXd weights;  // out x in
  VectorXd bias;
  Activation activation = Activation::Linear;
};

class NnController {
 public:
  // Validates the dimension chain, finiteness, and a linear output layer.
  NnController(std::string name, std::vector<Layer> layers);

  const std::string& name() const { return name_; }
  const std::vector<Layer>& layers() const { return layers_; }
  int input_dim() const { return static_cast<int>(layers_.front().weights.cols()); }
  int output_dim() const { return static_cast<int>(layers_.back().weights.rows()); }

 private:
  std::string name_;
  std::vector<Layer> layers_;
};

NnController controller_from_json(const nlohmann::json& j);
nlohmann::json controller_to_json(const NnController& c);
NnController load_controller(const std::string& path);

const NnController& find_controller(const std::vector<NnController>& cs, const std::string& name);

VectorXd eval(const NnController& c, const VectorXd& x);

struct ControlBounds {
  VectorXd lo;
  VectorXd hi;
};

// U_t indexed by global time; the last entry holds forever.
struct ControlSchedule {
  std::vector<ControlBounds> steps;

  static ControlSchedule constant(ControlBounds b) { return {{std::move(b)}}; }
  const ControlBounds& at(int t) const;
  void validate(int n) const;
};

VectorXd project(const VectorXd& u, const ControlBounds& b);

// Interval image of b_in through the network, clipped to the bounds.
space::Box bound_output(const NnController& c, const space::Box& b_in, const ControlBounds& bounds);

}  // namespace nncomp::nn
