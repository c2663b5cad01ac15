#include <algorithm>
#include <fstream>

#include "nncomp/nn.hpp"

namespace nncomp::nn {

using nlohmann::json;

NnController::NnController(std::string name, std::vector<Layer> layers)
    : name_(std::move(name)), layers_(std::move(layers)) {
  if (name_.empty()) throw Error("controller name is empty");
  if (layers_.empty()) throw Error("controller '" + name_ + "' has no layers");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const Layer& l = layers_[i];
    const std::string where = "controller '" + name_ + "' layer " + std::to_string(i);
    if (l.weights.rows() == 0 || l.weights.cols() == 0) throw DimensionError(where + ": empty weight matrix");
    if (l.bias.size() != l.weights.rows()) throw DimensionError(where + ": bias size does not match weights");
    if (i > 0 && l.weights.cols() != layers_[i - 1].weights.rows())
      throw DimensionError(where + ": input size does not match the previous layer");
    if (!l.weights.allFinite() || !l.bias.allFinite()) throw Error(where + ": non-finite parameter");
  }
  if (layers_.back().activation != Activation::Linear)
    throw Error("controller '" + name_ + "': output layer must be linear");
}

namespace {

MatrixXd matrix_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw Error(what + " must be a nonempty 2-D array");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw DimensionError(what + " is ragged");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) throw Error(what + " has a non-numeric entry");
      m(r, c) = v.get<double>();
    }
  }
  return m;
}

VectorXd vector_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw Error(what + " must be an array");
  VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(what + " has a non-numeric entry");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

}  // namespace

NnController controller_from_json(const json& j) {
  if (!j.is_object()) throw Error("controller must be a JSON object");
  const std::string name = j.value("name", "");
  if (!j.contains("layers") || !j["layers"].is_array()) throw Error("controller '" + name + "' has no layer list");
  std::vector<Layer> layers;
  for (const auto& lj : j["layers"]) {
    Layer l;
    l.weights = matrix_from_json(lj.at("weights"), "weights");
    l.bias = vector_from_json(lj.at("bias"), "bias");
    const std::string act = lj.value("activation", "");
    if (act == "relu") l.activation = Activation::Relu;
    else if (act == "linear") l.activation = Activation::Linear;
    else throw Error("unsupported activation '" + act + "'");
    layers.push_back(std::move(l));
  }
  NnController c(name, std::move(layers));
  if (j.contains("input_dim") && j["input_dim"].get<int>() != c.input_dim())
    throw DimensionError("controller '" + name + "': input_dim does not match the first layer");
  if (j.contains("output_dim") && j["output_dim"].get<int>() != c.output_dim())
    throw DimensionError("controller '" + name + "': output_dim does not match the last layer");
  return c;
}

json controller_to_json(const NnController& c) {
  json layers = json::array();
  for (const auto& l : c.layers()) {
    json w = json::array();
    for (Eigen::Index r = 0; r < l.weights.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index k = 0; k < l.weights.cols(); ++k) row.push_back(l.weights(r, k));
      w.push_back(row);
    }
    json b = json::array();
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) b.push_back(l.bias[r]);
    layers.push_back({{"weights", w}, {"bias", b}, {"activation", l.activation == Activation::Relu ? "relu" : "linear"}});
  }
  return {{"name", c.name()}, {"input_dim", c.input_dim()}, {"output_dim", c.output_dim()}, {"layers", layers}};
}

NnController load_controller(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open controller file '" + path + "'");
  json j;
  try {
    // NaN is not valid JSON, so a file containing it fails here.
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error("malformed controller file '" + path + "': " + e.what());
  }
  try {
    return controller_from_json(j);
  } catch (const json::exception& e) {
    throw Error("malformed controller file '" + path + "': " + e.what());
  }
}

const NnController& find_controller(const std::vector<NnController>& cs, const std::string& name) {
  for (const auto& c : cs)
    if (c.name() == name) return c;
  throw Error("unknown controller '" + name + "'");
}

VectorXd eval(const NnController& c, const VectorXd& x) {
  if (x.size() != c.input_dim()) throw DimensionError("controller input has the wrong dimension");
  VectorXd h = x;
  for (const auto& l : c.layers()) {
    h = l.weights * h + l.bias;
    if (l.activation == Activation::Relu) h = h.cwiseMax(0.0);
  }
  return h;
}

const ControlBounds& ControlSchedule::at(int t) const {
  if (steps.empty()) throw Error("empty control schedule");
  if (t < 0) throw Error("negative time index");
  return steps[std::min(static_cast<std::size_t>(t), steps.size() - 1)];
}

void ControlSchedule::validate(int n) const {
  if (steps.empty()) throw Error("empty control schedule");
  for (const auto& b : steps) {
    if (b.lo.size() != n || b.hi.size() != n) throw DimensionError("control bounds have the wrong dimension");
    if ((b.lo.array() > b.hi.array()).any()) throw Error("control bounds have lo > hi");
  }
}

VectorXd project(const VectorXd& u, const ControlBounds& b) {
  if (u.size() != b.lo.size() || u.size() != b.hi.size()) throw DimensionError("control/bounds dimension mismatch");
  return u.cwiseMax(b.lo).cwiseMin(b.hi);
}

space::Box bound_output(const NnController& c, const space::Box& b_in, const ControlBounds& bounds) {
  if (b_in.dim() != c.input_dim()) throw DimensionError("controller input box has the wrong dimension");
  VectorXd lo = b_in.lo();
  VectorXd hi = b_in.hi();
  for (const auto& l : c.layers()) {
    const MatrixXd pos = l.weights.cwiseMax(0.0);
    const MatrixXd neg = l.weights.cwiseMin(0.0);
    VectorXd nlo = pos * lo + neg * hi + l.bias;
    VectorXd nhi = pos * hi + neg * lo + l.bias;
    if (l.activation == Activation::Relu) {
      nlo = nlo.cwiseMax(0.0);
      nhi = nhi.cwiseMax(0.0);
    }
    lo = std::move(nlo);
    hi = std::move(nhi);
  }
  // Clamping is monotone, so clamping both ends bounds the projected image.
  return space::Box(project(lo, bounds), project(hi, bounds));
}

}  // namespace nncomp::nn
