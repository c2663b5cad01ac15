#pragma once

// Axis-aligned boxes, regions, the labeling function, and three-valued guard
// evaluation over sets of states. All sets are closed.

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nncomp/automata.hpp"
#include "nncomp/error.hpp"
#include "nncomp/ltl.hpp"

namespace nncomp::space {

using Eigen::MatrixXd;
using Eigen::VectorXd;

class Box {
 public:
  Box() = default;
  Box(VectorXd lo, VectorXd hi);  // throws unless lo <= hi, same size, finite
  static Box point(const VectorXd& x) { return Box(x, x); }

  int dim() const { return static_cast<int>(lo_.size()); }
  const VectorXd& lo() const { return lo_; }
  const VectorXd& hi() const { return hi_; }
  VectorXd center() const { return 0.5 * (lo_ + hi_); }
  VectorXd radius() const { return 0.5 * (hi_ - lo_); }

  bool contains(const VectorXd& x) const;
  bool contains(const Box& b) const;
  bool intersects(const Box& b) const;

  Box inflated(double eps) const;
  Box hull(const Box& b) const;
  // Coordinates listed in `dims`, in that order.
  Box project(const std::vector<int>& dims) const;
  // k equal pieces per axis, k^d boxes in lexicographic index order.
  std::vector<Box> split(int k) const;

  friend bool operator==(const Box& a, const Box& b) { return a.lo_ == b.lo_ && a.hi_ == b.hi_; }

 private:
  VectorXd lo_;
  VectorXd hi_;
};

Box hull(const std::vector<Box>& boxes);

enum class Verdict { CertTrue, CertFalse, Unknown };

Verdict verdict_and(Verdict a, Verdict b);
Verdict verdict_or(Verdict a, Verdict b);
Verdict verdict_not(Verdict a);
const char* to_string(Verdict v);

struct RegionMap {
  Box workspace;                     // full state dimension
  std::map<std::string, Box> regions;  // over label_dims
  std::vector<int> label_dims;

  // Checks dimensions and that regions lie in the workspace.
  void validate() const;
  const Box& region(const std::string& name) const;
};

std::set<std::string> label_point(const RegionMap& m, const VectorXd& x);

// `eps` inflates b before the test, which can only turn certain verdicts
// into Unknown.
Verdict atom_over_box(const RegionMap& m, const std::string& atom, const Box& b, double eps = 0.0);
Verdict guard_over_box(const RegionMap& m, const ltl::Formula& g, const Box& b, double eps = 0.0);
// Conjunction over a union: every piece must be certain.
Verdict guard_over_boxes(const RegionMap& m, const ltl::Formula& g, const std::vector<Box>& bs, double eps = 0.0);

automata::DisjointPairs disjoint_pairs(const RegionMap& m);

// {x : (x - c)^T S^{-1} (x - c) <= 1}
struct Ellipsoid {
  VectorXd center;
  MatrixXd shape;
};

// Throws unless the shape is symmetric positive definite.
void check_ellipsoid(const Ellipsoid& e);
Box ellipsoid_to_box(const Ellipsoid& e);
bool ellipsoid_contains(const Ellipsoid& e, const VectorXd& x, double tol = 1e-12);

VectorXd sample_box(const Box& b, std::mt19937_64& rng);
VectorXd sample_ellipsoid(const Ellipsoid& e, std::mt19937_64& rng);

}  // namespace nncomp::space
