#include <cmath>

#include "nncomp/space.hpp"

namespace nncomp::space {

void RegionMap::validate() const {
  const int d = workspace.dim();
  if (d == 0) throw DimensionError("workspace has dimension 0");
  for (int i : label_dims)
    if (i < 0 || i >= d) throw DimensionError("label dimension " + std::to_string(i) + " out of range");
  const Box ws = workspace.project(label_dims);
  for (const auto& [name, box] : regions) {
    if (box.dim() != static_cast<int>(label_dims.size()))
      throw DimensionError("region '" + name + "' has the wrong dimension");
    if (!ws.contains(box)) throw Error("region '" + name + "' is not inside the workspace");
  }
}

const Box& RegionMap::region(const std::string& name) const {
  auto it = regions.find(name);
  if (it == regions.end()) throw Error("unknown region '" + name + "'");
  return it->second;
}

std::set<std::string> label_point(const RegionMap& m, const VectorXd& x) {
  if (x.size() != m.workspace.dim()) throw DimensionError("state has the wrong dimension for labeling");
  const Box p = Box::point(x).project(m.label_dims);
  std::set<std::string> out;
  for (const auto& [name, box] : m.regions)
    if (box.contains(p)) out.insert(name);
  return out;
}

Verdict atom_over_box(const RegionMap& m, const std::string& atom, const Box& b, double eps) {
  const Box& region = m.region(atom);
  const Box p = b.project(m.label_dims).inflated(eps);
  if (region.contains(p)) return Verdict::CertTrue;
  if (!region.intersects(p)) return Verdict::CertFalse;
  return Verdict::Unknown;
}

Verdict guard_over_box(const RegionMap& m, const ltl::Formula& g, const Box& b, double eps) {
  using ltl::Op;
  switch (g.op()) {
    case Op::True:
      return Verdict::CertTrue;
    case Op::Atom:
      return atom_over_box(m, g.name(), b, eps);
    case Op::Not:
      return verdict_not(guard_over_box(m, g.operand(), b, eps));
    case Op::And: {
      const Verdict a = guard_over_box(m, g.lhs(), b, eps);
      if (a == Verdict::CertFalse) return a;
      return verdict_and(a, guard_over_box(m, g.rhs(), b, eps));
    }
    case Op::Or: {
      const Verdict a = guard_over_box(m, g.lhs(), b, eps);
      if (a == Verdict::CertTrue) return a;
      return verdict_or(a, guard_over_box(m, g.rhs(), b, eps));
    }
    case Op::Next:
    case Op::Until:
    case Op::Eventually:
      break;
  }
  throw Error("guard contains a temporal operator: " + ltl::to_string(g));
}

Verdict guard_over_boxes(const RegionMap& m, const ltl::Formula& g, const std::vector<Box>& bs, double eps) {
  if (bs.empty()) throw Error("guard evaluated over an empty union");
  bool all_true = true;
  bool all_false = true;
  for (const auto& b : bs) {
    const Verdict v = guard_over_box(m, g, b, eps);
    all_true = all_true && v == Verdict::CertTrue;
    all_false = all_false && v == Verdict::CertFalse;
    if (!all_true && !all_false) return Verdict::Unknown;
  }
  return all_true ? Verdict::CertTrue : Verdict::CertFalse;
}

automata::DisjointPairs disjoint_pairs(const RegionMap& m) {
  automata::DisjointPairs out;
  for (auto a = m.regions.begin(); a != m.regions.end(); ++a)
    for (auto b = std::next(a); b != m.regions.end(); ++b)
      if (!a->second.intersects(b->second)) out.emplace(a->first, b->first);
  return out;
}

void check_ellipsoid(const Ellipsoid& e) {
  const auto d = e.center.size();
  if (e.shape.rows() != d || e.shape.cols() != d) throw DimensionError("ellipsoid shape has the wrong size");
  if (!e.center.allFinite() || !e.shape.allFinite()) throw Error("ellipsoid has non-finite entries");
  if (!e.shape.isApprox(e.shape.transpose(), 1e-12)) throw Error("ellipsoid shape is not symmetric");
  Eigen::LLT<MatrixXd> llt(e.shape);
  if (llt.info() != Eigen::Success) throw Error("ellipsoid shape is not positive definite");
}

Box ellipsoid_to_box(const Ellipsoid& e) {
  check_ellipsoid(e);
  const VectorXd half = e.shape.diagonal().cwiseSqrt();
  return Box(e.center - half, e.center + half);
}

bool ellipsoid_contains(const Ellipsoid& e, const VectorXd& x, double tol) {
  const VectorXd v = x - e.center;
  return v.dot(e.shape.llt().solve(v)) <= 1.0 + tol;
}

VectorXd sample_box(const Box& b, std::mt19937_64& rng) {
  VectorXd x(b.dim());
  for (int i = 0; i < b.dim(); ++i) {
    std::uniform_real_distribution<double> u(b.lo()[i], b.hi()[i]);
    x[i] = b.lo()[i] == b.hi()[i] ? b.lo()[i] : u(rng);
  }
  return x;
}

VectorXd sample_ellipsoid(const Ellipsoid& e, std::mt19937_64& rng) {
  const auto d = e.center.size();
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  VectorXd u(d);
  double norm = 0.0;
  do {
    for (Eigen::Index i = 0; i < d; ++i) u[i] = gauss(rng);
    norm = u.norm();
  } while (norm == 0.0);
  // Uniform in the unit ball, then mapped through the Cholesky factor.
  u *= std::pow(unit(rng), 1.0 / static_cast<double>(d)) / norm;
  const MatrixXd L = e.shape.llt().matrixL();
  return e.center + L * u;
}

}  // namespace nncomp::space
