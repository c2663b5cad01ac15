#include <cmath>

#include "nncomp/space.hpp"

namespace nncomp::space {

Box::Box(VectorXd lo, VectorXd hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size()) throw DimensionError("box bounds have different sizes");
  for (Eigen::Index i = 0; i < lo_.size(); ++i) {
    if (!std::isfinite(lo_[i]) || !std::isfinite(hi_[i])) throw Error("box bound is not finite");
    if (lo_[i] > hi_[i]) throw Error("box has lo > hi on axis " + std::to_string(i));
  }
}

bool Box::contains(const VectorXd& x) const {
  if (x.size() != lo_.size()) throw DimensionError("point/box dimension mismatch");
  return (x.array() >= lo_.array()).all() && (x.array() <= hi_.array()).all();
}

bool Box::contains(const Box& b) const {
  if (b.dim() != dim()) throw DimensionError("box dimension mismatch");
  return (b.lo_.array() >= lo_.array()).all() && (b.hi_.array() <= hi_.array()).all();
}

bool Box::intersects(const Box& b) const {
  if (b.dim() != dim()) throw DimensionError("box dimension mismatch");
  return (b.lo_.array() <= hi_.array()).all() && (lo_.array() <= b.hi_.array()).all();
}

Box Box::inflated(double eps) const {
  return Box(lo_.array() - eps, hi_.array() + eps);
}

Box Box::hull(const Box& b) const {
  if (b.dim() != dim()) throw DimensionError("box dimension mismatch");
  return Box(lo_.cwiseMin(b.lo_), hi_.cwiseMax(b.hi_));
}

Box Box::project(const std::vector<int>& dims) const {
  VectorXd lo(static_cast<Eigen::Index>(dims.size()));
  VectorXd hi(lo.size());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 0 || dims[i] >= dim()) throw DimensionError("projection index out of range");
    lo[static_cast<Eigen::Index>(i)] = lo_[dims[i]];
    hi[static_cast<Eigen::Index>(i)] = hi_[dims[i]];
  }
  return Box(lo, hi);
}

std::vector<Box> Box::split(int k) const {
  if (k < 1) throw Error("split count must be >= 1");
  if (k == 1) return {*this};
  const int d = dim();
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(k);
  std::vector<Box> out;
  out.reserve(total);
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  const VectorXd width = hi_ - lo_;
  for (std::size_t n = 0; n < total; ++n) {
    VectorXd lo(d), hi(d);
    for (int i = 0; i < d; ++i) {
      const int j = idx[static_cast<std::size_t>(i)];
      lo[i] = lo_[i] + width[i] * j / k;
      // The last piece ends exactly at hi so the pieces cover the box.
      hi[i] = j + 1 == k ? hi_[i] : lo_[i] + width[i] * (j + 1) / k;
    }
    out.emplace_back(lo, hi);
    for (int i = d - 1; i >= 0; --i) {
      if (++idx[static_cast<std::size_t>(i)] < k) break;
      idx[static_cast<std::size_t>(i)] = 0;
    }
  }
  return out;
}

Box hull(const std::vector<Box>& boxes) {
  if (boxes.empty()) throw Error("hull of an empty union");
  Box out = boxes.front();
  for (std::size_t i = 1; i < boxes.size(); ++i) out = out.hull(boxes[i]);
  return out;
}

Verdict verdict_and(Verdict a, Verdict b) {
  if (a == Verdict::CertFalse || b == Verdict::CertFalse) return Verdict::CertFalse;
  if (a == Verdict::CertTrue && b == Verdict::CertTrue) return Verdict::CertTrue;
  return Verdict::Unknown;
}

Verdict verdict_or(Verdict a, Verdict b) {
  if (a == Verdict::CertTrue || b == Verdict::CertTrue) return Verdict::CertTrue;
  if (a == Verdict::CertFalse && b == Verdict::CertFalse) return Verdict::CertFalse;
  return Verdict::Unknown;
}

Verdict verdict_not(Verdict a) {
  switch (a) {
    case Verdict::CertTrue: return Verdict::CertFalse;
    case Verdict::CertFalse: return Verdict::CertTrue;
    case Verdict::Unknown: return Verdict::Unknown;
  }
  return Verdict::Unknown;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::CertTrue: return "true";
    case Verdict::CertFalse: return "false";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace nncomp::space
