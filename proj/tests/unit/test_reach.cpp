#include <doctest.h>

#include "nncomp/reach.hpp"
#include "oracle.hpp"

using namespace nncomp::reach;
using nncomp::nn::ControlSchedule;
using nncomp::nn::NnController;
using nncomp::sys::LtvSystem;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

NnController zero_net(int d, int n) {
  nncomp::nn::Layer l{MatrixXd::Zero(n, d), VectorXd::Zero(n), nncomp::nn::Activation::Linear};
  return NnController("z", {l});
}

ControlSchedule unit_bounds(int n) { return ControlSchedule::constant({VectorXd::Constant(n, -1), VectorXd::Constant(n, 1)}); }

Box unit_box(int d) { return Box(VectorXd::Zero(d), VectorXd::Ones(d)); }

}  // namespace

TEST_CASE("reach_step: examples") {
  const auto z = zero_net(2, 1);
  const auto b = unit_bounds(1);
  ReachOptions opts;

  const LtvSystem still = LtvSystem::lti(MatrixXd::Identity(2, 2), MatrixXd::Zero(2, 1), VectorXd::Zero(2));
  const ReachSet r0{{unit_box(2)}, 0, ""};
  CHECK(reach_step(still, r0, z, b, opts).boxes == std::vector<Box>{unit_box(2)});

  MatrixXd shear(2, 2);
  shear << 1, 1, 0, 1;
  const LtvSystem sh = LtvSystem::lti(shear, MatrixXd::Zero(2, 1), VectorXd::Zero(2));
  VectorXd hi(2);
  hi << 2, 1;
  const ReachSet r1 = reach_step(sh, r0, z, b, opts);
  CHECK(r1.boxes == std::vector<Box>{Box(VectorXd::Zero(2), hi)});
  CHECK(r1.t == 1);
  CHECK(r1.controller == "z");
}

TEST_CASE("reach_sequence: contraction halves the box") {
  const LtvSystem half = LtvSystem::lti(0.5 * MatrixXd::Identity(2, 2), MatrixXd::Zero(2, 1), VectorXd::Zero(2));
  ReachOptions opts;
  opts.horizon = 3;
  const ReachSet x0{{Box(VectorXd::Constant(2, -1), VectorXd::Constant(2, 1))}, 0, ""};
  const auto seq = reach_sequence(half, x0, zero_net(2, 1), unit_bounds(1), opts, 3);
  REQUIRE(seq.size() == 4);
  for (int k = 0; k <= 3; ++k) {
    const double r = std::ldexp(1.0, -k);
    CHECK(seq[static_cast<std::size_t>(k)].t == k);
    CHECK(seq[static_cast<std::size_t>(k)].hull() == Box(VectorXd::Constant(2, -r), VectorXd::Constant(2, r)));
  }
}

TEST_CASE("refine splits single boxes only") {
  ReachOptions opts;
  opts.split_depth = 3;
  const ReachSet one{{unit_box(2)}, 4, "c"};
  const ReachSet r = refine(one, opts);
  CHECK(r.boxes.size() == 9);
  CHECK(r.t == 4);
  const ReachSet two{{unit_box(2), unit_box(2)}, 0, ""};
  CHECK(refine(two, opts).boxes.size() == 2);
}

TEST_CASE("split images are contained in the unsplit image") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const LtvSystem s = oracle::random_plant(rng, 2, 1, 1.0);
    const NnController c = oracle::random_net(rng, 2, 1, 2, 8);
    const auto b = unit_bounds(1);
    const ReachSet x0{{Box(VectorXd::Constant(2, -0.5), VectorXd::Constant(2, 0.5))}, 0, ""};
    ReachOptions coarse, fine;
    coarse.merge = fine.merge = false;
    fine.split_depth = 2;
    const auto a = reach_sequence(s, x0, c, b, coarse, 1);
    const auto f = reach_sequence(s, x0, c, b, fine, 1);
    CHECK(a[1].hull().inflated(1e-12).contains(f[1].hull()));
  }
}

TEST_CASE("reach: sampled trajectories stay inside") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const LtvSystem s = oracle::random_plant(rng, 3, 2, 0.9);
    const NnController c = oracle::random_net(rng, 3, 2, 2, 10);
    const auto b = unit_bounds(2);
    ReachOptions opts;
    opts.split_depth = 1 + trial % 3;
    opts.merge = trial % 2 == 0;
    const Box start(VectorXd::Constant(3, -0.3), VectorXd::Constant(3, 0.2));
    const auto seq = reach_sequence(s, {{start}, 0, ""}, c, b, opts, 8);
    for (int i = 0; i < 10000; ++i) {
      oracle::Vec x = oracle::to_vec(nncomp::space::sample_box(start, rng));
      for (int t = 1; t <= 8; ++t) {
        x = oracle::closed_loop(s, t - 1, c, b, x);
        REQUIRE(oracle::in_boxes(seq[static_cast<std::size_t>(t)].boxes, x, 1e-9));
      }
    }
  }
}

TEST_CASE("reach: deterministic and lazily extended") {
  std::mt19937_64 rng(55);
  const LtvSystem s = oracle::random_plant(rng, 2, 1, 1.0);
  const NnController c = oracle::random_net(rng, 2, 1, 1, 6);
  const auto b = unit_bounds(1);
  ReachOptions opts;
  opts.split_depth = 3;
  opts.merge = false;
  const ReachSet x0{{unit_box(2)}, 2, ""};
  const auto a = reach_sequence(s, x0, c, b, opts, 6);
  const auto again = reach_sequence(s, x0, c, b, opts, 6);
  ReachStream stream(s, x0, c, b, opts);
  for (int k = 6; k >= 0; --k) {
    CHECK(a[static_cast<std::size_t>(k)].boxes == again[static_cast<std::size_t>(k)].boxes);
    CHECK(stream.at(k).boxes == a[static_cast<std::size_t>(k)].boxes);
  }
  CHECK(a[6].t == 8);
  CHECK(a[0].boxes.size() == 1);  // the entry set is returned unsplit
  CHECK(a[1].boxes.size() == 9);
}

TEST_CASE("reach: divergence and option validation") {
  const LtvSystem blow = LtvSystem::lti(10.0 * MatrixXd::Identity(1, 1), MatrixXd::Zero(1, 1), VectorXd::Zero(1));
  ReachOptions opts;
  opts.divergence_cap = 1e3;
  const ReachSet x0{{Box(VectorXd::Constant(1, 1), VectorXd::Constant(1, 2))}, 0, ""};
  try {
    reach_sequence(blow, x0, zero_net(1, 1), unit_bounds(1), opts, 10);
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(e.t() == 3);
  }
  ReachOptions bad;
  bad.split_depth = 0;
  CHECK_THROWS_AS(bad.validate(), nncomp::Error);
  bad = {};
  bad.horizon = 0;
  CHECK_THROWS_AS(bad.validate(), nncomp::Error);
}
