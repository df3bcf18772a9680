#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "gmeb/data_gen.hpp"
#include "gmeb/geometry.hpp"
#include "gmeb/solver.hpp"
#include "support/fixtures.hpp"

using namespace gmeb;
using gmeb::tests::random_basis_of;

TEST_CASE("ball samples land at the requested distance") {
  RngStream rng(101);
  const Basis center = random_basis_of(7, 3, rng);

  SUBCASE("vanishing radius reproduces the center") {
    RngStream local(1);
    for (const Basis& x : sample_ball(center, 1e-12, BallRegion::kBoundary, 5, local)) {
      CHECK(p2s_distance(center, x) <= 1e-10);
    }
  }

  SUBCASE("boundary samples sit exactly on the sphere") {
    RngStream local(2);
    for (const Basis& x : sample_ball(center, 0.7, BallRegion::kBoundary, 20, local)) {
      CHECK(std::abs(p2s_distance(center, x) - 0.7) <= 1e-8);
    }
  }

  SUBCASE("interior samples stay inside") {
    RngStream local(3);
    for (const Basis& x : sample_ball(center, 0.7, BallRegion::kInterior, 20, local)) {
      CHECK(p2s_distance(center, x) <= 0.7 + 1e-10);
    }
  }
}

TEST_CASE("a line can be pushed to the full quarter turn") {
  RngStream rng(103);
  const Basis center = random_basis_of(3, 1, rng);
  RngStream local(4);
  for (const Basis& x : sample_ball(center, 1.0, BallRegion::kBoundary, 10, local)) {
    CHECK(std::abs(p2s_distance(center, x) - 1.0) <= 1e-8);
  }
}

TEST_CASE("radius above the dimension cap is rejected") {
  RngStream rng(107);
  const Basis center = random_basis_of(6, 2, rng);
  RngStream local(5);
  CHECK_THROWS_AS(sample_ball(center, 2.5, BallRegion::kBoundary, 1, local), RadiusTooLarge);
}

TEST_CASE("sampling is deterministic in the seed") {
  DatasetSpec spec;
  spec.model = DataModel::kNestedBall;
  spec.n = 10;
  spec.k0 = 3;
  spec.eps1 = 1.0;
  spec.eps2 = 0.125;
  spec.m1 = 8;
  spec.m2 = 4;
  spec.m3 = 2;
  spec.seed = 20260809;

  const Dataset a = nested_ball_dataset(spec);
  const Dataset b = nested_ball_dataset(spec);
  REQUIRE(a.collection.size() == b.collection.size());
  for (int i = 0; i < a.collection.size(); ++i) {
    CHECK((a.collection[i].matrix() - b.collection[i].matrix()).cwiseAbs().maxCoeff() == 0.0);
  }

  spec.seed = 20260810;
  const Dataset c = nested_ball_dataset(spec);
  CHECK((a.collection[0].matrix() - c.collection[0].matrix()).cwiseAbs().maxCoeff() > 1e-8);
}

TEST_CASE("nested ball: boundary residency and containment") {
  DatasetSpec spec;
  spec.model = DataModel::kNestedBall;
  spec.n = 10;
  spec.k0 = 3;
  spec.eps1 = 1.0;
  spec.eps2 = 0.125;
  spec.m1 = 70;
  spec.m2 = 30;
  spec.seed = 7;

  const Dataset data = nested_ball_dataset(spec);
  REQUIRE(data.truth_center.has_value());
  REQUIRE(data.cores.size() == 100);
  for (std::size_t i = 0; i < data.cores.size(); ++i) {
    const double d = p2s_distance(*data.truth_center, data.cores[i]);
    if (data.provenance[i] == Provenance::kLargeBoundary) {
      CHECK(std::abs(d - spec.eps1) <= 1e-8);
    } else {
      CHECK(d <= spec.eps1 + 1e-8);  // the inner ball is strictly contained
    }
  }
  REQUIRE(data.small_center.has_value());
  for (std::size_t i = 0; i < data.cores.size(); ++i) {
    if (data.provenance[i] == Provenance::kSmallBall) {
      CHECK(std::abs(p2s_distance(*data.small_center, data.cores[i]) - spec.eps2) <= 1e-8);
    }
  }
}

TEST_CASE("infeasible nested-ball radii are rejected") {
  DatasetSpec spec;
  spec.model = DataModel::kNestedBall;
  spec.n = 8;
  spec.k0 = 2;
  spec.m1 = 2;
  spec.m2 = 2;
  spec.eps1 = 0.5;
  spec.eps2 = 0.5;
  CHECK_THROWS_AS(nested_ball_dataset(spec), InfeasiblePlacement);
  spec.eps2 = 0.6;
  CHECK_THROWS_AS(nested_ball_dataset(spec), InfeasiblePlacement);
  // Headroom too small: the offset cannot clear the inner radius.
  spec.eps1 = 1.0;
  spec.eps2 = 0.49;
  CHECK_THROWS_AS(nested_ball_dataset(spec), InfeasiblePlacement);
}

TEST_CASE("solver recovers the planted center of a pure boundary cloud") {
  DatasetSpec spec;
  spec.model = DataModel::kNestedBall;
  spec.n = 5;
  spec.k0 = 2;
  spec.eps1 = 0.5;
  spec.eps2 = 0.1;
  spec.m1 = 150;
  spec.m2 = 0;
  spec.seed = 99;

  const Dataset data = nested_ball_dataset(spec);
  const SolverResult r = solve(data.collection, 2);
  CHECK(p2s_distance(r.center, *data.truth_center) <= 1e-3);
  CHECK(r.duality_gap <= 1e-6);
}

TEST_CASE("mixed-manifold nested ball keeps the large-ball order") {
  DatasetSpec spec;
  spec.model = DataModel::kNestedBall;
  spec.n = 30;
  spec.k0 = 4;
  spec.k2 = 6;
  spec.eps1 = 1.0;
  spec.eps2 = 0.5;
  spec.m1 = 6;
  spec.m2 = 6;
  spec.seed = 11;

  const Dataset data = nested_ball_dataset(spec);
  CHECK(data.truth_k == 4);
  for (int i = 0; i < data.collection.size(); ++i) {
    const int expected = data.provenance[static_cast<std::size_t>(i)] == Provenance::kSmallBall
                             ? 6
                             : 4;
    CHECK(data.collection[i].p() == expected);
    CHECK(p2s_distance(*data.truth_center, data.cores[static_cast<std::size_t>(i)]) <=
          spec.eps1 + 1e-8);
  }
}

TEST_CASE("arc samples stay on the boundary") {
  DatasetSpec spec;
  spec.model = DataModel::kArc;
  spec.n = 15;
  spec.k0 = 3;
  spec.eps1 = 1.0;
  spec.m1 = 10;
  spec.m2 = 25;
  spec.m3 = 5;
  spec.seed = 13;

  const Dataset data = arc_dataset(spec);
  int arcs = 0;
  for (std::size_t i = 0; i < data.cores.size(); ++i) {
    const double d = p2s_distance(*data.truth_center, data.cores[i]);
    switch (data.provenance[i]) {
      case Provenance::kArcBoundary:
        ++arcs;
        [[fallthrough]];
      case Provenance::kLargeBoundary:
        CHECK(std::abs(d - spec.eps1) <= 1e-8);
        break;
      default:
        CHECK(d <= spec.eps1 + 1e-10);
    }
  }
  CHECK(arcs == 25);

  spec.m2 = 0;
  const Dataset plain = arc_dataset(spec);
  for (Provenance p : plain.provenance) CHECK(p != Provenance::kArcBoundary);
}

TEST_CASE("completion preserves the core and its distances") {
  RngStream rng(109);
  const Basis core = random_basis_of(12, 3, rng);

  SUBCASE("widening to the same dimension is the identity") {
    RngStream local(1);
    const Basis same = complete_basis(core, 3, nullptr, local);
    CHECK((same.matrix() - core.matrix()).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("free completion contains the core") {
    RngStream local(2);
    const Basis wide = complete_basis(core, 7, nullptr, local);
    REQUIRE(wide.p() == 7);
    CHECK((wide.matrix().transpose() * core.matrix()).squaredNorm() ==
          doctest::Approx(3.0).epsilon(1e-10));
  }

  SUBCASE("completion cannot shrink or overflow") {
    RngStream local(3);
    CHECK_THROWS_AS(complete_basis(core, 2, nullptr, local), DimensionMismatch);
    CHECK_THROWS_AS(complete_basis(core, 13, nullptr, local), DimensionMismatch);
  }
}

TEST_CASE("orthogonal completion keeps items distant from the truth") {
  DatasetSpec spec;
  spec.model = DataModel::kNestedBall;
  spec.n = 40;
  spec.k0 = 3;
  spec.eps1 = 0.8;
  spec.eps2 = 0.1;
  spec.m1 = 4;
  spec.m2 = 2;
  spec.dims = {3, 4, 5};
  spec.orthogonal_completion = true;
  spec.seed = 17;

  const Dataset data = nested_ball_dataset(spec);
  for (std::size_t i = 0; i < data.cores.size(); ++i) {
    const double before = p2s_distance(*data.truth_center, data.cores[i]);
    const double after = p2s_distance(*data.truth_center, data.pre_noise[i]);
    CHECK(std::abs(before - after) <= 1e-8);
  }

  // Added directions are mutually orthogonal across items.
  for (std::size_t i = 0; i < data.pre_noise.size(); ++i) {
    for (std::size_t j = i + 1; j < data.pre_noise.size(); ++j) {
      const int pi = data.cores[i].p();
      const int pj = data.cores[j].p();
      if (data.pre_noise[i].p() == pi || data.pre_noise[j].p() == pj) continue;
      const Eigen::MatrixXd cross =
          data.pre_noise[i].matrix().rightCols(data.pre_noise[i].p() - pi).transpose() *
          data.pre_noise[j].matrix().rightCols(data.pre_noise[j].p() - pj);
      CHECK(cross.cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("orthogonal pool exhaustion is reported") {
  OrthogonalPool pool(Eigen::MatrixXd::Identity(5, 2));
  RngStream rng(113);
  const Basis core = Basis(Eigen::MatrixXd::Identity(5, 1));
  CHECK_THROWS_AS(complete_basis(core, 4, &pool, rng), PoolExhausted);
}

TEST_CASE("noise calibration") {
  CHECK(noise_total_variance(10, 9.0) == doctest::Approx(1.2589254117941673).epsilon(1e-15));

  SUBCASE("the no-noise sentinel is the identity") {
    const SubspaceCollection c = tests::worked_example();
    RngStream rng(1);
    const SubspaceCollection same = add_noise(c, kNoNoise, 1, rng);
    for (int i = 0; i < c.size(); ++i) {
      CHECK((same[i].matrix() - c[i].matrix()).cwiseAbs().maxCoeff() == 0.0);
    }
  }

  SUBCASE("empirical added power matches sigma^2") {
    // Monte Carlo on the generator's own noise draw: mean ||N||_F^2 over many
    // items must land within 5% of the configured total variance.
    const int n = 20;
    const double sigma2 = noise_total_variance(10, 9.0);
    RngStream rng(2);
    double total = 0.0;
    const int reps = 1000;
    for (int i = 0; i < reps; ++i) {
      const int p = 4 + (i % 3);
      const double entry_sd = std::sqrt(sigma2 / (n * p));
      total += (entry_sd * rng.gaussian_matrix(n, p)).squaredNorm();
    }
    CHECK(total / reps == doctest::Approx(sigma2).epsilon(0.05));
  }

  SUBCASE("noisy bases remain orthonormal and differ from the input") {
    const SubspaceCollection c = tests::worked_example();
    RngStream rng(3);
    const SubspaceCollection noisy = add_noise(c, 9.0, 1, rng);
    for (int i = 0; i < c.size(); ++i) {
      CHECK(p2s_distance(noisy[i], c[i]) > 1e-6);
    }
  }
}

TEST_CASE("random collections have mixed dimensions and no truth") {
  DatasetSpec spec;
  spec.model = DataModel::kRandom;
  spec.n = 12;
  spec.k0 = 3;
  spec.m1 = 10;
  spec.dims = {3, 4, 5};
  spec.seed = 19;
  const Dataset data = random_dataset(spec);
  CHECK_FALSE(data.truth_center.has_value());
  CHECK(data.truth_k == 0);
  for (int i = 0; i < data.collection.size(); ++i) {
    CHECK(data.collection[i].p() >= 3);
    CHECK(data.collection[i].p() <= 5);
  }
}
