#include <doctest.h>

#include <cmath>

#include "framescale/duals.hpp"
#include "framescale/error.hpp"
#include "framescale/frame.hpp"
#include "framescale/generate.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace framescale;
using namespace testing_support;

namespace {

ErrorKind kind_of(const auto& call) {
  try {
    call();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::NumericFailure;
}

}  // namespace

TEST_CASE("frame construction validates its input") {
  CHECK(kind_of([] { Frame(Matrix(2, 1, 1.0)); }) == ErrorKind::NotSpanning);
  CHECK(kind_of([] { Frame(Matrix{{1, 0, NAN}, {0, 1, 0}}); }) == ErrorKind::NonFinite);
  CHECK(kind_of([] { Frame(Matrix{{1, 0, 0}, {0, 1, 0}}); }) == ErrorKind::ZeroVector);
  CHECK(kind_of([] { Frame(Matrix{{1, 2, 3}, {2, 4, 6}}); }) == ErrorKind::NotSpanning);
  const Frame f = worked_example();
  CHECK(f.dimension() == 2);
  CHECK(f.size() == 3);
  CHECK(f.vector(1) == Vector{1, 2});
}

TEST_CASE("frame operator and bounds of the worked example") {
  const FrameOperatorData op = frame_operator(worked_example());
  CHECK(op.s == Matrix{{6, 5}, {5, 6}});
  CHECK(op.lower_bound == doctest::Approx(1.0));
  CHECK(op.upper_bound == doctest::Approx(11.0));
}

TEST_CASE("frame operator matches the reference on random frames") {
  oracle::Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 4, m = n + trial % 5;
    const Frame f = random_frame(rng, n, m);
    const oracle::Mat ref = oracle::frame_operator(vectors_of(f));
    const FrameOperatorData op = frame_operator(f);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(op.s(i, j) == doctest::Approx(ref[i][j]).epsilon(1e-12));
    CHECK(op.lower_bound > 0.0);
    CHECK(op.lower_bound <= op.upper_bound);
    // A <= <Sx, x> / |x|^2 <= B on random directions.
    for (int k = 0; k < 5; ++k) {
      const oracle::Vec x = rng.unit_vector(n);
      double q = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q += x[i] * ref[i][j] * x[j];
      CHECK(q >= op.lower_bound - 1e-10);
      CHECK(q <= op.upper_bound + 1e-10);
    }
  }
}

TEST_CASE("frame potential agrees with the Gram reference and the lower bound") {
  oracle::Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 3, m = n + 1 + trial % 4;
    const Frame f = random_unit_frame(n, m, 100 + trial);
    const double fp = frame_potential(f);
    CHECK(fp == doctest::Approx(oracle::frame_potential(vectors_of(f))).epsilon(1e-12));
    CHECK(fp >= static_cast<double>(m * m) / n - 1e-9);
  }
  CHECK(frame_potential(harmonic_frame(3)) == doctest::Approx(4.5));
  CHECK(frame_potential(worked_example()) == doctest::Approx(122.0));
}

TEST_CASE("tightness") {
  const Tightness mb = is_tight(harmonic_frame(3));
  REQUIRE(mb.tight());
  CHECK(*mb.bound == doctest::Approx(1.5));
  CHECK_FALSE(is_tight(worked_example()).tight());
  CHECK(is_tight(Frame(Matrix::identity(4))).parseval());
  // 60 and 120 degree frame scaled uniformly by (3/4)^(1/4): tight, bound 3 sqrt 3 / 4.
  const Frame f = three_vector_frame(deg(60), deg(120));
  const double s = std::pow(0.75, 0.25);
  const Tightness t = is_tight(scaled_synthesis(f, Vector{s, s, s}));
  REQUIRE(t.tight());
  CHECK(*t.bound == doctest::Approx(3.0 * std::sqrt(3.0) / 4.0).epsilon(1e-12));
  const double p = std::sqrt(2.0 / 3.0);
  CHECK(is_tight(scaled_synthesis(f, Vector{p, p, p})).parseval());
}

TEST_CASE("apply_scaling keeps zero weights and checks spanning") {
  const Frame f = three_vector_frame(deg(30), deg(100));
  const ScaledFrame s = apply_scaling(f, Vector{1.0, 0.0, 2.0});
  CHECK(s.support() == std::vector<std::size_t>{0, 2});
  CHECK(s.support_frame().size() == 2);
  CHECK(kind_of([&] { apply_scaling(f, Vector{1.0, 0.0, 0.0}); }) == ErrorKind::NotSpanning);
  CHECK(kind_of([&] { apply_scaling(f, Vector{1.0, -1.0, 0.0}); }) == ErrorKind::BadParams);
  CHECK(kind_of([&] { apply_scaling(f, Vector{1.0, 1.0}); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("duality check") {
  const Frame f = worked_example();
  CHECK(is_dual(f, canonical_dual(f).dual));
  CHECK_FALSE(is_dual(f, f));
  const Frame e(Matrix::identity(3));
  CHECK(is_dual(e, e));
}
