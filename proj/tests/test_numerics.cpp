#include <doctest.h>

#include <cmath>

#include "framescale/error.hpp"
#include "framescale/linalg.hpp"
#include "framescale/lp.hpp"
#include "framescale/matrix.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace framescale;
using testing_support::to_nested;

namespace {

Matrix random_matrix(oracle::Rng& rng, std::size_t r, std::size_t c) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.normal();
  return m;
}

Matrix random_symmetric(oracle::Rng& rng, std::size_t n) {
  const Matrix a = random_matrix(rng, n, n);
  return a + a.transpose();
}

}  // namespace

TEST_CASE("matrix products agree with the nested-vector reference") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_matrix(rng, 3, 4), b = random_matrix(rng, 4, 2);
    const oracle::Mat ref = oracle::multiply(to_nested(a), to_nested(b));
    const Matrix ab = a * b;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 2; ++j) CHECK(ab(i, j) == doctest::Approx(ref[i][j]).epsilon(1e-14));
    CHECK(to_nested(a.transpose()) == oracle::transpose(to_nested(a)));
  }
}

TEST_CASE("matrix shape errors") {
  const Matrix a(2, 3), b(2, 3);
  CHECK_THROWS_AS(a * b, Error);
  try {
    (void)(a * b);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("symmetric_eigen of a 2 x 2 frame operator") {
  const SpectralData sd = symmetric_eigen(Matrix{{6, 5}, {5, 6}});
  REQUIRE(sd.eigenvalues.size() == 2);
  CHECK(sd.eigenvalues[0] == doctest::Approx(11.0).epsilon(1e-14));
  CHECK(sd.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(sd.eigenvectors(0, 0)) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("symmetric_eigen reconstructs random symmetric matrices") {
  oracle::Rng rng(3);
  for (std::size_t n = 1; n <= 8; ++n) {
    const Matrix m = random_symmetric(rng, n);
    const SpectralData sd = symmetric_eigen(m);
    const Matrix rebuilt = sd.apply([](double x) { return x; });
    CHECK(max_abs_diff(rebuilt, m) <= 1e-12 * std::max(1.0, m.max_abs()));
    const Matrix vtv = sd.eigenvectors.transpose() * sd.eigenvectors;
    CHECK(max_abs_diff(vtv, Matrix::identity(n)) <= 1e-12);
    for (std::size_t i = 1; i < n; ++i) CHECK(sd.eigenvalues[i - 1] >= sd.eigenvalues[i]);
  }
}

TEST_CASE("symmetric_eigen rejects asymmetric or non-finite input") {
  CHECK_THROWS_AS(symmetric_eigen(Matrix{{1, 2}, {0, 1}}), Error);
  CHECK_THROWS_AS(symmetric_eigen(Matrix{{1, NAN}, {NAN, 1}}), Error);
  CHECK_THROWS_AS(symmetric_eigen(Matrix(2, 3)), Error);
}

TEST_CASE("rank and nullspace of constructed low-rank matrices") {
  oracle::Rng rng(5);
  for (std::size_t r = 1; r <= 4; ++r) {
    const Matrix m = random_matrix(rng, 5, r) * random_matrix(rng, r, 7);
    CHECK(rank(m) == r);
    const Matrix k = nullspace_basis(m);
    CHECK(k.rows() == 7);
    CHECK(k.cols() == 7 - r);
    CHECK((m * k).max_abs() <= 1e-10 * m.max_abs());
    CHECK(max_abs_diff(k.transpose() * k, Matrix::identity(k.cols())) <= 1e-12);
  }
  CHECK(rank(Matrix(3, 3)) == 0);
  CHECK(nullspace_basis(Matrix::identity(3)).cols() == 0);
}

TEST_CASE("singular values of a diagonal matrix") {
  const Vector d{3.0, -5.0, 1e-12};
  const Vector s = singular_values(Matrix::diagonal(d));
  REQUIRE(s.size() == 3);
  CHECK(s[0] == doctest::Approx(5.0));
  CHECK(s[1] == doctest::Approx(3.0));
  CHECK(s[2] == doctest::Approx(1e-12).epsilon(1e-6));
  CHECK(rank(Matrix::diagonal(d)) == 2);
  CHECK(rank(Matrix::diagonal(d), 1e-14) == 3);
}

TEST_CASE("least squares matches the normal equations on full-rank problems") {
  oracle::Rng rng(9);
  const Matrix a = random_matrix(rng, 6, 3);
  const Vector b = rng.normal_vector(6);
  const Vector x = least_squares(a, b);
  const oracle::Mat at = oracle::transpose(to_nested(a));
  const oracle::Mat normal = oracle::inverse(oracle::multiply(at, to_nested(a)));
  oracle::Vec atb(3, 0.0);
  for (std::size_t i = 0; i < 3; ++i) atb[i] = oracle::dot(at[i], b);
  for (std::size_t i = 0; i < 3; ++i) CHECK(x[i] == doctest::Approx(oracle::dot(normal[i], atb)).epsilon(1e-10));
}

TEST_CASE("determinant against inverse-based reference") {
  CHECK(determinant(Matrix{{6, 5}, {5, 6}}) == doctest::Approx(11.0));
  CHECK(determinant(Matrix{{0, 1}, {1, 0}}) == doctest::Approx(-1.0));
  CHECK(determinant(Matrix{{1, 2}, {2, 4}}) == doctest::Approx(0.0));
}

TEST_CASE("independent_rows prefers lower indices") {
  const Matrix m{{1, 0, 0}, {2, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}};
  CHECK(independent_rows(m) == std::vector<std::size_t>{0, 2, 4});
}

TEST_CASE("simplex solves a textbook LP") {
  // minimize -x1 - 2 x2 with x1 + x2 + s1 = 4, x1 + 3 x2 + s2 = 6.
  const Matrix a{{1, 1, 1, 0}, {1, 3, 0, 1}};
  const LpSolution sol = minimize(a, Vector{4, 6}, Vector{-1, -2, 0, 0});
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(-5.0));
  CHECK(sol.x[0] == doctest::Approx(3.0));
  CHECK(sol.x[1] == doctest::Approx(1.0));
}

TEST_CASE("simplex reports infeasible and unbounded problems") {
  CHECK(minimize(Matrix{{1, 1}}, Vector{-1}, Vector{0, 0}).status == LpStatus::Infeasible);
  CHECK(minimize(Matrix{{1, -1}}, Vector{0}, Vector{-1, 0}).status == LpStatus::Unbounded);
}

TEST_CASE("simplex copes with degenerate redundant constraints") {
  const Matrix a{{1, 1, 0}, {2, 2, 0}, {0, 1, 1}};
  const LpSolution sol = minimize(a, Vector{1, 2, 1}, Vector{1, 1, 1});
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(1.0));
}

TEST_CASE("feasibility outcomes always carry a verified witness or certificate") {
  oracle::Rng rng(21);
  int feasible = 0, infeasible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + trial % 3, cols = 2 + trial % 4;
    FeasibilityProblem p{random_matrix(rng, rows, cols), Vector(rows, 0.0)};
    if (trial % 2) p.b = rng.normal_vector(rows);
    p.require_strict = trial % 5 == 0;
    const FeasibilityOutcome o = solve_feasibility(p);
    CHECK(verify_outcome(p, o));
    if (o.feasible()) {
      ++feasible;
      const Vector r = p.a * *o.witness;
      for (std::size_t i = 0; i < rows; ++i) CHECK(r[i] == doctest::Approx(p.b[i]).epsilon(1e-8));
    } else {
      ++infeasible;
      const Vector ya = transpose_times(p.a, *o.certificate);
      for (double v : ya) CHECK(v >= -1e-12);
    }
  }
  CHECK(feasible > 20);
  CHECK(infeasible > 20);
}

TEST_CASE("Farkas alternative: exactly one side holds on sign-definite systems") {
  // Row of all positive entries: no nonnegative nonzero kernel vector.
  FeasibilityProblem p{Matrix{{1, 2, 3}}, Vector{0}};
  const FeasibilityOutcome o = solve_feasibility(p);
  CHECK_FALSE(o.feasible());
  CHECK(verify_outcome(p, o));
  // Mixed signs: kernel meets the positive orthant.
  FeasibilityProblem q{Matrix{{1, -1, 0}}, Vector{0}, true};
  const FeasibilityOutcome oq = solve_feasibility(q);
  CHECK(oq.feasible());
  CHECK(verify_outcome(q, oq));
  for (double v : *oq.witness) CHECK(v > 0.0);
}
