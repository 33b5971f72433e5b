#include "framescale/duals.hpp"

#include <cmath>

#include "framescale/error.hpp"
#include "framescale/linalg.hpp"
#include "framescale/lp.hpp"

namespace framescale {

Matrix inverse_frame_operator(const Frame& f) {
  return frame_operator(f).spectral.apply([](double l) { return 1.0 / l; });
}

DualPair canonical_dual(const Frame& f) {
  Frame dual(inverse_frame_operator(f) * f.synthesis());
  std::vector<std::size_t> kept(f.size());
  for (std::size_t i = 0; i < kept.size(); ++i) kept[i] = i;
  return {f, std::move(dual), DualKind::Canonical, std::move(kept)};
}

DualPair alternate_dual_from_scaling(const Frame& f, std::span<const double> a) {
  if (a.size() != f.size()) throw Error(ErrorKind::DimensionMismatch, "one weight per frame vector");
  for (double w : a)
    if (!std::isfinite(w) || w < 0.0) throw Error(ErrorKind::NotParsevalScaling, "weights must be non-negative");
  if (!is_tight(scaled_synthesis(f, a)).parseval()) {
    throw Error(ErrorKind::NotParsevalScaling, "weights do not scale the frame to a Parseval frame");
  }
  std::vector<Vector> primal, dual;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (a[i] == 0.0) continue;
    Vector x = f.vector(i);
    Vector y = x;
    for (double& v : y) v *= a[i] * a[i];
    primal.push_back(std::move(x));
    dual.push_back(std::move(y));
    kept.push_back(i);
  }
  return {make_frame(primal), make_frame(dual), DualKind::Alternate, std::move(kept)};
}

bool check_transform_scaling(const Frame& f, const Matrix& t, std::span<const double> a) {
  const std::size_t n = f.dimension();
  if (t.rows() != n || t.cols() != n) throw Error(ErrorKind::DimensionMismatch, "transform must be n x n");
  if (rank(t) < n) throw Error(ErrorKind::SingularTransform, "transform is not invertible");
  const Matrix s1 = frame_operator_matrix(scaled_synthesis(f, a));
  const Matrix target = symmetric_eigen(t.transpose() * t).apply([](double l) { return 1.0 / l; });
  return max_abs_diff(s1, target) <= 1e-7 * target.max_abs();
}

namespace {

// Upper-triangle flattening with off-diagonals weighted by sqrt(2), an isometry
// for the Frobenius norm.
Vector flatten_symmetric(const Matrix& m) {
  Vector out;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) out.push_back(i == j ? m(i, j) : std::sqrt(2.0) * m(i, j));
  return out;
}

Matrix outer(std::span<const double> x) {
  Matrix m(x.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) m(i, j) = x[i] * x[j];
  return m;
}

}  // namespace

DualScalingReport canonical_dual_scalable(const Frame& f, bool strict) {
  const FrameOperatorData op = frame_operator(f);
  const Matrix s2 = op.spectral.apply([](double l) { return l * l; });

  std::vector<Vector> columns;
  for (std::size_t i = 0; i < f.size(); ++i) columns.push_back(flatten_symmetric(outer(f.vector(i))));
  FeasibilityProblem problem{Matrix::from_columns(columns), flatten_symmetric(s2), strict};
  const FeasibilityOutcome o = solve_feasibility(problem);

  DualScalingReport out;
  if (!o.feasible()) {
    out.certificate = o.certificate;
    return out;
  }
  Vector c = *o.witness;
  Vector a(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) a[i] = std::sqrt(c[i]);

  out.residual = max_abs_diff(frame_operator_matrix(scaled_synthesis(f, a)), s2);
  const Matrix dual = inverse_frame_operator(f) * f.synthesis();
  Matrix scaled_dual = dual;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t r = 0; r < f.dimension(); ++r) scaled_dual(r, i) *= a[i];
  const Matrix half = op.spectral.apply([](double l) { return 1.0 / std::sqrt(l); });
  Matrix half_frame = half * f.synthesis();
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t r = 0; r < f.dimension(); ++r) half_frame(r, i) *= a[i];
  out.half_power_residual = max_abs_diff(frame_operator_matrix(half_frame), op.s);

  const bool verified = out.residual <= 1e-7 * s2.max_abs() &&
                        is_tight(scaled_dual).parseval() &&
                        out.half_power_residual <= 1e-7 * op.s.max_abs();
  if (!verified) throw Error(ErrorKind::NumericFailure, "canonical dual scaling failed re-verification");
  out.feasible = true;
  out.weights_c = std::move(c);
  out.scalars_a = std::move(a);
  return out;
}

double grammian_form_check(const Frame& f, std::span<const double> a) {
  if (a.size() != f.size()) throw Error(ErrorKind::DimensionMismatch, "one weight per frame vector");
  const Matrix& x = f.synthesis();
  Matrix inner = Matrix(f.size(), f.size()) - x.transpose() * x;
  for (std::size_t i = 0; i < f.size(); ++i) inner(i, i) += a[i] * a[i];
  return (x * inner * x.transpose()).max_abs();
}

Matrix sylvester_hadamard(std::size_t order) {
  if (order == 0 || (order & (order - 1)) != 0) {
    throw Error(ErrorKind::NoHadamardAvailable,
                "Sylvester construction needs a power-of-two order, got " + std::to_string(order));
  }
  Matrix h{{1.0}};
  while (h.rows() < order) {
    const std::size_t k = h.rows();
    Matrix next(2 * k, 2 * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        next(i, j) = h(i, j);
        next(i, j + k) = h(i, j);
        next(i + k, j) = h(i, j);
        next(i + k, j + k) = -h(i, j);
      }
    h = std::move(next);
  }
  return h;
}

Frame p1_counterexample(std::size_t n) {
  if (n < 2) throw Error(ErrorKind::BadParams, "construction needs n >= 2");
  const Matrix h = (1.0 / std::sqrt(static_cast<double>(n))) * sylvester_hadamard(n);
  Matrix x(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double factor = 1.0;
      if (j == n - 2) factor = 2.0;
      if (j == n - 1) factor = 3.0;
      x(j, i) = h(i, j);
      x(j, n + i) = factor * h(i, j);
    }
  }
  return Frame(std::move(x));
}

}  // namespace framescale
