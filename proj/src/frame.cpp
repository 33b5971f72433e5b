#include "framescale/frame.hpp"

#include <cmath>

#include "framescale/error.hpp"

namespace framescale {

Frame::Frame(Matrix synthesis) : synthesis_(std::move(synthesis)) {
  const std::size_t n = synthesis_.rows();
  const std::size_t m = synthesis_.cols();
  if (n == 0 || m == 0) throw Error(ErrorKind::DimensionMismatch, "frame needs at least one vector of positive length");
  if (!synthesis_.all_finite()) throw Error(ErrorKind::NonFinite, "frame vector entries must be finite");
  for (std::size_t i = 0; i < m; ++i) {
    bool zero = true;
    for (std::size_t r = 0; r < n; ++r) zero = zero && synthesis_(r, i) == 0.0;
    if (zero) throw Error(ErrorKind::ZeroVector, "vector " + std::to_string(i) + " is zero");
  }
  if (m < n) {
    throw Error(ErrorKind::NotSpanning,
                std::to_string(m) + " vectors cannot span R^" + std::to_string(n));
  }
  const std::size_t r = rank(synthesis_);
  if (r < n) {
    throw Error(ErrorKind::NotSpanning,
                "vectors span a " + std::to_string(r) + "-dimensional subspace of R^" + std::to_string(n));
  }
}

Frame make_frame(std::span<const Vector> vectors) {
  if (vectors.empty()) throw Error(ErrorKind::DimensionMismatch, "no vectors given");
  return Frame(Matrix::from_columns(vectors));
}

Matrix frame_operator_matrix(const Matrix& x) {
  const std::size_t n = x.rows();
  Matrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) s(i, j) = s(j, i) = dot(x.row_span(i), x.row_span(j));
  return s;
}

FrameOperatorData frame_operator(const Frame& f) {
  FrameOperatorData out;
  out.s = frame_operator_matrix(f.synthesis());
  out.spectral = symmetric_eigen(out.s);
  out.upper_bound = out.spectral.eigenvalues.front();
  out.lower_bound = out.spectral.eigenvalues.back();
  return out;
}

double frame_potential(const Frame& f) {
  const Matrix& x = f.synthesis();
  double total = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f.size(); ++j) {
      double ip = 0.0;
      for (std::size_t r = 0; r < f.dimension(); ++r) ip += x(r, i) * x(r, j);
      total += ip * ip;
    }
  return total;
}

Tightness is_tight(const Matrix& x, double tol) {
  const std::size_t n = x.rows();
  Vector norms(n);
  for (std::size_t i = 0; i < n; ++i) norms[i] = norm(x.row_span(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(dot(x.row_span(i), x.row_span(j))) > tol * norms[i] * norms[j]) return {};
  double largest = 0.0;
  double mean = 0.0;
  for (double v : norms) {
    largest = std::max(largest, v * v);
    mean += v * v;
  }
  mean /= static_cast<double>(n);
  if (largest == 0.0) return {};
  for (double v : norms)
    if (std::abs(v * v - largest) > tol * largest) return {};
  return {mean};
}

Tightness is_tight(const Frame& f, double tol) { return is_tight(f.synthesis(), tol); }

Matrix scaled_synthesis(const Frame& f, std::span<const double> a) {
  if (a.size() != f.size()) throw Error(ErrorKind::DimensionMismatch, "one weight per frame vector");
  Matrix x = f.synthesis();
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t r = 0; r < f.dimension(); ++r) x(r, i) *= a[i];
  return x;
}

std::vector<std::size_t> ScaledFrame::support() const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (weights[i] > 0.0) idx.push_back(i);
  return idx;
}

Frame ScaledFrame::support_frame() const {
  std::vector<Vector> kept;
  for (std::size_t i : support()) kept.push_back(synthesis.column(i));
  return make_frame(kept);
}

ScaledFrame apply_scaling(const Frame& f, std::span<const double> a) {
  if (a.size() != f.size()) throw Error(ErrorKind::DimensionMismatch, "one weight per frame vector");
  for (double w : a)
    if (!std::isfinite(w) || w < 0.0) throw Error(ErrorKind::BadParams, "weights must be finite and non-negative");
  ScaledFrame out{f, Vector(a.begin(), a.end()), scaled_synthesis(f, a)};
  if (rank(out.synthesis) < f.dimension()) {
    throw Error(ErrorKind::NotSpanning, "zero weights leave a non-spanning system");
  }
  return out;
}

bool is_dual(const Matrix& x, const Matrix& y, double tol) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "dual candidates differ in shape");
  }
  return max_abs_diff(x * y.transpose(), Matrix::identity(x.rows())) <= tol;
}

bool is_dual(const Frame& f, const Frame& g, double tol) { return is_dual(f.synthesis(), g.synthesis(), tol); }

}  // namespace framescale
