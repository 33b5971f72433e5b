#include "framescale/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "framescale/error.hpp"

namespace framescale {

namespace {

void require_finite(const Matrix& m) {
  if (!m.all_finite()) throw Error(ErrorKind::NonFinite, "matrix has NaN or infinite entries");
}

void require_nonempty(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) throw Error(ErrorKind::DimensionMismatch, "empty matrix");
}

// Column order that sorts `keys` descending; stable so equal keys keep input order.
std::vector<std::size_t> descending_order(const Vector& keys) {
  std::vector<std::size_t> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] > keys[b]; });
  return order;
}

Matrix permute_columns(const Matrix& m, const std::vector<std::size_t>& order) {
  Matrix out(m.rows(), order.size());
  for (std::size_t k = 0; k < order.size(); ++k) out.set_column(k, m.column(order[k]));
  return out;
}

}  // namespace

Matrix SpectralData::apply(const std::function<double(double)>& f) const {
  const std::size_t n = eigenvalues.size();
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eigenvalues[k]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += eigenvectors(i, k) * fk * eigenvectors(j, k);
  }
  return out;
}

SpectralData symmetric_eigen(const Matrix& m) {
  require_nonempty(m);
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "eigen input must be square");
  require_finite(m);
  const std::size_t n = m.rows();
  const double scale = m.max_abs();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - m(j, i)) > kSymmetryTolerance * scale) {
        throw Error(ErrorKind::NonSymmetric, "matrix is not symmetric");
      }

  Matrix a = m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (m(i, j) + m(j, i));
  Matrix v = Matrix::identity(n);

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        total += a(i, j) * a(i, j);
        if (i != j) off += a(i, j) * a(i, j);
      }
    if (off <= 1e-32 * total || off == 0.0) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  Vector diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i);
  const auto order = descending_order(diag);

  SpectralData out;
  out.eigenvalues.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.eigenvalues[k] = diag[order[k]];
  out.eigenvectors = permute_columns(v, order);
  // Sign convention: the largest-magnitude component of each eigenvector is positive.
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(out.eigenvectors(i, k)) > std::abs(out.eigenvectors(arg, k)) + 1e-12) arg = i;
    if (out.eigenvectors(arg, k) < 0.0)
      for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = -out.eigenvectors(i, k);
  }
  return out;
}

SingularSystem singular_system(const Matrix& m) {
  require_nonempty(m);
  require_finite(m);
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  Matrix u = m;
  Matrix v = Matrix::identity(cols);

  constexpr int kMaxSweeps = 100;
  constexpr double kEps = 1e-15;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
          alpha += u(i, p) * u(i, p);
          beta += u(i, q) * u(i, q);
          gamma += u(i, p) * u(i, q);
        }
        if (gamma == 0.0 || std::abs(gamma) <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < rows; ++i) {
          const double up = u(i, p);
          const double uq = u(i, q);
          u(i, p) = c * up - s * uq;
          u(i, q) = s * up + c * uq;
        }
        for (std::size_t i = 0; i < cols; ++i) {
          const double vp = v(i, p);
          const double vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  Vector sigma(cols);
  for (std::size_t k = 0; k < cols; ++k) sigma[k] = norm(u.column(k));
  const auto order = descending_order(sigma);
  SingularSystem out;
  out.values.resize(cols);
  for (std::size_t k = 0; k < cols; ++k) out.values[k] = sigma[order[k]];
  out.right_vectors = permute_columns(v, order);
  out.left_scaled = permute_columns(u, order);
  return out;
}

Vector singular_values(const Matrix& m) { return singular_system(m).values; }

std::size_t rank(const Matrix& m, double tol) {
  const Vector s = singular_values(m);
  if (s.front() == 0.0) return 0;
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [&](double v) { return v > tol * s.front(); }));
}

Matrix nullspace_basis(const Matrix& m, double tol) {
  const SingularSystem svd = singular_system(m);
  const double cutoff = tol * svd.values.front();
  std::size_t r = 0;
  if (svd.values.front() > 0.0)
    while (r < svd.values.size() && svd.values[r] > cutoff) ++r;
  Matrix basis(m.cols(), m.cols() - r);
  for (std::size_t k = r; k < m.cols(); ++k) basis.set_column(k - r, svd.right_vectors.column(k));
  return basis;
}

Vector least_squares(const Matrix& m, std::span<const double> b, double tol) {
  if (b.size() != m.rows()) throw Error(ErrorKind::DimensionMismatch, "least squares rhs length");
  const SingularSystem svd = singular_system(m);
  Vector x(m.cols(), 0.0);
  const double cutoff = tol * svd.values.front();
  for (std::size_t k = 0; k < m.cols(); ++k) {
    const double s = svd.values[k];
    if (s == 0.0 || s <= cutoff) break;
    const double coeff = dot(svd.left_scaled.column(k), b) / (s * s);
    for (std::size_t i = 0; i < m.cols(); ++i) x[i] += coeff * svd.right_vectors(i, k);
  }
  return x;
}

double determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1.0;
  Matrix a = m;
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (a(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

std::vector<std::size_t> independent_rows(const Matrix& m, double tol) {
  std::vector<std::size_t> picked;
  std::vector<Vector> basis;
  double scale = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) scale = std::max(scale, norm(m.row_span(r)));
  if (scale == 0.0) return picked;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Vector v = m.row(r);
    // Two passes of modified Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) {
        const double c = dot(v, q);
        for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * q[j];
      }
    const double len = norm(v);
    if (len > tol * scale) {
      for (double& x : v) x /= len;
      basis.push_back(std::move(v));
      picked.push_back(r);
    }
  }
  return picked;
}

}  // namespace framescale
