#pragma once

#include <cstddef>
#include <functional>

#include "framescale/matrix.hpp"

namespace framescale {

/// Eigen-decomposition of a symmetric matrix. Eigenvalues are sorted in
/// descending order and column k of `eigenvectors` belongs to eigenvalue k.
struct SpectralData {
  Vector eigenvalues;
  Matrix eigenvectors;

  /// Q diag(f(lambda)) Q^T.
  Matrix apply(const std::function<double(double)>& f) const;
};

inline constexpr double kSymmetryTolerance = 1e-10;
inline constexpr double kRankTolerance = 1e-10;

/// Cyclic Jacobi eigen-solver. Throws NonSymmetric / NonFinite /
/// DimensionMismatch (non-square or empty input).
SpectralData symmetric_eigen(const Matrix& m);

/// Right singular system from one-sided (Hestenes) Jacobi: `values` sorted
/// descending, `right_vectors` is orthogonal with matching column order and
/// `left_scaled` holds the columns M*v_k (= sigma_k u_k).
struct SingularSystem {
  Vector values;
  Matrix right_vectors;
  Matrix left_scaled;
};

SingularSystem singular_system(const Matrix& m);
Vector singular_values(const Matrix& m);

/// Number of singular values above tol * sigma_max (0 for the zero matrix).
std::size_t rank(const Matrix& m, double tol = kRankTolerance);

/// Orthonormal kernel basis as the columns of a cols x (cols - rank) matrix.
Matrix nullspace_basis(const Matrix& m, double tol = kRankTolerance);

/// Minimum-norm least-squares solution of m x = b via the pseudo-inverse.
Vector least_squares(const Matrix& m, std::span<const double> b, double tol = kRankTolerance);

/// LU determinant with partial pivoting.
double determinant(const Matrix& m);

/// Indices of a maximal linearly independent subset of rows, picked greedily
/// in ascending order (lowest index wins ties).
std::vector<std::size_t> independent_rows(const Matrix& m, double tol = kRankTolerance);

}  // namespace framescale
