#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "framescale/frame.hpp"

namespace framescale {

enum class DualKind { Canonical, Alternate };

struct DualPair {
  Frame primal;
  Frame dual;
  DualKind kind = DualKind::Canonical;
  /// Indices of the original frame kept in `primal` (alternate duals drop zero weights).
  std::vector<std::size_t> kept;
};

/// y_i = S^{-1} x_i.
DualPair canonical_dual(const Frame& f);

/// S^{-1} from the spectral data of S.
Matrix inverse_frame_operator(const Frame& f);

/// Given Parseval-producing weights a, the dual {a_i^2 x_i} (zero-weight
/// vectors dropped on both sides). Throws NotParsevalScaling.
DualPair alternate_dual_from_scaling(const Frame& f, std::span<const double> a);

/// Frame operator of {a_i x_i} equals (T^T T)^{-1} to relative 1e-7, i.e.
/// {T x_i} is scaled to a Parseval frame by a. Throws SingularTransform.
bool check_transform_scaling(const Frame& f, const Matrix& t, std::span<const double> a);

struct DualScalingReport {
  bool feasible = false;
  std::optional<Vector> weights_c;
  std::optional<Vector> scalars_a;
  /// Farkas certificate over the flattened S^2 system when infeasible.
  std::optional<Vector> certificate;
  /// ||sum c_i x_i x_i^T - S^2||_max for feasible results.
  double residual = 0.0;
  /// ||frame operator of {sqrt(c_i) S^{-1/2} x_i} - S||_max.
  double half_power_residual = 0.0;
};

/// Decides whether the canonical dual can be scaled to a Parseval frame by
/// solving sum_i c_i x_i x_i^T = S^2 over c >= 0.
DualScalingReport canonical_dual_scalable(const Frame& f, bool strict = false);

/// ||X (D^2 - G) X^T||_max with D = diag(a), G = X^T X.
double grammian_form_check(const Frame& f, std::span<const double> a);

/// Sylvester Hadamard matrix (entries +-1) of a power-of-two order.
/// Throws NoHadamardAvailable otherwise.
Matrix sylvester_hadamard(std::size_t order);

/// {x_i} U {y_i} from the rows x_i of a unitary Hadamard matrix of order n
/// and y_i = (x_i1, ..., x_i,n-2, 2 x_i,n-1, 3 x_in). Scalable, but its
/// canonical dual is not. Frame operator diag(2, ..., 2, 5, 10).
Frame p1_counterexample(std::size_t n);

}  // namespace framescale
