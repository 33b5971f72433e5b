#pragma once

#include <cstddef>
#include <optional>

#include "framescale/linalg.hpp"
#include "framescale/matrix.hpp"

namespace framescale {

/// A finite frame for R^n: m >= n nonzero vectors spanning R^n, stored as the
/// n x m synthesis matrix whose i-th column is x_i.
class Frame {
 public:
  /// Validates and adopts a synthesis matrix. Throws DimensionMismatch,
  /// NonFinite, ZeroVector or NotSpanning.
  explicit Frame(Matrix synthesis);

  std::size_t dimension() const noexcept { return synthesis_.rows(); }
  std::size_t size() const noexcept { return synthesis_.cols(); }
  const Matrix& synthesis() const noexcept { return synthesis_; }
  Vector vector(std::size_t i) const { return synthesis_.column(i); }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  Matrix synthesis_;
};

Frame make_frame(std::span<const Vector> vectors);

struct FrameOperatorData {
  Matrix s;
  SpectralData spectral;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
};

FrameOperatorData frame_operator(const Frame& f);

/// S = X X^T, exactly symmetric.
Matrix frame_operator_matrix(const Matrix& synthesis);

/// sum_{i,j} <x_i, x_j>^2
double frame_potential(const Frame& f);

inline constexpr double kTightTolerance = 1e-8;

/// Synthesis rows pairwise orthogonal and of equal norm, both to relative
/// `tol`. Holds the common squared row norm (the tight bound) when tight.
struct Tightness {
  std::optional<double> bound;

  bool tight() const { return bound.has_value(); }
  bool parseval(double tol = kTightTolerance) const {
    return bound && std::abs(*bound - 1.0) <= tol;
  }
};

Tightness is_tight(const Matrix& synthesis, double tol = kTightTolerance);
Tightness is_tight(const Frame& f, double tol = kTightTolerance);

/// Weighted synthesis matrix with column i equal to a_i x_i (no spanning check).
Matrix scaled_synthesis(const Frame& f, std::span<const double> a);

/// {a_i x_i}. Zero weights are allowed as long as the surviving vectors
/// still span, so the weighted synthesis may contain zero columns.
struct ScaledFrame {
  Frame base;
  Vector weights;
  Matrix synthesis;

  /// Indices with a_i > 0.
  std::vector<std::size_t> support() const;
  /// The scaled vectors with zero-weighted ones dropped.
  Frame support_frame() const;
};

/// Throws DimensionMismatch, BadParams (negative or non-finite weight) or
/// NotSpanning when the nonzero-weighted vectors no longer span.
ScaledFrame apply_scaling(const Frame& f, std::span<const double> a);

/// ||X Y^T - I||_max <= tol. Throws DimensionMismatch on shape disagreement.
bool is_dual(const Frame& f, const Frame& g, double tol = kTightTolerance);
bool is_dual(const Matrix& x, const Matrix& y, double tol = kTightTolerance);

}  // namespace framescale
