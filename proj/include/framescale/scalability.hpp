#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "framescale/diagram.hpp"
#include "framescale/frame.hpp"

namespace framescale {

enum class Verdict { NotScalable, Scalable, StrictlyScalable };
enum class ScalingMethod { Feasibility, Cofactor, Codim2, SignReject, Split };

std::string_view to_string(Verdict v) noexcept;
std::string_view to_string(ScalingMethod m) noexcept;

struct Tolerances {
  double rank = kRankTolerance;
  double tight = kTightTolerance;
  /// Minimum weight (after normalizing sum c = 1) for strict scalability.
  double strict = 1e-9;
};

/// Outcome of a scalability decision.
///
/// Scalable results carry c (sum c = 1, theta~ c = 0) and a = sqrt(c), which
/// makes the frame tight. NotScalable results carry a separating functional y
/// with <x~_i, y> > 0 for all i, and `sign_row` when a quick sign test fired.
struct ScalingResult {
  Verdict verdict = Verdict::NotScalable;
  ScalingMethod method = ScalingMethod::Feasibility;
  std::optional<Vector> weights_c;
  std::optional<Vector> scalars_a;
  std::optional<Vector> certificate_y;
  std::optional<std::size_t> sign_row;
  /// Indices with c_i <= strict tolerance for a Scalable (not strict) verdict.
  std::vector<std::size_t> near_zero;

  bool scalable() const { return verdict != Verdict::NotScalable; }
};

/// Fast rejections that need no linear program.
struct SignRejectReport {
  /// First row of theta~ that is entrywise >= 0 or <= 0 and not all zero.
  std::optional<std::size_t> row;
  /// m <= rows(theta~) and the columns of theta~ are independent.
  bool columns_independent = false;

  bool rejects() const { return row.has_value() || columns_independent; }
};

SignRejectReport quick_sign_reject(const Frame& f, const Tolerances& tol = {});

/// General route: sign rejection, then the nonnegative kernel LP on theta~.
/// With `strict`, a feasible instance is re-solved maximizing min_i c_i.
ScalingResult decide_scalable(const Frame& f, bool strict = false, const Tolerances& tol = {});

/// true iff min_i <x~_i, y> > 0, certifying that f is not scalable.
bool hull_certificate_check(const Frame& f, std::span<const double> y);

/// Parseval-producing scalars sqrt(c_i / A) where A is the tight bound of
/// {sqrt(c_i) x_i}. Throws NotParsevalScaling if sqrt(c) does not give a tight frame.
Vector parseval_scalars(const Frame& f, std::span<const double> c, double tol = kTightTolerance);

enum class SignClass { AllNonneg, AllNonpos, Mixed };
std::string_view to_string(SignClass s) noexcept;

/// Signed cofactors of the symbolic first row in the square matrix (E; rows).
/// `rows` must be (m-1) x m. Orthogonal to every row of `rows`.
Vector cofactor_vector(const Matrix& rows);

struct CofactorReport {
  std::size_t corank = 0;
  std::vector<std::size_t> selected_rows;
  Vector cofactor_vector;
  SignClass sign_class = SignClass::Mixed;
};

struct CofactorScaling {
  CofactorReport report;
  ScalingResult result;
};

/// Rank m-1 route. Throws CorankMismatch when rank(theta~) != m - 1.
CofactorScaling cofactor_scaling(const Frame& f, const Tolerances& tol = {});

/// Cofactor pencil of the rank m-2 route: A_j(t) = p_j cos t + q_j sin t are
/// the cofactors of E in (E; cos t w1 + sin t w2; R_1; ...; R_{m-2}).
struct Codim2Pencil {
  std::vector<std::size_t> selected_rows;
  Vector w1;
  Vector w2;
  Vector p;
  Vector q;

  Vector at(double t) const;
};

/// Pencil for the given completion vectors. Throws CorankMismatch on the
/// rank hypothesis and BadParams if {w1, w2, R} is not independent.
Codim2Pencil codim2_pencil(const Frame& f, std::span<const double> w1, std::span<const double> w2,
                           const Tolerances& tol = {});
/// Pencil with w1, w2 chosen greedily among standard basis vectors.
Codim2Pencil codim2_pencil(const Frame& f, const Tolerances& tol = {});

struct Codim2Scaling {
  Codim2Pencil pencil;
  /// Direction t at which the returned weights were taken.
  std::optional<double> t;
  ScalingResult result;
};

/// Rank m-2 route, decided by exact intersection of the half-circles
/// {t : A_j(t) >= 0}. Throws CorankMismatch when rank(theta~) != m - 2.
Codim2Scaling codim2_scaling(const Frame& f, const Tolerances& tol = {});

}  // namespace framescale
