#pragma once

#include <optional>

#include "framescale/matrix.hpp"

namespace framescale {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Vector x;
  double objective = 0.0;
  int iterations = 0;
};

/// Two-phase dense simplex for   min c^T x  s.t.  A x = b,  x >= 0.
/// Bland's rule throughout; throws IterationLimit past 50 * (rows + cols)
/// pivots in either phase.
LpSolution minimize(const Matrix& a, std::span<const double> b, std::span<const double> c);

enum class FeasibilityStatus { Feasible, Infeasible };

/// A x = b, x >= 0. When b is identically zero the solver appends the
/// normalization sum(x) = 1 to exclude the trivial solution.
struct FeasibilityProblem {
  Matrix a;
  Vector b;
  bool require_strict = false;
  /// With require_strict, Feasible is reported only when max min_i x_i exceeds this.
  double strict_margin = 1e-9;

  bool homogeneous() const;
};

/// Exactly one of witness / certificate is set.
///
/// Certificate meaning, by instance type:
///   homogeneous, non-strict     (y^T A)_j > 0 for all j
///   homogeneous, strict         y^T A >= 0 and y^T A != 0
///   inhomogeneous, non-strict   y^T A >= 0 and y^T b < 0
///   inhomogeneous, strict       y^T A >= 0, y^T b <= 0, not both zero
struct FeasibilityOutcome {
  FeasibilityStatus status = FeasibilityStatus::Infeasible;
  std::optional<Vector> witness;
  std::optional<Vector> certificate;
  /// min_i x_i of the witness (the optimal margin when strictness was requested).
  double margin = 0.0;

  bool feasible() const { return status == FeasibilityStatus::Feasible; }
};

/// Solves and self-verifies; a result failing its own check throws NumericFailure.
FeasibilityOutcome solve_feasibility(const FeasibilityProblem& problem);

/// Re-substitutes the witness or certificate. Returns false on any violation.
bool verify_outcome(const FeasibilityProblem& problem, const FeasibilityOutcome& outcome);

}  // namespace framescale
