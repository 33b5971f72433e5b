#include "framescale/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "framescale/error.hpp"

namespace framescale {

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-11;
constexpr double kClamp = 1e-12;

class Tableau {
 public:
  Tableau(const Matrix& a, std::span<const double> b)
      : rows_(a.rows()), vars_(a.cols()), width_(a.cols() + a.rows() + 1),
        t_(rows_ * width_, 0.0), cost_(width_, 0.0), basis_(rows_), active_(rows_, true) {
    for (std::size_t i = 0; i < rows_; ++i) {
      const double sign = b[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < vars_; ++j) at(i, j) = sign * a(i, j);
      at(i, vars_ + i) = 1.0;
      at(i, width_ - 1) = sign * b[i];
      basis_[i] = vars_ + i;
    }
  }

  int cap() const { return static_cast<int>(50 * (rows_ + vars_)); }

  // Phase 1: minimize the sum of artificials. Returns the optimal sum.
  double phase_one(int& iterations) {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < width_; ++j)
        if (j < vars_ || j == width_ - 1) cost_[j] -= at(i, j);
    run(width_ - 1, iterations);
    return -cost_[width_ - 1];
  }

  // Pivots remaining artificials out of the basis; rows that cannot be
  // pivoted are linearly redundant and are deactivated.
  void expel_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < vars_) continue;
      std::size_t best = vars_;
      double best_abs = 1e-9;
      for (std::size_t j = 0; j < vars_; ++j)
        if (std::abs(at(i, j)) > best_abs) {
          best_abs = std::abs(at(i, j));
          best = j;
        }
      if (best == vars_) {
        active_[i] = false;
      } else {
        pivot(i, best);
      }
    }
  }

  // Phase 2 on the true objective; artificials may not re-enter.
  bool phase_two(std::span<const double> c, int& iterations) {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (std::size_t j = 0; j < vars_; ++j) cost_[j] = c[j];
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!active_[i] || basis_[i] >= vars_) continue;
      const double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) cost_[j] -= cb * at(i, j);
    }
    return run(vars_, iterations);
  }

  Vector solution() const {
    Vector x(vars_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
      if (active_[i] && basis_[i] < vars_) x[basis_[i]] = at(i, width_ - 1);
    return x;
  }

  double objective() const { return -cost_[width_ - 1]; }

 private:
  double& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }

  // Simplex iterations with Bland's rule over columns [0, limit).
  // Returns false when the objective is unbounded below.
  bool run(std::size_t limit, int& iterations) {
    const int max_iter = cap();
    int local = 0;
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j)
        if (cost_[j] < -kCostEps) {
          enter = j;
          break;
        }
      if (enter == limit) return true;

      std::size_t leave = rows_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows_; ++i) {
        if (!active_[i] || at(i, enter) <= kPivotEps) continue;
        const double ratio = at(i, width_ - 1) / at(i, enter);
        const double slack = 1e-12 * std::max(1.0, std::abs(ratio));
        if (leave == rows_ || ratio < best_ratio - slack) {
          leave = i;
          best_ratio = ratio;
        } else if (ratio <= best_ratio + slack && basis_[i] < basis_[leave]) {
          leave = i;
          best_ratio = std::min(best_ratio, ratio);
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
      ++iterations;
      if (++local > max_iter) throw Error(ErrorKind::IterationLimit, "simplex pivot cap exceeded");
    }
  }

  void pivot(std::size_t r, std::size_t s) {
    const double inv = 1.0 / at(r, s);
    for (std::size_t j = 0; j < width_; ++j) at(r, j) *= inv;
    at(r, s) = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, s);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) at(i, j) -= f * at(r, j);
      at(i, s) = 0.0;
      if (at(i, width_ - 1) < 0.0 && at(i, width_ - 1) > -kClamp) at(i, width_ - 1) = 0.0;
    }
    const double f = cost_[s];
    if (f != 0.0) {
      for (std::size_t j = 0; j < width_; ++j) cost_[j] -= f * at(r, j);
      cost_[s] = 0.0;
    }
    basis_[r] = s;
  }

  std::size_t rows_;
  std::size_t vars_;
  std::size_t width_;
  std::vector<double> t_;
  std::vector<double> cost_;
  std::vector<std::size_t> basis_;
  std::vector<bool> active_;
};

double inf_norm(std::span<const double> v) { return max_abs(v); }

}  // namespace

LpSolution minimize(const Matrix& a, std::span<const double> b, std::span<const double> c) {
  if (a.rows() == 0 || a.cols() == 0 || b.size() != a.rows() || c.size() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "linear program shapes");
  }
  if (!a.all_finite() || !all_finite(b) || !all_finite(c)) {
    throw Error(ErrorKind::NonFinite, "linear program data");
  }

  // Row equilibration; all-zero rows are either vacuous or contradictory.
  Matrix scaled(0, 0);
  Vector rhs;
  std::vector<Vector> kept_rows;
  const double b_scale = std::max(1.0, inf_norm(b));
  // Rows this far below the largest entry are rounding noise; scaling them up
  // would turn noise into a hard constraint.
  const double negligible = 1e-14 * a.max_abs();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double s = max_abs(a.row_span(i));
    if (s <= negligible) {
      if (std::abs(b[i]) > 1e-12 * b_scale) return {LpStatus::Infeasible, {}, 0.0, 0};
      continue;
    }
    Vector r = a.row(i);
    for (double& v : r) v /= s;
    kept_rows.push_back(std::move(r));
    rhs.push_back(b[i] / s);
  }
  if (kept_rows.empty()) {
    // Only vacuous constraints: x = 0 is optimal if c >= 0.
    for (double cj : c)
      if (cj < 0.0) return {LpStatus::Unbounded, {}, 0.0, 0};
    return {LpStatus::Optimal, Vector(a.cols(), 0.0), 0.0, 0};
  }
  scaled = Matrix::from_rows(kept_rows);

  Tableau tab(scaled, rhs);
  LpSolution out;
  const double phase1 = tab.phase_one(out.iterations);
  const double tol = 1e-9 * std::max(1.0, inf_norm(rhs));
  if (phase1 > tol) {
    out.status = LpStatus::Infeasible;
    return out;
  }
  tab.expel_artificials();
  const bool bounded = tab.phase_two(c, out.iterations);
  out.x = tab.solution();
  for (double& v : out.x)
    if (v < 0.0 && v > -kClamp) v = 0.0;
  out.objective = dot(c, out.x);
  out.status = bounded ? LpStatus::Optimal : LpStatus::Unbounded;
  return out;
}

bool FeasibilityProblem::homogeneous() const {
  return std::all_of(b.begin(), b.end(), [](double v) { return v == 0.0; });
}

namespace {

// A' x = b' with the normalization row appended for homogeneous instances.
struct Augmented {
  Matrix a;
  Vector b;
};

Augmented augment(const FeasibilityProblem& p) {
  if (!p.homogeneous()) return {p.a, p.b};
  Matrix a(p.a.rows() + 1, p.a.cols());
  for (std::size_t i = 0; i < p.a.rows(); ++i) a.set_row(i, p.a.row_span(i));
  for (std::size_t j = 0; j < p.a.cols(); ++j) a(p.a.rows(), j) = 1.0;
  Vector b(p.a.rows() + 1, 0.0);
  b.back() = 1.0;
  return {std::move(a), std::move(b)};
}

std::optional<Vector> primal_witness(const Augmented& aug, bool strict, double& margin) {
  const std::size_t k = aug.a.rows();
  const std::size_t m = aug.a.cols();
  if (!strict) {
    const LpSolution sol = minimize(aug.a, aug.b, Vector(m, 0.0));
    if (sol.status == LpStatus::Infeasible) return std::nullopt;
    margin = *std::min_element(sol.x.begin(), sol.x.end());
    return sol.x;
  }
  // x = z + delta * 1; maximize delta subject to delta <= 1.
  Matrix a(k + 1, m + 2);
  Vector b(k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      a(i, j) = aug.a(i, j);
      row_sum += aug.a(i, j);
    }
    a(i, m) = row_sum;
    b[i] = aug.b[i];
  }
  a(k, m) = 1.0;
  a(k, m + 1) = 1.0;
  b[k] = 1.0;
  Vector c(m + 2, 0.0);
  c[m] = -1.0;
  const LpSolution sol = minimize(a, b, c);
  if (sol.status != LpStatus::Optimal) return std::nullopt;
  const double delta = sol.x[m];
  Vector x(m);
  for (std::size_t j = 0; j < m; ++j) x[j] = sol.x[j] + delta;
  margin = delta;
  return x;
}

// Finds y' (length of aug rows) from the alternative system; see header for the sign patterns.
std::optional<Vector> alternative(const Augmented& aug, bool strict) {
  const std::size_t k = aug.a.rows();
  const std::size_t m = aug.a.cols();
  // Variables: p (k), q (k), s (m), and r (1) when strict.
  const std::size_t nvar = 2 * k + m + (strict ? 1 : 0);
  const std::size_t ncon = m + 1 + (strict ? 1 : 0);
  Matrix a(ncon, nvar);
  Vector b(ncon, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      a(j, i) = aug.a(i, j);
      a(j, k + i) = -aug.a(i, j);
    }
    a(j, 2 * k + j) = -1.0;
  }
  for (std::size_t i = 0; i < k; ++i) {
    a(m, i) = aug.b[i];
    a(m, k + i) = -aug.b[i];
  }
  if (!strict) {
    b[m] = -1.0;
  } else {
    a(m, 2 * k + m) = 1.0;
    for (std::size_t j = 0; j < m; ++j) a(m + 1, 2 * k + j) = 1.0;
    a(m + 1, 2 * k + m) = 1.0;
    b[m + 1] = 1.0;
  }
  const LpSolution sol = minimize(a, b, Vector(nvar, 0.0));
  if (sol.status == LpStatus::Infeasible) return std::nullopt;
  Vector y(k);
  for (std::size_t i = 0; i < k; ++i) y[i] = sol.x[i] - sol.x[k + i];
  return y;
}

}  // namespace

FeasibilityOutcome solve_feasibility(const FeasibilityProblem& problem) {
  const Matrix& a = problem.a;
  if (a.rows() == 0 || a.cols() == 0 || problem.b.size() != a.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "feasibility problem shapes");
  }
  if (!a.all_finite() || !all_finite(problem.b)) throw Error(ErrorKind::NonFinite, "feasibility data");

  const Augmented aug = augment(problem);
  FeasibilityOutcome out;
  double margin = 0.0;
  auto witness = primal_witness(aug, problem.require_strict, margin);
  if (witness && (!problem.require_strict || margin > problem.strict_margin)) {
    for (double& v : *witness)
      if (v < 0.0 && v >= -kClamp) v = 0.0;
    out.status = FeasibilityStatus::Feasible;
    out.witness = std::move(witness);
    out.margin = margin;
  } else {
    auto y = alternative(aug, problem.require_strict);
    if (!y) throw Error(ErrorKind::NumericFailure, "neither a witness nor a certificate was found");
    if (problem.homogeneous()) y->pop_back();
    out.status = FeasibilityStatus::Infeasible;
    out.certificate = std::move(y);
    out.margin = witness ? margin : 0.0;
  }
  if (!verify_outcome(problem, out)) {
    throw Error(ErrorKind::NumericFailure, "feasibility result failed re-verification");
  }
  return out;
}

bool verify_outcome(const FeasibilityProblem& problem, const FeasibilityOutcome& outcome) {
  if (outcome.witness.has_value() == outcome.certificate.has_value()) return false;
  const Matrix& a = problem.a;
  const bool homogeneous = problem.homogeneous();
  if (outcome.feasible()) {
    if (!outcome.witness) return false;
    const Vector& x = *outcome.witness;
    if (x.size() != a.cols()) return false;
    for (double v : x)
      if (v < 0.0) return false;
    const Vector ax = a * x;
    const double tol = 1e-8 * (1.0 + max_abs(problem.b));
    for (std::size_t i = 0; i < ax.size(); ++i)
      if (std::abs(ax[i] - problem.b[i]) > tol) return false;
    if (homogeneous) {
      double sum = 0.0;
      for (double v : x) sum += v;
      if (std::abs(sum - 1.0) > 1e-8) return false;
    }
    if (problem.require_strict && *std::min_element(x.begin(), x.end()) <= problem.strict_margin) return false;
    return true;
  }
  if (!outcome.certificate) return false;
  const Vector& y = *outcome.certificate;
  if (y.size() != a.rows()) return false;
  const Vector aty = transpose_times(a, y);
  const double scale = max_abs(aty);
  // Entries of A^T y that cancel exactly come out as rounding noise of size
  // |A| |y| eps; the tolerance is measured against that, not against A^T y.
  const double slack = 1e-9 * std::max(a.max_abs() * max_abs(y), 1e-300);
  if (!problem.require_strict) {
    if (homogeneous) return *std::min_element(aty.begin(), aty.end()) > 0.0;
    for (double v : aty)
      if (v < -slack) return false;
    return dot(y, problem.b) < 0.0 && -dot(y, problem.b) > slack;
  }
  for (double v : aty)
    if (v < -slack) return false;
  if (homogeneous) return scale > slack;
  const double yb = dot(y, problem.b);
  if (yb > slack) return false;
  return scale > slack || yb < -slack;
}

}  // namespace framescale
