#include "framescale/split_scaling.hpp"

#include <algorithm>
#include <cmath>

#include "framescale/diagram.hpp"
#include "framescale/error.hpp"
#include "framescale/linalg.hpp"
#include "framescale/lp.hpp"

namespace framescale {

namespace {

constexpr double kEq = 1e-8;
constexpr double kNeg = 1e-12;

Vector hadamard_product(const Vector& u, const Vector& v) {
  Vector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] * v[i];
  return out;
}

bool nonnegative(std::span<const double> a) {
  for (double v : a)
    if (v < -kNeg) return false;
  return true;
}

void require_length(const Frame& f, std::span<const double> a) {
  if (a.size() != f.size()) throw Error(ErrorKind::DimensionMismatch, "one entry per frame vector");
}

Vector clamped(std::span<const double> a) {
  Vector out(a.begin(), a.end());
  for (double& v : out)
    if (v < 0.0) v = 0.0;
  return out;
}

}  // namespace

RowSystem row_system(const Frame& f) {
  RowSystem out;
  const std::size_t n = f.dimension();
  for (std::size_t j = 0; j < n; ++j) out.rows.push_back(f.synthesis().row(j));
  for (const auto& u : out.rows) out.squares.push_back(hadamard_product(u, u));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.cross.push_back(hadamard_product(out.rows[i], out.rows[j]));
  return out;
}

ConeMembership is_in_W(const Frame& f, std::span<const double> a) {
  require_length(f, a);
  ConeMembership out{Membership::NotMember, clamped(a)};
  if (!nonnegative(a)) return out;
  for (const auto& sq : row_system(f).squares)
    if (std::abs(dot(a, sq) - 1.0) > kEq) return out;
  out.status = Membership::Member;
  return out;
}

ConeMembership is_in_V(const Frame& f, std::span<const double> a) {
  require_length(f, a);
  ConeMembership out{Membership::NotMember, clamped(a)};
  if (!nonnegative(a)) return out;
  const double scale = std::max(1.0, max_abs(a));
  for (const auto& cp : row_system(f).cross)
    if (std::abs(dot(a, cp)) > kEq * scale) return out;
  out.status = Membership::Member;
  return out;
}

ConeMembership find_W_element(const Frame& f) {
  const RowSystem rs = row_system(f);
  FeasibilityProblem p{Matrix::from_rows(rs.squares), Vector(f.dimension(), 1.0)};
  const FeasibilityOutcome o = solve_feasibility(p);
  if (!o.feasible()) return {Membership::NotMember, {}};
  return is_in_W(f, *o.witness);
}

ConeMembership find_V_element(const Frame& f, bool strict) {
  const RowSystem rs = row_system(f);
  const std::size_t m = f.size();
  if (rs.cross.empty()) {
    ConeMembership out{Membership::Member, Vector(m, 1.0 / static_cast<double>(m))};
    return out;
  }
  FeasibilityProblem p{Matrix::from_rows(rs.cross), Vector(rs.cross.size(), 0.0), strict};
  const FeasibilityOutcome o = solve_feasibility(p);
  if (!o.feasible()) return {Membership::NotMember, {}};
  return is_in_V(f, *o.witness);
}

bool W_geometry_check(const Frame& f, std::size_t samples) {
  const RowSystem rs = row_system(f);
  const Matrix a_eq = Matrix::from_rows(rs.squares);
  const Vector ones(f.dimension(), 1.0);
  const ConeMembership first = find_W_element(f);
  if (!first.member()) throw Error(ErrorKind::EmptyW, "W is empty for this frame");

  // Extra W elements: minimizers of +-e_k, cycling through coordinates.
  std::vector<Vector> elements{first.a};
  for (std::size_t s = 0; s < samples; ++s) {
    Vector c(f.size(), 0.0);
    c[s % f.size()] = (s / f.size()) % 2 == 0 ? 1.0 : -1.0;
    const LpSolution sol = minimize(a_eq, ones, c);
    if (sol.status != LpStatus::Optimal) return false;
    if (!is_in_W(f, sol.x).member()) return false;
    elements.push_back(sol.x);
  }

  for (std::size_t i = 0; i < elements.size(); ++i) {
    const Vector& a = elements[i];
    // a = c_j u_j^2 + v_j with c_j |u_j^2|^2 = 1 and v_j perpendicular to u_j^2.
    for (const auto& sq : rs.squares) {
      const double cj = 1.0 / dot(sq, sq);
      Vector v(a.size());
      for (std::size_t k = 0; k < a.size(); ++k) v[k] = a[k] - cj * sq[k];
      if (std::abs(dot(v, sq)) > kEq * std::max(1.0, norm(sq))) return false;
    }
    for (std::size_t j = i + 1; j < elements.size(); ++j)
      for (double lambda : {0.25, 0.5, 0.75}) {
        Vector mix(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) mix[k] = lambda * a[k] + (1.0 - lambda) * elements[j][k];
        if (!is_in_W(f, mix).member()) return false;
      }
  }
  return true;
}

ScalingResult intersection_scalability(const Frame& f, const Tolerances& tol) {
  const RowSystem rs = row_system(f);
  std::vector<Vector> rows = rs.squares;
  rows.insert(rows.end(), rs.cross.begin(), rs.cross.end());
  Vector b(rows.size(), 0.0);
  for (std::size_t j = 0; j < f.dimension(); ++j) b[j] = 1.0;
  FeasibilityProblem p{Matrix::from_rows(rows), b};
  const FeasibilityOutcome o = solve_feasibility(p);

  ScalingResult out;
  out.method = ScalingMethod::Split;
  if (!o.feasible()) {
    out.verdict = Verdict::NotScalable;
    return out;
  }
  Vector a = *o.witness;
  Vector s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = std::sqrt(a[i]);
  if (!is_tight(scaled_synthesis(f, s), tol.tight).parseval(tol.tight * 10)) {
    throw Error(ErrorKind::NumericFailure, "W and V witness does not give a Parseval frame");
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] <= tol.strict) out.near_zero.push_back(i);
  out.verdict = out.near_zero.empty() ? Verdict::StrictlyScalable : Verdict::Scalable;
  out.weights_c = std::move(a);
  out.scalars_a = std::move(s);
  return out;
}

ProjectionBasisReport projection_basis_check(const Frame& f, std::span<const double> a) {
  require_length(f, a);
  ProjectionBasisReport out;
  const RowSystem rs = row_system(f);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 1e-9) out.support.push_back(i);

  std::vector<Vector> projected;
  for (const auto& sq : rs.squares) {
    Vector p(sq.size(), 0.0);
    for (std::size_t i : out.support) p[i] = sq[i];
    projected.push_back(std::move(p));
  }
  const Matrix pm = Matrix::from_rows(projected);
  out.basis_rows = independent_rows(pm);

  bool ok = is_in_W(f, a).member();
  for (std::size_t j : out.basis_rows) ok = ok && std::abs(dot(a, projected[j]) - 1.0) <= kEq;

  std::vector<Vector> basis_cols;
  for (std::size_t k : out.basis_rows) basis_cols.push_back(projected[k]);
  const Matrix basis = Matrix::from_columns(basis_cols);
  for (std::size_t j = 0; j < projected.size(); ++j) {
    if (std::find(out.basis_rows.begin(), out.basis_rows.end(), j) != out.basis_rows.end()) continue;
    const Vector coeff = least_squares(basis, projected[j]);
    const Vector fit = basis * coeff;
    double resid = 0.0;
    for (std::size_t k = 0; k < fit.size(); ++k) resid = std::max(resid, std::abs(fit[k] - projected[j][k]));
    double sum = 0.0;
    for (double c : coeff) sum += c;
    out.coefficient_sums.emplace_back(j, sum);
    ok = ok && resid <= kEq * std::max(1.0, max_abs(projected[j])) && std::abs(sum - 1.0) <= 1e-6;
  }
  out.holds = ok;
  return out;
}

}  // namespace framescale
