#include "framescale/scalability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "framescale/error.hpp"
#include "framescale/lp.hpp"

namespace framescale {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::NotScalable: return "NotScalable";
    case Verdict::Scalable: return "Scalable";
    case Verdict::StrictlyScalable: return "StrictlyScalable";
  }
  return "?";
}

std::string_view to_string(ScalingMethod m) noexcept {
  switch (m) {
    case ScalingMethod::Feasibility: return "Feasibility";
    case ScalingMethod::Cofactor: return "Cofactor";
    case ScalingMethod::Codim2: return "Codim2";
    case ScalingMethod::SignReject: return "SignReject";
    case ScalingMethod::Split: return "Split";
  }
  return "?";
}

std::string_view to_string(SignClass s) noexcept {
  switch (s) {
    case SignClass::AllNonneg: return "AllNonneg";
    case SignClass::AllNonpos: return "AllNonpos";
    case SignClass::Mixed: return "Mixed";
  }
  return "?";
}

namespace {

void require_plane_or_higher(const Frame& f) {
  if (f.dimension() < 2) throw Error(ErrorKind::DimensionTooSmall, "scalability tests need n >= 2");
}

// Normalizes c to sum 1, checks theta~ c = 0 and tightness of {sqrt(c_i) x_i}.
ScalingResult finish_scalable(const Frame& f, const Matrix& theta, Vector c, ScalingMethod method,
                              const Tolerances& tol) {
  double sum = 0.0;
  for (double& v : c) {
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  if (!(sum > 0.0)) throw Error(ErrorKind::NumericFailure, "scaling weights vanish");
  for (double& v : c) v /= sum;

  const Vector residual = theta * c;
  if (max_abs(residual) > 1e-8 * std::max(1.0, theta.max_abs())) {
    throw Error(ErrorKind::NumericFailure, "weights are not in the kernel of the reduced diagram matrix");
  }
  Vector a(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) a[i] = std::sqrt(c[i]);
  if (!is_tight(scaled_synthesis(f, a), tol.tight).tight()) {
    throw Error(ErrorKind::NumericFailure, "scaled frame failed the tightness re-check");
  }

  ScalingResult out;
  out.method = method;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] <= tol.strict) out.near_zero.push_back(i);
  out.verdict = out.near_zero.empty() ? Verdict::StrictlyScalable : Verdict::Scalable;
  out.weights_c = std::move(c);
  out.scalars_a = std::move(a);
  return out;
}

Vector lp_certificate(const Matrix& theta) {
  FeasibilityProblem p{theta, Vector(theta.rows(), 0.0)};
  const FeasibilityOutcome o = solve_feasibility(p);
  if (!o.certificate) throw Error(ErrorKind::NumericFailure, "expected an infeasible kernel problem");
  return *o.certificate;
}

ScalingResult not_scalable(ScalingMethod method, Vector y) {
  ScalingResult out;
  out.verdict = Verdict::NotScalable;
  out.method = method;
  out.certificate_y = std::move(y);
  return out;
}

std::size_t measured_rank(const Matrix& theta, const Tolerances& tol) { return rank(theta, tol.rank); }

Matrix stack_rows(const std::vector<Vector>& head, const Matrix& theta, const std::vector<std::size_t>& rows) {
  std::vector<Vector> all = head;
  for (std::size_t r : rows) all.push_back(theta.row(r));
  return Matrix::from_rows(all);
}

}  // namespace

SignRejectReport quick_sign_reject(const Frame& f, const Tolerances& tol) {
  require_plane_or_higher(f);
  const Matrix theta = reduced_diagram_matrix(f).data;
  const double zero = 1e-12 * std::max(1.0, theta.max_abs());
  SignRejectReport out;
  for (std::size_t r = 0; r < theta.rows() && !out.row; ++r) {
    bool nonneg = true, nonpos = true, nonzero = false;
    for (double v : theta.row_span(r)) {
      if (std::abs(v) <= zero) continue;
      nonzero = true;
      nonneg = nonneg && v > 0.0;
      nonpos = nonpos && v < 0.0;
    }
    if (nonzero && (nonneg || nonpos)) out.row = r;
  }
  out.columns_independent = theta.cols() <= theta.rows() && measured_rank(theta, tol) == theta.cols();
  return out;
}

ScalingResult decide_scalable(const Frame& f, bool strict, const Tolerances& tol) {
  require_plane_or_higher(f);
  const Matrix theta = reduced_diagram_matrix(f).data;
  const SignRejectReport sign = quick_sign_reject(f, tol);

  FeasibilityProblem problem{theta, Vector(theta.rows(), 0.0)};
  const FeasibilityOutcome loose = solve_feasibility(problem);
  if (!loose.feasible()) {
    ScalingResult out = not_scalable(sign.rejects() ? ScalingMethod::SignReject : ScalingMethod::Feasibility,
                                     *loose.certificate);
    out.sign_row = sign.row;
    return out;
  }
  // A sign rejection contradicted by a verified witness is rounding noise; the witness wins.
  if (strict) {
    problem.require_strict = true;
    problem.strict_margin = tol.strict;
    const FeasibilityOutcome tight_margin = solve_feasibility(problem);
    if (tight_margin.feasible()) {
      return finish_scalable(f, theta, *tight_margin.witness, ScalingMethod::Feasibility, tol);
    }
  }
  return finish_scalable(f, theta, *loose.witness, ScalingMethod::Feasibility, tol);
}

bool hull_certificate_check(const Frame& f, std::span<const double> y) {
  require_plane_or_higher(f);
  const Matrix theta = reduced_diagram_matrix(f).data;
  if (y.size() != theta.rows()) throw Error(ErrorKind::DimensionMismatch, "certificate length");
  const Vector values = transpose_times(theta, y);
  return *std::min_element(values.begin(), values.end()) > 0.0;
}

Vector parseval_scalars(const Frame& f, std::span<const double> c, double tol) {
  if (c.size() != f.size()) throw Error(ErrorKind::DimensionMismatch, "one weight per frame vector");
  Vector a(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) a[i] = std::sqrt(std::max(0.0, c[i]));
  const Tightness t = is_tight(scaled_synthesis(f, a), tol);
  if (!t.tight()) throw Error(ErrorKind::NotParsevalScaling, "weights do not produce a tight frame");
  const double s = 1.0 / std::sqrt(*t.bound);
  for (double& v : a) v *= s;
  return a;
}

Vector cofactor_vector(const Matrix& rows) {
  const std::size_t m = rows.cols();
  if (rows.rows() + 1 != m) throw Error(ErrorKind::DimensionMismatch, "cofactor expansion needs (m-1) x m rows");
  Vector out(m);
  Matrix minor(m - 1, m - 1);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t r = 0; r + 1 < m; ++r)
      for (std::size_t c = 0, k = 0; c < m; ++c)
        if (c != j) minor(r, k++) = rows(r, c);
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    out[j] = sign * determinant(minor);
  }
  return out;
}

CofactorScaling cofactor_scaling(const Frame& f, const Tolerances& tol) {
  require_plane_or_higher(f);
  const Matrix theta = reduced_diagram_matrix(f).data;
  const std::size_t m = theta.cols();
  const std::size_t r = measured_rank(theta, tol);
  if (r + 1 != m) {
    throw Error(ErrorKind::CorankMismatch,
                "cofactor method needs corank 1, measured corank " + std::to_string(m - r));
  }
  CofactorScaling out;
  out.report.corank = m - r;
  out.report.selected_rows = independent_rows(theta, tol.rank);
  if (out.report.selected_rows.size() + 1 != m) {
    throw Error(ErrorKind::CorankMismatch, "row selection disagrees with the measured rank");
  }
  const Matrix rows = stack_rows({}, theta, out.report.selected_rows);
  out.report.cofactor_vector = cofactor_vector(rows);

  const Vector& cof = out.report.cofactor_vector;
  const double scale = max_abs(cof);
  const double zero = 1e-10 * scale;
  bool nonneg = true, nonpos = true;
  for (double v : cof) {
    if (std::abs(v) <= zero) continue;
    nonneg = nonneg && v > 0.0;
    nonpos = nonpos && v < 0.0;
  }
  out.report.sign_class = nonneg ? SignClass::AllNonneg : nonpos ? SignClass::AllNonpos : SignClass::Mixed;

  if (out.report.sign_class != SignClass::Mixed) {
    Vector c(m);
    for (std::size_t j = 0; j < m; ++j) c[j] = std::abs(cof[j]) <= zero ? 0.0 : std::abs(cof[j]);
    out.result = finish_scalable(f, theta, std::move(c), ScalingMethod::Cofactor, tol);
    return out;
  }

  // Row space of theta~ is cof^perp. A strictly positive v in it, lifted by
  // least squares, separates the diagram vectors from the origin.
  double pos = 0.0, neg = 0.0;
  for (double v : cof) {
    if (v > zero) pos += v;
    if (v < -zero) neg -= v;
  }
  Vector v(m, 1.0);
  for (std::size_t j = 0; j < m; ++j) {
    if (cof[j] > zero) v[j] = 1.0 / pos;
    if (cof[j] < -zero) v[j] = 1.0 / neg;
  }
  Vector y = least_squares(theta.transpose(), v, tol.rank);
  if (!hull_certificate_check(f, y)) y = lp_certificate(theta);
  out.result = not_scalable(ScalingMethod::Cofactor, std::move(y));
  return out;
}

Vector Codim2Pencil::at(double t) const {
  Vector out(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) out[j] = p[j] * std::cos(t) + q[j] * std::sin(t);
  return out;
}

namespace {

std::vector<std::size_t> codim2_rows(const Matrix& theta, const Tolerances& tol) {
  const std::size_t m = theta.cols();
  const std::size_t r = rank(theta, tol.rank);
  if (r + 2 != m) {
    throw Error(ErrorKind::CorankMismatch,
                "codim-2 method needs corank 2, measured corank " + std::to_string(m - r));
  }
  auto rows = independent_rows(theta, tol.rank);
  if (rows.size() + 2 != m) throw Error(ErrorKind::CorankMismatch, "row selection disagrees with the measured rank");
  return rows;
}

Codim2Pencil build_pencil(const Matrix& theta, std::vector<std::size_t> rows, Vector w1, Vector w2,
                          const Tolerances& tol) {
  const std::size_t m = theta.cols();
  if (w1.size() != m || w2.size() != m) throw Error(ErrorKind::DimensionMismatch, "completion vector length");
  if (rank(stack_rows({w1, w2}, theta, rows), tol.rank) != m) {
    throw Error(ErrorKind::BadParams, "completion vectors are not independent of the selected rows");
  }
  Codim2Pencil out;
  out.p = cofactor_vector(stack_rows({w1}, theta, rows));
  out.q = cofactor_vector(stack_rows({w2}, theta, rows));
  out.selected_rows = std::move(rows);
  out.w1 = std::move(w1);
  out.w2 = std::move(w2);
  return out;
}

}  // namespace

Codim2Pencil codim2_pencil(const Frame& f, std::span<const double> w1, std::span<const double> w2,
                           const Tolerances& tol) {
  require_plane_or_higher(f);
  const Matrix theta = reduced_diagram_matrix(f).data;
  return build_pencil(theta, codim2_rows(theta, tol), Vector(w1.begin(), w1.end()),
                      Vector(w2.begin(), w2.end()), tol);
}

Codim2Pencil codim2_pencil(const Frame& f, const Tolerances& tol) {
  require_plane_or_higher(f);
  const Matrix theta = reduced_diagram_matrix(f).data;
  const std::size_t m = theta.cols();
  auto rows = codim2_rows(theta, tol);
  std::vector<Vector> chosen;
  for (std::size_t i = 0; i < m && chosen.size() < 2; ++i) {
    Vector e(m, 0.0);
    e[i] = 1.0;
    auto trial = chosen;
    trial.push_back(e);
    if (rank(stack_rows(trial, theta, rows), tol.rank) == rows.size() + trial.size()) chosen = std::move(trial);
  }
  if (chosen.size() != 2) throw Error(ErrorKind::NumericFailure, "could not complete the row basis");
  return build_pencil(theta, std::move(rows), chosen[0], chosen[1], tol);
}

Codim2Scaling codim2_scaling(const Frame& f, const Tolerances& tol) {
  Codim2Scaling out;
  out.pencil = codim2_pencil(f, tol);
  const Matrix theta = reduced_diagram_matrix(f).data;
  const Codim2Pencil& pen = out.pencil;
  const std::size_t m = pen.p.size();

  double rmax = 0.0;
  for (std::size_t j = 0; j < m; ++j) rmax = std::max(rmax, std::hypot(pen.p[j], pen.q[j]));
  auto normalized = [&](double t) {
    Vector a = pen.at(t);
    for (double& v : a) v /= rmax;
    return a;
  };
  auto min_of = [](const Vector& v) { return *std::min_element(v.begin(), v.end()); };

  // Each active constraint A_j(t) >= 0 is the closed half-circle centred at
  // atan2(q_j, p_j); any nonempty intersection contains one of the endpoints.
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  std::vector<double> ends;
  for (std::size_t j = 0; j < m; ++j) {
    if (std::hypot(pen.p[j], pen.q[j]) <= 1e-12 * rmax) continue;
    const double phi = std::atan2(pen.q[j], pen.p[j]);
    for (double e : {phi - std::numbers::pi / 2, phi + std::numbers::pi / 2}) {
      double t = std::fmod(e, kTwoPi);
      if (t < 0.0) t += kTwoPi;
      ends.push_back(t);
    }
  }
  std::sort(ends.begin(), ends.end());

  // Open-arc candidates: midpoints between consecutive endpoints.
  std::optional<double> best_t;
  double best_min = -1.0;
  for (std::size_t k = 0; k < ends.size(); ++k) {
    const double lo = ends[k];
    const double hi = k + 1 < ends.size() ? ends[k + 1] : ends.front() + kTwoPi;
    if (hi - lo <= 1e-14) continue;
    const double t = 0.5 * (lo + hi);
    const double mn = min_of(normalized(t));
    if (mn > best_min) {
      best_min = mn;
      best_t = t;
    }
  }
  if (!best_t || best_min <= tol.strict) {
    best_t.reset();
    for (double t : ends)
      if (min_of(normalized(t)) >= -1e-10) {
        best_t = t;
        break;
      }
  }
  if (!best_t) {
    out.result = not_scalable(ScalingMethod::Codim2, lp_certificate(theta));
    return out;
  }
  out.t = std::fmod(*best_t, kTwoPi);
  out.result = finish_scalable(f, theta, normalized(*out.t), ScalingMethod::Codim2, tol);
  return out;
}

}  // namespace framescale
