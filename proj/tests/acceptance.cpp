// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Usage: acceptance <golden data dir> <framescale executable>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "framescale/diagram.hpp"
#include "framescale/duals.hpp"
#include "framescale/error.hpp"
#include "framescale/frame_document.hpp"
#include "framescale/generate.hpp"
#include "framescale/linalg.hpp"
#include "framescale/report.hpp"
#include "framescale/scalability.hpp"
#include "framescale/split_scaling.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace framescale;
using namespace testing_support;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

fs::path g_data_dir;
fs::path g_cli;

// Frame with orthonormal-row Parseval frame P scaled column-wise by 1/d_i.
Frame random_scalable_frame(oracle::Rng& rng, std::size_t n, std::size_t m) {
  std::vector<oracle::Vec> rows;
  while (rows.size() < n) {
    oracle::Vec v = rng.normal_vector(m);
    for (const auto& r : rows) {
      const double p = oracle::dot(v, r);
      for (std::size_t k = 0; k < m; ++k) v[k] -= p * r[k];
    }
    const double len = std::sqrt(oracle::norm2(v));
    if (len < 1e-6) continue;
    for (double& x : v) x /= len;
    rows.push_back(v);
  }
  std::vector<oracle::Vec> cols(m, oracle::Vec(n));
  for (std::size_t i = 0; i < m; ++i) {
    const double d = rng.uniform(0.5, 2.0);
    for (std::size_t r = 0; r < n; ++r) cols[i][r] = rows[r][i] / d;
  }
  return frame_of(cols);
}

// 1. Frame operator, inverse and canonical dual of the worked example.
Check frame_operator_regression() {
  Check c;
  const Frame f = worked_example();
  const Matrix s = frame_operator(f).s;
  const Matrix sinv = inverse_frame_operator(f);
  const Matrix dual = canonical_dual(f).dual.synthesis();
  const Matrix s_ref{{6, 5}, {5, 6}};
  const Matrix sinv_ref{{6.0 / 11, -5.0 / 11}, {-5.0 / 11, 6.0 / 11}};
  const Matrix dual_ref{{7.0 / 11, -4.0 / 11, 1.0 / 11}, {-4.0 / 11, 7.0 / 11, 1.0 / 11}};
  c.expect(max_abs_diff(s, s_ref) <= 1e-12, "S");
  c.expect(max_abs_diff(sinv, sinv_ref) <= 1e-12, "S^-1");
  c.expect(max_abs_diff(dual, dual_ref) <= 1e-12, "canonical dual");
  c.detail = c.ok ? fmt::format("max deviation {:.2e}", std::max({max_abs_diff(s, s_ref), max_abs_diff(sinv, sinv_ref),
                                                                   max_abs_diff(dual, dual_ref)}))
                  : c.detail;
  return c;
}

// 2. Verdicts: worked example and the 25 x 25 grid of the three-vector family.
Check scalability_verdicts() {
  Check c;
  const Frame f = worked_example();
  const ScalingResult r = decide_scalable(f);
  c.expect(!r.scalable() && r.certificate_y && hull_certificate_check(f, *r.certificate_y), "worked example");

  constexpr double pi = std::numbers::pi, eps = 1e-8;
  int compared = 0, disagreements = 0;
  for (int i = 0; i < 25; ++i) {
    for (int j = 0; j < 25; ++j) {
      const double theta = pi * i / 24, psi = pi * j / 24;
      if (theta > psi) continue;
      std::optional<Frame> g;
      try {
        g = three_vector_frame(theta, psi);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotSpanning) throw;
        continue;
      }
      const bool expect = theta >= -eps && theta <= pi / 2 + eps && psi >= pi / 2 - eps && psi <= theta + pi / 2 + eps;
      const ScalingResult res = decide_scalable(*g);
      ++compared;
      if (res.scalable() != expect) ++disagreements;
    }
  }
  c.expect(disagreements == 0, fmt::format("{} grid disagreements", disagreements));
  if (c.ok) c.detail = fmt::format("{} grid frames, 0 disagreements", compared);
  return c;
}

// 3. Cofactor vector of the three-vector family against the closed form.
Check cofactor_formula() {
  Check c;
  oracle::Rng rng(2024);
  double worst = 0.0;
  int done = 0;
  while (done < 50) {
    const double theta = rng.uniform(0.05, std::numbers::pi - 0.05), psi = rng.uniform(0.05, std::numbers::pi - 0.05);
    if (std::abs(theta - psi) < 0.05) continue;
    const CofactorScaling cs = cofactor_scaling(three_vector_frame(theta, psi));
    const oracle::Vec ref{std::sin(2 * (psi - theta)), -std::sin(2 * psi), std::sin(2 * theta)};
    const Vector& v = cs.report.cofactor_vector;
    const double s = oracle::dot(v, ref) / oracle::norm2(ref);
    c.expect(s != 0.0, "zero scalar");
    double diff = 0.0;
    for (std::size_t k = 0; k < 3; ++k) diff += (v[k] - s * ref[k]) * (v[k] - s * ref[k]);
    worst = std::max(worst, std::sqrt(diff / oracle::norm2(v)));
    ++done;
  }
  c.expect(worst <= 1e-8, fmt::format("relative error {:.2e}", worst));
  if (c.ok) c.detail = fmt::format("50 pairs, worst relative error {:.2e}", worst);
  return c;
}

// 4. Codimension-two example.
Check codim2_example() {
  Check c;
  const double al = deg(30), be = deg(100), ga = deg(110);
  const Frame f = frame_of({{1, 0}, oracle::unit_from_angle(al), oracle::unit_from_angle(be), oracle::unit_from_angle(ga)});
  const Codim2Scaling cs = codim2_scaling(f);
  c.expect(cs.result.verdict == Verdict::StrictlyScalable, "verdict");
  c.expect(cs.result.scalars_a && is_tight(scaled_synthesis(f, *cs.result.scalars_a), 1e-8).tight(), "tightness");
  const Codim2Pencil pen = codim2_pencil(f, Vector{0, 0, 1, 0}, Vector{0, 0, 0, 1});
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double t = 2 * std::numbers::pi * k / 20 + 0.1;
    const Vector a = pen.at(t);
    const oracle::Vec ref{std::sin(t) * std::sin(2 * be - 2 * al) + std::cos(t) * std::sin(2 * al - 2 * ga),
                          std::cos(t) * std::sin(2 * ga) - std::sin(t) * std::sin(2 * be),
                          std::sin(t) * std::sin(2 * al), -std::cos(t) * std::sin(2 * al)};
    for (std::size_t j = 0; j < 4; ++j) worst = std::max(worst, std::abs(a[j] - ref[j]));
  }
  c.expect(worst <= 1e-10, fmt::format("A_j deviation {:.2e}", worst));
  if (c.ok) c.detail = fmt::format("strictly scalable at t = {:.6f}, A_j deviation {:.2e}", cs.t.value_or(NAN), worst);
  return c;
}

// 5. Diagram inner-product and norm identities.
Check diagram_identity() {
  Check c;
  oracle::Rng rng(5);
  double worst = 0.0, worst_norm = 0.0;
  for (std::size_t n = 2; n <= 8; ++n) {
    for (int k = 0; k < 1000; ++k) {
      const oracle::Vec x = rng.normal_vector(n), y = rng.normal_vector(n);
      const Vector dx = diagram_vector(x, DiagramKind::Full).entries, dy = diagram_vector(y, DiagramKind::Full).entries;
      const double scale = 1.0 + oracle::norm2(x) * oracle::norm2(y);
      worst = std::max(worst, std::abs(oracle::dot(dx, dy) - oracle::diagram_identity_rhs(x, y)) / scale);
      worst_norm = std::max(worst_norm, std::abs(std::sqrt(oracle::norm2(dx)) - oracle::norm2(x)) /
                                            std::max(1.0, oracle::norm2(x)));
    }
  }
  c.expect(worst <= 1e-9, fmt::format("identity residual {:.2e}", worst));
  c.expect(worst_norm <= 1e-9, fmt::format("norm residual {:.2e}", worst_norm));
  if (c.ok) c.detail = fmt::format("7000 pairs, scaled residual {:.2e}, norm residual {:.2e}", worst, worst_norm);
  return c;
}

// 6. Frame potential lower bound and equality on unit-norm tight frames.
Check frame_potential_bound() {
  Check c;
  double slack = 1e300;
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + k % 7, m = n + k % 9;
    const Frame f = random_unit_frame(n, m, 1000 + k);
    slack = std::min(slack, frame_potential(f) - static_cast<double>(m * m) / n);
  }
  c.expect(slack >= -1e-9, fmt::format("bound violated by {:.2e}", -slack));

  std::vector<Frame> tight;
  for (std::size_t n = 2; n <= 8; ++n) tight.emplace_back(Matrix::identity(n));
  tight.push_back(harmonic_frame(3));
  tight.push_back(harmonic_frame(7));
  for (std::size_t n : {2u, 4u, 8u}) tight.emplace_back((1.0 / std::sqrt(double(n))) * sylvester_hadamard(n));
  double worst = 0.0;
  for (const Frame& f : tight) {
    const double m = static_cast<double>(f.size()), n = static_cast<double>(f.dimension());
    worst = std::max(worst, std::abs(frame_potential(f) - m * m / n));
  }
  c.expect(worst <= 1e-7, fmt::format("tight-frame deviation {:.2e}", worst));
  if (c.ok) c.detail = fmt::format("min slack {:.3e}; tight deviation {:.2e}", slack, worst);
  return c;
}

// 7. W/V decomposition.
Check wv_decomposition() {
  Check c;
  for (std::size_t n : {2u, 4u, 8u}) c.expect(!find_W_element(hadamard_doubled(n)).member(), "Hadamard W not empty");

  oracle::Rng rng(7);
  for (int k = 0; k < 50; ++k) {
    const Frame f = random_frame(rng, 2 + k % 5, 8);
    const Frame g(frame_operator(f).spectral.eigenvectors.transpose() * f.synthesis());
    const ConeMembership v = find_V_element(g);
    c.expect(v.member() && is_in_V(g, v.a).member(), "eigenbasis frame without V element");
  }

  int disagreements = 0, scalable = 0;
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 2 + k % 3, m = n + (k / 3) % (9 - n);
    const Frame f = k % 2 ? random_scalable_frame(rng, n, m) : random_frame(rng, n, m);
    const bool a = intersection_scalability(f).scalable(), b = decide_scalable(f).scalable();
    if (a != b) ++disagreements;
    if (b) ++scalable;
  }
  c.expect(disagreements == 0, fmt::format("{} disagreements", disagreements));
  if (c.ok) c.detail = fmt::format("500 frames ({} scalable), 0 disagreements", scalable);
  return c;
}

// Certificate for "S^2 is not a nonnegative combination of x_i x_i^T":
// symmetric Y with x_i^T Y x_i >= 0 and <Y, S^2> < 0.
bool dual_certificate_holds(const Frame& f, const Vector& y) {
  const std::size_t n = f.dimension();
  oracle::Mat ym = oracle::zeros(n, n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j, ++k) ym[i][j] = ym[j][i] = i == j ? y[k] : y[k] / std::sqrt(2.0);
  const std::vector<oracle::Vec> xs = vectors_of(f);
  const oracle::Mat s = oracle::frame_operator(xs), s2 = oracle::multiply(s, s);
  double scale = 0.0, pairing = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      pairing += ym[i][j] * s2[i][j];
      scale = std::max(scale, std::abs(ym[i][j]));
    }
  for (const auto& x : xs) {
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) q += x[i] * ym[i][j] * x[j];
    if (q < -1e-10 * scale) return false;
  }
  return pairing < 0.0;
}

// 8. Dual-frame results.
Check dual_results() {
  Check c;
  oracle::Rng rng(8);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 2 + k % 4, m = n + 1 + k % 5;
    const Frame f = random_scalable_frame(rng, n, m);
    const ScalingResult r = decide_scalable(f, true);
    if (!r.scalable()) {
      c.expect(false, "constructed frame reported not scalable");
      break;
    }
    const Vector a = parseval_scalars(f, *r.weights_c);
    const DualPair alt = alternate_dual_from_scaling(f, a);
    c.expect(is_dual(f, alt.dual, 1e-8), "a_i^2 x_i is not a dual");
    Matrix back = alt.dual.synthesis();
    for (std::size_t k = 0; k < alt.kept.size(); ++k)
      for (std::size_t r = 0; r < n; ++r) back(r, k) /= a[alt.kept[k]];
    c.expect(is_tight(back).parseval(1e-8), "rescaled dual not Parseval");
  }

  const Frame p = worked_example();
  const DualScalingReport rep = canonical_dual_scalable(p);
  c.expect(rep.feasible, "worked example dual not scalable");
  if (rep.feasible) {
    const Vector& w = *rep.weights_c;
    c.expect(std::abs(w[0] - 1) <= 1e-8 && std::abs(w[1] - 1) <= 1e-8 && std::abs(w[2] - 56) <= 1e-6, "c != (1,1,56)");
    Matrix dual = canonical_dual(p).dual.synthesis();
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t r = 0; r < 2; ++r) dual(r, i) *= (*rep.scalars_a)[i];
    c.expect(is_tight(dual).parseval(1e-8), "scaled dual not Parseval");
  }

  const Frame cx = p1_counterexample(4);
  c.expect(decide_scalable(cx).scalable(), "counterexample frame not scalable");
  const DualScalingReport cxrep = canonical_dual_scalable(cx);
  c.expect(!cxrep.feasible && cxrep.certificate && dual_certificate_holds(cx, *cxrep.certificate),
           "counterexample dual not certified");
  if (c.ok) c.detail = "100 random scalable frames; c = (1,1,56); counterexample dual certified not scalable";
  return c;
}

// 9. Planar corpus against the grid and gap oracles.
Check oracle_equivalence() {
  Check c;
  oracle::Rng rng(9);
  int frames = 0, yes = 0, grid_mismatch = 0, gap_mismatch = 0;
  while (frames < 40) {
    const std::size_t m = 3 + frames % 3;
    oracle::Vec angles;
    for (std::size_t i = 0; i < m; ++i) angles.push_back(deg(std::floor(rng.uniform(0.0, 360.0))));
    // Keep the corpus away from the scalability boundary (largest line gap near 90 degrees)
    // so the grid oracle's resolution separates the two verdicts.
    if (oracle::plane_scalable_by_gaps(angles, deg(15)) != oracle::plane_scalable_by_gaps(angles, -deg(15))) continue;
    std::vector<oracle::Vec> vs;
    for (double a : angles) vs.push_back(oracle::unit_from_angle(a));
    std::optional<Frame> f;
    try {
      f = frame_of(vs);
    } catch (const Error&) {
      continue;
    }
    ++frames;
    const bool verdict = decide_scalable(*f).scalable();
    const bool grid = oracle::simplex_grid_min_defect(vs, 60) <= 0.06;
    if (verdict) ++yes;
    if (verdict != grid) ++grid_mismatch;
    if (verdict != oracle::plane_scalable_by_gaps(angles)) ++gap_mismatch;
  }
  c.expect(grid_mismatch == 0, fmt::format("{} grid mismatches", grid_mismatch));
  c.expect(gap_mismatch == 0, fmt::format("{} gap mismatches", gap_mismatch));
  if (c.ok) c.detail = fmt::format("40 frames ({} scalable), both oracles agree", yes);
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 10. Byte-identical JSON across repeated CLI runs.
Check determinism() {
  Check c;
  std::vector<fs::path> corpus;
  for (const auto& e : fs::directory_iterator(g_data_dir))
    if (e.path().extension() == ".frame" && e.path().filename().string().rfind("malformed", 0) != 0)
      corpus.push_back(e.path());
  std::sort(corpus.begin(), corpus.end());
  c.expect(!corpus.empty(), "empty golden corpus");

  const fs::path tmp = fs::temp_directory_path() / fmt::format("framescale_acceptance_{}", std::rand());
  fs::create_directories(tmp);
  for (const auto& file : corpus) {
    std::string first;
    for (int run = 0; run < 3; ++run) {
      const fs::path out = tmp / fmt::format("{}.{}.json", file.stem().string(), run);
      const std::string cmd = fmt::format("\"{}\" --json analyze \"{}\" > \"{}\"", g_cli.string(), file.string(), out.string());
      c.expect(std::system(cmd.c_str()) == 0, "analyze failed on " + file.filename().string());
      const std::string text = slurp(out);
      if (run == 0)
        first = text;
      else
        c.expect(text == first && !text.empty(), "output differs for " + file.filename().string());
    }
    // In-process report matches the CLI bytes.
    c.expect(dump_json(analysis_report(read_frame_document(file), ReportOptions{})) == first,
             "library and CLI differ on " + file.filename().string());
  }
  fs::remove_all(tmp);
  if (c.ok) c.detail = fmt::format("{} files x 3 runs byte-identical", corpus.size());
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <data dir> <framescale executable>\n";
    return 2;
  }
  g_data_dir = argv[1];
  g_cli = argv[2];

  const std::vector<std::pair<const char*, std::function<Check()>>> criteria{
      {"frame operator regression", frame_operator_regression},
      {"scalability verdicts", scalability_verdicts},
      {"cofactor formula", cofactor_formula},
      {"codimension-two example", codim2_example},
      {"diagram inner-product identity", diagram_identity},
      {"frame potential bound", frame_potential_bound},
      {"W/V decomposition", wv_decomposition},
      {"dual frame results", dual_results},
      {"oracle equivalence", oracle_equivalence},
      {"determinism", determinism},
  };

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
      c = criteria[k].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!c.ok) ++failed;
    std::cout << fmt::format("[{}] {:2d}. {} ({}, {:.2f}s)\n", c.ok ? "PASS" : "FAIL", k + 1, criteria[k].first,
                             c.detail, secs);
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
