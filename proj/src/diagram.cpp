#include "framescale/diagram.hpp"

#include <cmath>

#include "framescale/error.hpp"

namespace framescale {

std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) {
  // Pairs starting with 0..i-1 come first: sum_{k<i} (n-1-k).
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

std::size_t reduced_diagram_rows(std::size_t n) { return (n - 1) * (n + 2) / 2; }

DiagramVector diagram_vector(std::span<const double> x, DiagramKind kind) {
  const std::size_t n = x.size();
  if (n < 2) throw Error(ErrorKind::DimensionTooSmall, "diagram vectors need n >= 2");
  if (!all_finite(x)) throw Error(ErrorKind::NonFinite, "diagram vector input");
  const double inv = 1.0 / std::sqrt(static_cast<double>(n - 1));
  const double product_scale = std::sqrt(2.0 * static_cast<double>(n)) * inv;

  DiagramVector out{kind, n, {}};
  out.entries.reserve(kind == DiagramKind::Full ? n * (n - 1) : reduced_diagram_rows(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (kind == DiagramKind::Reduced && i > 0) break;
      out.entries.push_back((x[i] * x[i] - x[j] * x[j]) * inv);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.entries.push_back(product_scale * x[i] * x[j]);
  return out;
}

namespace {

Matrix diagram_columns(const Frame& f, DiagramKind kind) {
  const std::size_t n = f.dimension();
  if (n < 2) throw Error(ErrorKind::DimensionTooSmall, "diagram matrices need n >= 2");
  const std::size_t rows = kind == DiagramKind::Full ? n * (n - 1) : reduced_diagram_rows(n);
  Matrix out(rows, f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out.set_column(i, diagram_vector(f.vector(i), kind).entries);
  return out;
}

}  // namespace

ReducedDiagramMatrix reduced_diagram_matrix(const Frame& f) {
  return {f.dimension(), diagram_columns(f, DiagramKind::Reduced)};
}

Matrix full_diagram_matrix(const Frame& f) { return diagram_columns(f, DiagramKind::Full); }

double diagram_inner_identity_check(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "vectors differ in length");
  const double n = static_cast<double>(x.size());
  const auto dx = diagram_vector(x, DiagramKind::Full);
  const auto dy = diagram_vector(y, DiagramKind::Full);
  const double ip = dot(x, y);
  const double lhs = (n - 1.0) * dot(dx.entries, dy.entries);
  const double rhs = n * ip * ip - dot(x, x) * dot(y, y);
  return std::abs(lhs - rhs);
}

double diagram_gram_sum(const Frame& f) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (std::abs(norm(f.vector(i)) - 1.0) > 1e-9) {
      throw Error(ErrorKind::NotUnitNorm, "vector " + std::to_string(i) + " is not unit norm");
    }
  const Matrix theta = full_diagram_matrix(f);
  Vector total(theta.rows(), 0.0);
  for (std::size_t r = 0; r < theta.rows(); ++r)
    for (std::size_t i = 0; i < theta.cols(); ++i) total[r] += theta(r, i);
  // sum_{i,j} <x~_i, x~_j> = |sum_i x~_i|^2
  return dot(total, total);
}

}  // namespace framescale
