#pragma once

#include <cstddef>

#include "framescale/frame.hpp"

namespace framescale {

enum class DiagramKind { Full, Reduced };

/// Quadratic lifting of x in R^n, scaled by 1/sqrt(n-1).
///
/// Entry layout, with coordinate pairs (i, j), i < j, in lexicographic order
/// (1,2), (1,3), ..., (1,n), (2,3), ...:
///   Full:    n(n-1)/2 differences x(i)^2 - x(j)^2, then n(n-1)/2 products
///            sqrt(2n) x(i) x(j).
///   Reduced: only the (1,j) differences (n-1 entries), then all products;
///            (n-1)(n+2)/2 entries in total.
struct DiagramVector {
  DiagramKind kind = DiagramKind::Full;
  std::size_t n = 0;
  Vector entries;
};

/// Throws DimensionTooSmall for n < 2, NonFinite for non-finite input.
DiagramVector diagram_vector(std::span<const double> x, DiagramKind kind);

std::size_t pair_count(std::size_t n);
/// Position of pair (i, j), 0-based with i < j, in the lexicographic pair order.
std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n);
std::size_t reduced_diagram_rows(std::size_t n);

/// Columns are reduced diagram vectors of the frame vectors.
struct ReducedDiagramMatrix {
  std::size_t n = 0;
  Matrix data;
};

ReducedDiagramMatrix reduced_diagram_matrix(const Frame& f);
Matrix full_diagram_matrix(const Frame& f);

/// |(n-1)<x~, y~> - (n<x,y>^2 - |x|^2 |y|^2)| using full diagram vectors.
double diagram_inner_identity_check(std::span<const double> x, std::span<const double> y);

/// sum_{i,j} <x~_i, x~_j> over full diagram vectors of a unit-norm frame.
/// Non-negative, and zero exactly for tight frames. Throws NotUnitNorm.
double diagram_gram_sum(const Frame& f);

}  // namespace framescale
