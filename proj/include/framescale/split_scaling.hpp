#pragma once

#include <cstddef>
#include <vector>

#include "framescale/frame.hpp"
#include "framescale/scalability.hpp"

namespace framescale {

/// Rows of the synthesis matrix and their entrywise products.
///
/// rows[j] = u_j = (x_1(j), ..., x_m(j)); squares[j] = u_j * u_j;
/// cross[pair_index(i, j)] = u_i * u_j for i < j (lexicographic).
struct RowSystem {
  std::vector<Vector> rows;
  std::vector<Vector> squares;
  std::vector<Vector> cross;
};

RowSystem row_system(const Frame& f);

enum class Membership { Member, NotMember };

struct ConeMembership {
  Membership status = Membership::NotMember;
  Vector a;

  bool member() const { return status == Membership::Member; }
};

/// W: a >= 0 with <a, u_j^2> = 1 for every row j (rows of {sqrt(a_i) x_i} have unit norm).
ConeMembership is_in_W(const Frame& f, std::span<const double> a);
ConeMembership find_W_element(const Frame& f);

/// V: a >= 0 with <a, u_i * u_j> = 0 for all i < j (rows of {sqrt(a_i) x_i} orthogonal).
ConeMembership is_in_V(const Frame& f, std::span<const double> a);
/// Searches for a nontrivial V element normalized to sum(a) = 1; V always contains 0.
ConeMembership find_V_element(const Frame& f, bool strict = false);

/// Checks convexity of W on `samples` extra extreme points plus the
/// hyperplane decomposition a = c_j u_j^2 + v_j, v_j perp u_j^2, with
/// c_j |u_j^2|^2 = 1. Throws EmptyW when W has no element.
bool W_geometry_check(const Frame& f, std::size_t samples);

/// W intersect V. A member a gives the Parseval scaling sqrt(a_i).
ScalingResult intersection_scalability(const Frame& f, const Tolerances& tol = {});

/// Verification of the projection-basis characterisation for a W witness:
/// support I of a, maximal independent J among {P_I u_j^2}, and the
/// coefficients expressing every j outside J over J.
struct ProjectionBasisReport {
  std::vector<std::size_t> support;
  std::vector<std::size_t> basis_rows;
  /// For each row outside J: (row index, coefficient sum).
  std::vector<std::pair<std::size_t, double>> coefficient_sums;
  bool holds = false;
};

ProjectionBasisReport projection_basis_check(const Frame& f, std::span<const double> a);

}  // namespace framescale
