#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "closurelab/models.hpp"

namespace closurelab {

/// Closed convex hull of p minus the open strip.
Polyhedron split_hull(const Polyhedron& p, const SplitSet& s);
/// Hull over the sign-pattern pieces that avoid every member strip.
Polyhedron kbranch_hull(const Polyhedron& p, const MultiBranchSplit& m);
/// Hull over the pieces p ∩ {row_j·x >= rhs_j}.
Polyhedron latticefree_hull(const Polyhedron& p, const LatticeFreeBody& l);
Polyhedron disjunctive_hull(const Polyhedron& p, const Disjunction& d);

enum class FamilyKind { Split, KBranch, LatticeFree };

std::string to_string(FamilyKind kind);

/**
 * Finite family of lattice-free objects.
 *
 * Split directions are the nonzero integer vectors with max-norm at most
 * `coeff_bound`; offsets are those whose strip meets the polyhedron. With
 * `dedup` set, each strip appears once (sign-canonical pi) and non-primitive
 * directions are skipped, since their strips lie inside a primitive one.
 * k-branch members are the k-subsets of the split family. Lattice-free
 * members are bodies with 2..k rows whose recession cone equals their
 * lineality space, certified lattice-free over all of Z^n and maximal within
 * the enumeration window.
 */
struct FamilySpec {
  FamilyKind kind = FamilyKind::Split;
  int k = 1;
  int coeff_bound = 1;
  std::optional<long long> offset_bound;  // |pi0| cap on top of the derived range
  bool dedup = true;

  void validate() const;
  std::string str() const;
};

std::vector<Vec> split_directions(Eigen::Index n, int coeff_bound, bool dedup,
                                 std::size_t cap = enumeration_cap());

/// Offsets pi0 whose strip meets p: floor(min pi·v) <= pi0 <= ceil(max pi·v) - 1 over vertices v.
std::vector<SplitSet> enumerate_splits(const Polyhedron& p, int coeff_bound, std::optional<long long> offset_bound,
                                       bool dedup, std::size_t cap = enumeration_cap());

/// Family members relevant to p, in canonical order.
std::vector<Disjunction> enumerate_family(const Polyhedron& p, const FamilySpec& f,
                                          std::size_t cap = enumeration_cap());

/// Exact check that {x : row·x < rhs for all rows} has no integer point.
/// Requires the recession cone of the closed body to equal its lineality space.
bool certify_lattice_free(const std::vector<LinearInequality>& rows);

struct ClosureResult {
  Polyhedron polyhedron;
  FamilySpec family;
  std::size_t family_size = 0;
  std::size_t disjunctions_used = 0;  // members whose hull cuts p
  bool restricted = true;
};

/// Intersection of the hulls of p over the given members; `family` is left at its default.
ClosureResult closure_over(const Polyhedron& p, const std::vector<Disjunction>& family);
/// Intersection of the hulls of p over every family member.
ClosureResult enumerated_closure(const Polyhedron& p, const FamilySpec& f, std::size_t cap = enumeration_cap());

/// Chvátal-Gomory cut from multipliers on the structural rows.
CutInequality cg_cut(const NonnegModel& p, const Vec& lambda);

/// Single row (1 - alpha) row_1 + alpha row_2 with the model's sense.
LinearInequality aggregated_row(const NonnegModel& p, const Rational& alpha);

/// Integer hull of {x >= 0 : aggregated_row(p, alpha)}.
Polyhedron aggregation_relaxation(const NonnegModel& p, const Rational& alpha);

/// Closed interval of weights in [0, 1]; `empty` when no weight qualifies.
struct WeightInterval {
  bool empty = true;
  Rational lo, hi;

  bool contains(const Rational& a) const { return !empty && lo <= a && a <= hi; }
};

/// Weights alpha for which the integer point z belongs to aggregation_relaxation(p, alpha).
WeightInterval aggregation_membership(const NonnegModel& p, const Vec& z);

/// conv(p ∩ Z^n). Unbounded p is allowed when its rays and lines are rational (always true here).
Polyhedron integer_hull(const Polyhedron& p, std::size_t cap = enumeration_cap());

}  // namespace closurelab
