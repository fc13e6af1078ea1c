#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "closurelab/closures.hpp"

namespace closurelab {

/// Optimal values for one cost vector. Gap is z_lp/z_int (packing) or z_int/z_lp (covering).
struct GapReport {
  Vec cost;
  ModelKind kind = ModelKind::Packing;
  Rational z_lp;
  Rational z_int;
  std::optional<Rational> z_closure;
  std::optional<Rational> gap;          // absent when the ratio is infinite
  std::optional<Rational> closure_ratio;  // same orientation as gap, LP against closure
  std::optional<FamilySpec> family;
  bool restricted = false;
  std::string note;
};

/// Exact LP and integer optima; the integer hull is computed by lattice enumeration.
GapReport integrality_gap(const NonnegModel& p, const Vec& c, std::size_t cap = enumeration_cap());
/// Same, reusing a known integer hull and optionally a closure.
GapReport gap_report(const NonnegModel& p, const Polyhedron& integer_hull, const Vec& c,
                     const ClosureResult* closure = nullptr);

/// Factor of a family: 2 for splits, min{2^k, n}+1 for k-branch, min{k, n}+1 for lattice-free.
Rational family_alpha(const FamilySpec& f, Eigen::Index n);
/// Scale used by the per-disjunction check: the family factor for packing, 1/2 for covering splits.
Rational verification_alpha(ModelKind kind, const FamilySpec& f, Eigen::Index n);

/// The all-ones vector, every unit vector, and every structural row.
std::vector<Vec> default_costs(const NonnegModel& p);

struct RankBoundReport {
  long long lower = 0;
  std::optional<long long> upper;
  Rational alpha;
  std::string formula;
  std::vector<GapReport> gaps;  // one per cost with a finite positive gap
  std::optional<FamilySpec> family;
  int max_iter = 0;
};

/// max over costs of ceil(log(gap) / log(alpha)), computed exactly; a finite-cost lower bound.
RankBoundReport rank_lower_bound(const NonnegModel& p, const std::vector<Vec>& costs, const Rational& alpha,
                                 const std::string& formula = "log-ratio", std::size_t cap = enumeration_cap());
/// Same with a known integer hull.
RankBoundReport rank_lower_bound(const NonnegModel& p, const Polyhedron& integer_hull, const std::vector<Vec>& costs,
                                 const Rational& alpha, const std::string& formula = "log-ratio");

/// Rounds of the restricted closure needed to reach the integer hull, or nullopt after max_iter.
std::optional<long long> iterated_closure_rank(const Polyhedron& p, const Polyhedron& integer_hull,
                                               const FamilySpec& f, int max_iter, std::size_t cap = enumeration_cap());

struct ApproxVerdict {
  Rational alpha;
  bool holds = true;
  std::optional<Vec> witness;  // point of p outside alpha·hull
  std::string disjunction;
};

/// p ⊆ alpha·hull(p, d). For covering sets alpha <= 1 is the meaningful range
/// (1/2 for splits): every c·x over p is then at least alpha times the hull optimum.
ApproxVerdict check_disjunction(const Polyhedron& p, const Disjunction& d, const Rational& alpha);

/// One verdict per family member, in family order; refuses ill-behaved input.
std::vector<ApproxVerdict> verify_alpha_per_disjunction(const NonnegModel& p, const FamilySpec& f,
                                                        const Rational& alpha);

/// Packing tight example with parameter M, or covering tight example with parameter n.
GapReport tightness_experiment(ModelKind kind, long long param);

/// p ⊆ (min{m,n}+1)·p^I, checked per cost and as a set.
ApproxVerdict verify_int_gap_bound(const NonnegModel& p, const std::vector<Vec>& costs);

/// First facet of q that is not of covering type or breaks beta_j <= delta, as text.
std::optional<std::string> covering_facet_violation(const Polyhedron& q);

struct WellBehavedSearch {
  std::size_t instances = 0;
  std::size_t facets_checked = 0;
  std::vector<std::string> violations;  // instance descriptor and offending facet
};

/// Looks for facets beta·x >= delta with some beta_j > delta in restricted
/// lattice-free closures of random well-behaved covering instances.
WellBehavedSearch covering_latticefree_search(std::uint64_t seed, std::size_t count, const FamilySpec& f,
                                              long long n = 2, long long m = 2, long long coeff_max = 3);

}  // namespace closurelab
