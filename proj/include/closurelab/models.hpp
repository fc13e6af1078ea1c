#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "closurelab/polyhedron.hpp"

namespace closurelab {

enum class ModelKind { Packing, Covering };

std::string to_string(ModelKind kind);

/**
 * {x >= 0 : A x <= b} (packing) or {x >= 0 : A x >= b} (covering) with
 * nonnegative data. Coordinates listed in `fixed_zero` are additionally pinned
 * to 0; this only arises from normalizing an ill-behaved packing system.
 */
class NonnegModel {
 public:
  NonnegModel(ModelKind kind, Mat a, Vec b, std::vector<bool> fixed_zero = {});

  static NonnegModel packing(Mat a, Vec b) { return {ModelKind::Packing, std::move(a), std::move(b)}; }
  static NonnegModel covering(Mat a, Vec b) { return {ModelKind::Covering, std::move(a), std::move(b)}; }

  ModelKind kind() const { return kind_; }
  bool is_packing() const { return kind_ == ModelKind::Packing; }
  Eigen::Index dim() const { return a_.cols(); }
  Eigen::Index num_rows() const { return a_.rows(); }
  const Mat& A() const { return a_; }
  const Vec& b() const { return b_; }
  const std::vector<bool>& fixed_zero() const { return fixed_zero_; }

  /// Structural row i with the model's sense.
  LinearInequality row(Eigen::Index i) const;
  std::vector<LinearInequality> rows() const;
  HRep hrep() const;
  const Polyhedron& polyhedron() const { return poly_; }

  /// Optimization direction natural for the kind: max for packing, min for covering.
  ObjectiveSense objective_sense() const {
    return is_packing() ? ObjectiveSense::Max : ObjectiveSense::Min;
  }

  friend bool operator==(const NonnegModel& x, const NonnegModel& y) {
    return x.kind_ == y.kind_ && x.a_ == y.a_ && vec_equal(x.b_, y.b_) && x.fixed_zero_ == y.fixed_zero_;
  }

 private:
  ModelKind kind_;
  Mat a_;
  Vec b_;
  std::vector<bool> fixed_zero_;
  Polyhedron poly_;
};

/// Covering: every A_ij <= b_i. Packing: every unit vector of a free coordinate is feasible.
bool is_well_behaved(const NonnegModel& p);

/// Covering: clamp A_ij to b_i. Packing: pin every x_j whose unit vector is infeasible to 0.
NonnegModel normalize_well_behaved(const NonnegModel& p);

/// Index set T ⊆ {0, ..., n-1}.
using IndexSet = std::vector<Eigen::Index>;

/// u with the coordinates in T set to 0.
Vec breve(const Vec& u, const IndexSet& t);

/// Open strip {pi0 < pi·x < pi0 + 1} with integer data.
struct SplitSet {
  Vec pi;
  Rational pi0;

  SplitSet() = default;
  SplitSet(Vec p, Rational p0);

  Eigen::Index dim() const { return pi.size(); }
  /// pi·x <= pi0.
  LinearInequality left() const { return {pi, pi0, Sense::Leq}; }
  /// pi·x >= pi0 + 1.
  LinearInequality right() const { return {pi, pi0 + Rational(1), Sense::Geq}; }
  bool contains(const Vec& x) const;
  /// The same strip written with the lexicographically larger of ±pi.
  SplitSet canonical() const;
  std::string str() const;

  friend bool operator==(const SplitSet& a, const SplitSet& b) { return a.pi0 == b.pi0 && vec_equal(a.pi, b.pi); }
};

/// Union of split sets.
struct MultiBranchSplit {
  std::vector<SplitSet> splits;

  Eigen::Index dim() const { return splits.front().dim(); }
  bool contains(const Vec& x) const;
  std::string str() const;
};

/**
 * Closed body L = {x : row_j·x <= rhs_j} with integer data; the removed set is
 * the interior int(L) = {x : row_j·x < rhs_j for all j}.
 */
struct LatticeFreeBody {
  std::vector<LinearInequality> rows;  // <= form

  LatticeFreeBody() = default;
  explicit LatticeFreeBody(std::vector<LinearInequality> r);

  Eigen::Index dim() const { return rows.front().dim(); }
  bool interior_contains(const Vec& x) const;
  std::string str() const;
};

using Disjunction = std::variant<SplitSet, MultiBranchSplit, LatticeFreeBody>;

std::string describe(const Disjunction& d);
/// True iff x lies in the removed open set.
bool removed_contains(const Disjunction& d, const Vec& x);
Eigen::Index dim_of(const Disjunction& d);

/// (M ∩ H[T]) + span{e_j : j in T}; nullopt marks the empty set.
std::optional<SplitSet> restrict_M_T(const SplitSet& s, const IndexSet& t);
std::optional<MultiBranchSplit> restrict_M_T(const MultiBranchSplit& m, const IndexSet& t);
std::optional<LatticeFreeBody> restrict_M_T(const LatticeFreeBody& l, const IndexSet& t);

/// Integer box [lo, hi] (inclusive).
struct IntBox {
  std::vector<long long> lo, hi;

  std::size_t count() const;
};

/// Calls f on every integer point of the box; throws CapExceeded above `cap` points.
void for_each_lattice_point(const IntBox& box, std::size_t cap, const std::function<void(const Vec&)>& f);

/// True iff no integer point of the box lies in the removed open set.
bool is_strict_lattice_free(const Disjunction& d, const IntBox& box, std::size_t cap = enumeration_cap());

/// Smallest integer box containing the vertices of a polytope, widened by `margin`.
IntBox bounding_box(const Polyhedron& p, long long margin = 0);

/// A valid inequality together with the object it came from.
struct CutInequality {
  LinearInequality ineq;
  std::string source;     // "split S(...)", "cg", "aggregation", ...
  Vec multipliers;        // CG multipliers when source == "cg"
  std::optional<Rational> weight;  // aggregation weight
  bool redundant = false;  // trivial 0 <= 0 / 0 >= 0 row
};

}  // namespace closurelab
