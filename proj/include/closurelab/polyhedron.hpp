#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "closurelab/errors.hpp"
#include "closurelab/rational.hpp"

namespace closurelab {

enum class Sense { Leq, Geq };

/// coeffs·x (<= | >=) rhs.
struct LinearInequality {
  Vec coeffs;
  Rational rhs;
  Sense sense = Sense::Leq;

  LinearInequality() = default;
  LinearInequality(Vec a, Rational b, Sense s = Sense::Leq) : coeffs(std::move(a)), rhs(std::move(b)), sense(s) {}

  Eigen::Index dim() const { return coeffs.size(); }
  LinearInequality as_leq() const;
  LinearInequality as_geq() const;
  /// Primitive integer form with the same sense.
  LinearInequality normalized() const;
  Rational lhs(const Vec& x) const { return dot(coeffs, x); }
  bool satisfied_by(const Vec& x) const;
  bool tight_at(const Vec& x) const { return lhs(x) == rhs; }
  bool has_zero_coeffs() const { return is_zero(coeffs); }
  std::string str() const;

  friend bool operator==(const LinearInequality& a, const LinearInequality& b) {
    return a.sense == b.sense && a.rhs == b.rhs && vec_equal(a.coeffs, b.coeffs);
  }
};

/// Inequality description. With `nonneg` set, x >= 0 is implied.
struct HRep {
  Eigen::Index dim = 0;
  std::vector<LinearInequality> rows;
  bool nonneg = false;

  /// All rows in <= form, including the implied nonnegativity rows.
  std::vector<LinearInequality> leq_rows() const;
  void validate() const;
};

/// Generator description: conv(vertices) + cone(rays) + span(lines).
struct VRep {
  Eigen::Index dim = 0;
  std::vector<Vec> vertices;
  std::vector<Vec> rays;
  std::vector<Vec> lines;

  void validate() const;
};

/**
 * Rational polyhedron carrying both representations.
 *
 * Construction always runs the conversion, so both sides are available and
 * canonical: facets are primitive integer rows in <= form reduced modulo the
 * affine hull equations, equations are in reduced echelon form, vertices and
 * rays are extreme and lexicographically sorted. Two polyhedra describe the
 * same set iff their canonical forms are identical.
 */
class Polyhedron {
 public:
  Polyhedron() = default;

  static Polyhedron from_h(const HRep& h);
  static Polyhedron from_v(const VRep& v);
  static Polyhedron empty(Eigen::Index dim);
  static Polyhedron orthant(Eigen::Index dim);
  static Polyhedron point(const Vec& x);

  Eigen::Index dim() const { return dim_; }
  bool is_empty() const { return empty_; }
  bool is_bounded() const { return v_.rays.empty() && v_.lines.empty(); }
  bool is_pointed() const { return v_.lines.empty(); }
  /// Affine dimension; -1 for the empty set.
  Eigen::Index affine_dim() const { return affine_dim_; }

  const std::vector<LinearInequality>& facets() const { return facets_; }
  /// Equations a·x = b, stored with sense Leq.
  const std::vector<LinearInequality>& equations() const { return equations_; }
  /// Canonical inequality description (equations appear as <= and >= pairs).
  HRep hrep() const;
  const VRep& vrep() const { return v_; }

  bool contains(const Vec& x) const;
  /// Rows of the canonical description in <= form (facets, then both sides of equations).
  std::vector<LinearInequality> leq_rows() const;

  std::string str() const;

  friend bool operator==(const Polyhedron& a, const Polyhedron& b);

 private:
  friend Polyhedron intersect_rows(const Polyhedron& p, const std::vector<LinearInequality>& rows);
  friend Polyhedron scale(const Polyhedron& p, const Rational& alpha);

  static Polyhedron assemble(Eigen::Index dim, const std::vector<Vec>& homog_gens, const std::vector<Vec>& lines,
                             const std::vector<LinearInequality>& candidate_rows, bool generators_extreme);

  Eigen::Index dim_ = 0;
  bool empty_ = true;
  Eigen::Index affine_dim_ = -1;
  std::vector<LinearInequality> facets_;
  std::vector<LinearInequality> equations_;
  VRep v_;
};

/// Exact vertex enumeration (H -> V), returning the minimal generator list.
VRep dd_convert(const HRep& h);
/// Irredundant inequality description of the closed convex hull of generators.
HRep dd_convert(const VRep& v);

/// true iff inner ⊆ outer.
bool contains_polyhedron(const Polyhedron& outer, const Polyhedron& inner);

/// A point of `inner` outside `outer`, if one exists (a vertex, or a vertex pushed along an escaping ray).
std::optional<Vec> containment_witness(const Polyhedron& outer, const Polyhedron& inner);

/// {alpha x : x in p}, alpha > 0.
Polyhedron scale(const Polyhedron& p, const Rational& alpha);

Polyhedron intersect(const Polyhedron& a, const Polyhedron& b);
/// p ∩ {rows}; reuses p's generators when p is pointed.
Polyhedron intersect_rows(const Polyhedron& p, const std::vector<LinearInequality>& rows);

/// Closed convex hull of a union; empty pieces are dropped.
Polyhedron closed_convex_hull_union(const std::vector<Polyhedron>& pieces);

enum class ObjectiveSense { Max, Min };

struct LpOutcome {
  enum class Status { Optimal, Unbounded, Infeasible };
  Status status = Status::Infeasible;
  Rational value;
  Vec point;  // optimal vertex (lexicographically smallest among optimal)
  Vec ray;    // improving direction when unbounded

  bool optimal() const { return status == Status::Optimal; }
};

LpOutcome optimize(const Polyhedron& p, const Vec& c, ObjectiveSense sense);

}  // namespace closurelab
