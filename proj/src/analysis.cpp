#include "closurelab/analysis.hpp"

#include <algorithm>
#include <sstream>

#include "closurelab/catalog.hpp"

namespace closurelab {

namespace {

Rational objective(const Polyhedron& p, const Vec& c, ObjectiveSense sense) {
  const auto out = optimize(p, c, sense);
  if (out.status == LpOutcome::Status::Unbounded) throw PreconditionViolation("objective is unbounded");
  if (out.status == LpOutcome::Status::Infeasible) throw PreconditionViolation("instance is infeasible");
  return out.value;
}

// Ratio oriented so that it is >= 1; nullopt when the denominator vanishes and the numerator does not.
std::optional<Rational> oriented_ratio(const Rational& big, const Rational& small) {
  if (small.is_zero()) {
    if (big.is_zero()) return Rational(1);
    return std::nullopt;
  }
  return big / small;
}

FamilySpec split_family(int coeff_bound) {
  FamilySpec f;
  f.coeff_bound = coeff_bound;
  return f;
}

void require_nonneg_cost(const NonnegModel& p, const Vec& c) {
  if (c.size() != p.dim()) throw DimensionMismatch("cost length differs from instance dimension");
  for (Eigen::Index j = 0; j < c.size(); ++j)
    if (c[j].sign() < 0) throw PreconditionViolation("cost vector must be nonnegative");
}

}  // namespace

GapReport gap_report(const NonnegModel& p, const Polyhedron& integer_hull, const Vec& c, const ClosureResult* closure) {
  require_nonneg_cost(p, c);
  GapReport r;
  r.cost = c;
  r.kind = p.kind();
  const auto sense = p.objective_sense();
  r.z_lp = objective(p.polyhedron(), c, sense);
  r.z_int = objective(integer_hull, c, sense);
  r.gap = p.is_packing() ? oriented_ratio(r.z_lp, r.z_int) : oriented_ratio(r.z_int, r.z_lp);
  if (closure != nullptr) {
    r.z_closure = objective(closure->polyhedron, c, sense);
    r.closure_ratio = p.is_packing() ? oriented_ratio(r.z_lp, *r.z_closure) : oriented_ratio(*r.z_closure, r.z_lp);
    r.family = closure->family;
    r.restricted = closure->restricted;
  }
  return r;
}

GapReport integrality_gap(const NonnegModel& p, const Vec& c, std::size_t cap) {
  return gap_report(p, integer_hull(p.polyhedron(), cap), c);
}

Rational family_alpha(const FamilySpec& f, Eigen::Index n) {
  switch (f.kind) {
    case FamilyKind::Split:
      return Rational(2);
    case FamilyKind::KBranch: {
      const long long pow = f.k >= 62 ? n : (1LL << f.k);
      return Rational(std::min<long long>(pow, n) + 1);
    }
    case FamilyKind::LatticeFree:
      return Rational(std::min<long long>(f.k, n) + 1);
  }
  return Rational(2);
}

Rational verification_alpha(ModelKind kind, const FamilySpec& f, Eigen::Index n) {
  if (kind == ModelKind::Packing) return family_alpha(f, n);
  if (f.kind != FamilyKind::Split) throw PreconditionViolation("covering factor is only known for split families");
  return Rational(1, 2);
}

std::vector<Vec> default_costs(const NonnegModel& p) {
  std::vector<Vec> costs;
  costs.push_back(Vec::Constant(p.dim(), Rational(1)));
  for (Eigen::Index j = 0; j < p.dim(); ++j) costs.push_back(unit_vec(p.dim(), j));
  for (Eigen::Index i = 0; i < p.num_rows(); ++i) costs.push_back(p.A().row(i).transpose());
  return costs;
}

RankBoundReport rank_lower_bound(const NonnegModel& p, const Polyhedron& integer_hull, const std::vector<Vec>& costs,
                                 const Rational& alpha, const std::string& formula) {
  if (alpha <= Rational(1)) throw PreconditionViolation("rank bound needs alpha > 1");
  RankBoundReport rep;
  rep.alpha = alpha;
  rep.formula = formula;
  for (const auto& c : costs) {
    auto g = gap_report(p, integer_hull, c);
    if (!g.gap) {
      g.note = "infinite gap skipped";
    } else {
      rep.lower = std::max<long long>(rep.lower, ceil_log(*g.gap, alpha));
    }
    rep.gaps.push_back(std::move(g));
  }
  return rep;
}

RankBoundReport rank_lower_bound(const NonnegModel& p, const std::vector<Vec>& costs, const Rational& alpha,
                                 const std::string& formula, std::size_t cap) {
  if (alpha <= Rational(1)) throw PreconditionViolation("rank bound needs alpha > 1");
  return rank_lower_bound(p, integer_hull(p.polyhedron(), cap), costs, alpha, formula);
}

std::optional<long long> iterated_closure_rank(const Polyhedron& p, const Polyhedron& integer_hull,
                                               const FamilySpec& f, int max_iter, std::size_t cap) {
  Polyhedron q = p;
  for (long long round = 0;; ++round) {
    if (q == integer_hull) return round;
    if (round >= max_iter) return std::nullopt;
    Polyhedron next = enumerated_closure(q, f, cap).polyhedron;
    // A fixpoint short of the integer hull means the restricted family is too small.
    if (next == q) return std::nullopt;
    q = std::move(next);
  }
}

ApproxVerdict check_disjunction(const Polyhedron& p, const Disjunction& d, const Rational& alpha) {
  if (alpha.sign() <= 0) throw PreconditionViolation("alpha must be positive");
  ApproxVerdict v;
  v.alpha = alpha;
  v.disjunction = describe(d);
  const Polyhedron target = scale(disjunctive_hull(p, d), alpha);
  auto w = containment_witness(target, p);
  if (w) {
    if (!p.contains(*w) || target.contains(*w)) throw std::logic_error("containment witness failed its own check");
    v.holds = false;
    v.witness = std::move(w);
  }
  return v;
}

std::vector<ApproxVerdict> verify_alpha_per_disjunction(const NonnegModel& p, const FamilySpec& f,
                                                        const Rational& alpha) {
  if (!is_well_behaved(p)) throw PreconditionViolation("instance is not well-behaved");
  std::vector<ApproxVerdict> out;
  for (const auto& d : enumerate_family(p.polyhedron(), f)) out.push_back(check_disjunction(p.polyhedron(), d, alpha));
  return out;
}

GapReport tightness_experiment(ModelKind kind, long long param) {
  if (kind == ModelKind::Packing) {
    if (param < 1) throw PreconditionViolation("packing tightness needs M >= 1");
    const auto inst = tight_packing(param);
    const auto& p = inst.model;
    const auto f = split_family(2);
    const auto closure = enumerated_closure(p.polyhedron(), f);
    auto r = gap_report(p, integer_hull(p.polyhedron()), Vec::Constant(2, Rational(1)), &closure);
    // x1 + x2 <= 1 is the left side of S((1,1),1) and also a CG cut with multipliers 1/(M+1).
    const auto cg = cg_cut(p, Vec::Constant(2, Rational(1, 1) / Rational(param + 1)));
    std::ostringstream note;
    note << "closure bound certified by " << cg.ineq.str();
    r.note = note.str();
    return r;
  }
  if (param < 2) throw PreconditionViolation("covering tightness needs n >= 2");
  const auto inst = tight_covering(param);
  const auto& p = inst.model;
  const Vec ones = Vec::Constant(param, Rational(1));
  if (param <= 3) {
    const auto f = split_family(1);
    const auto closure = enumerated_closure(p.polyhedron(), f);
    auto r = gap_report(p, integer_hull(p.polyhedron()), ones, &closure);
    r.note = "restricted split closure over all |pi|_inf <= 1";
    return r;
  }
  // The n-dimensional family is large; the single strip 1 < 1·x < 2 already
  // lifts the bound to 2, and 2e_1 is an integer point of value 2.
  const std::vector<Disjunction> family{SplitSet(ones, Rational(1))};
  auto closure = closure_over(p.polyhedron(), family);
  closure.family = split_family(1);
  const Vec witness = Rational(2) * unit_vec(param, 0);
  if (!p.polyhedron().contains(witness)) throw std::logic_error("2e_1 should be feasible");
  GapReport r;
  r.cost = ones;
  r.kind = p.kind();
  r.z_lp = objective(p.polyhedron(), ones, ObjectiveSense::Min);
  r.z_closure = objective(closure.polyhedron, ones, ObjectiveSense::Min);
  // z_closure <= z_int <= 1·(2e_1) = 2.
  r.z_int = Rational(2);
  if (*r.z_closure != r.z_int) throw std::logic_error("single-split certificate did not reach the integer value");
  r.gap = r.z_int / r.z_lp;
  r.closure_ratio = *r.z_closure / r.z_lp;
  r.family = closure.family;
  r.restricted = true;
  r.note = "closure over S(1,1) only; integer optimum certified by 2e_1";
  return r;
}

ApproxVerdict verify_int_gap_bound(const NonnegModel& p, const std::vector<Vec>& costs) {
  if (!p.is_packing()) throw PreconditionViolation("integer-hull factor is stated for packing instances");
  if (!is_well_behaved(p)) throw PreconditionViolation("instance is not well-behaved");
  const Rational factor(std::min<long long>(p.num_rows(), p.dim()) + 1);
  const auto hull = integer_hull(p.polyhedron());
  ApproxVerdict v;
  v.alpha = factor;
  v.disjunction = "integer hull";
  for (const auto& c : costs) {
    const auto g = gap_report(p, hull, c);
    if (g.z_lp > factor * g.z_int) {
      v.holds = false;
      v.witness = optimize(p.polyhedron(), c, ObjectiveSense::Max).point;
      return v;
    }
  }
  const Polyhedron target = scale(hull, factor);
  if (auto w = containment_witness(target, p.polyhedron())) {
    v.holds = false;
    v.witness = std::move(w);
  }
  return v;
}

std::optional<std::string> covering_facet_violation(const Polyhedron& q) {
  for (const auto& f : q.facets()) {
    const auto g = f.as_geq();
    for (Eigen::Index j = 0; j < g.coeffs.size(); ++j) {
      if (g.coeffs[j].sign() < 0 || g.rhs.sign() < 0) return "not of covering type: " + g.str();
      if (g.rhs.sign() > 0 && g.coeffs[j] > g.rhs) return "coefficient exceeds right-hand side: " + g.str();
    }
  }
  if (!q.equations().empty()) return "closure is not full-dimensional";
  return std::nullopt;
}

WellBehavedSearch covering_latticefree_search(std::uint64_t seed, std::size_t count, const FamilySpec& f, long long n,
                                              long long m, long long coeff_max) {
  WellBehavedSearch out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto inst = random_well_behaved(ModelKind::Covering, n, m, coeff_max, seed + i);
    const auto closure = enumerated_closure(inst.model.polyhedron(), f);
    ++out.instances;
    out.facets_checked += closure.polyhedron.facets().size();
    if (auto bad = covering_facet_violation(closure.polyhedron)) {
      std::ostringstream msg;
      msg << "seed " << seed + i << ": " << *bad;
      out.violations.push_back(msg.str());
    }
  }
  return out;
}

}  // namespace closurelab
