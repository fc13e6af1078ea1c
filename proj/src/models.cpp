#include "closurelab/models.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace closurelab {

std::string to_string(ModelKind kind) { return kind == ModelKind::Packing ? "packing" : "covering"; }

// ---------------------------------------------------------------------------
// NonnegModel

NonnegModel::NonnegModel(ModelKind kind, Mat a, Vec b, std::vector<bool> fixed_zero)
    : kind_(kind), a_(std::move(a)), b_(std::move(b)), fixed_zero_(std::move(fixed_zero)) {
  if (a_.cols() < 1) throw std::invalid_argument("model needs at least one variable");
  if (a_.rows() != b_.size()) throw DimensionMismatch("A has " + std::to_string(a_.rows()) + " rows but b has " +
                                                      std::to_string(b_.size()) + " entries");
  for (Eigen::Index i = 0; i < a_.rows(); ++i) {
    if (b_[i].sign() < 0) throw std::invalid_argument("model data must be nonnegative");
    for (Eigen::Index j = 0; j < a_.cols(); ++j)
      if (a_(i, j).sign() < 0) throw std::invalid_argument("model data must be nonnegative");
  }
  if (fixed_zero_.empty()) fixed_zero_.assign(std::size_t(a_.cols()), false);
  if (fixed_zero_.size() != std::size_t(a_.cols())) throw DimensionMismatch("fixed-zero mask has wrong length");
  poly_ = Polyhedron::from_h(hrep());
}

LinearInequality NonnegModel::row(Eigen::Index i) const {
  return {Vec(a_.row(i).transpose()), b_[i], is_packing() ? Sense::Leq : Sense::Geq};
}

std::vector<LinearInequality> NonnegModel::rows() const {
  std::vector<LinearInequality> out;
  for (Eigen::Index i = 0; i < a_.rows(); ++i) out.push_back(row(i));
  return out;
}

HRep NonnegModel::hrep() const {
  HRep h;
  h.dim = dim();
  h.nonneg = true;
  h.rows = rows();
  for (Eigen::Index j = 0; j < dim(); ++j)
    if (fixed_zero_[std::size_t(j)]) h.rows.emplace_back(unit_vec(dim(), j), Rational(0), Sense::Leq);
  return h;
}

bool is_well_behaved(const NonnegModel& p) {
  if (p.is_packing()) {
    for (Eigen::Index j = 0; j < p.dim(); ++j)
      if (!p.fixed_zero()[std::size_t(j)] && !p.polyhedron().contains(unit_vec(p.dim(), j))) return false;
    return true;
  }
  for (Eigen::Index i = 0; i < p.num_rows(); ++i)
    for (Eigen::Index j = 0; j < p.dim(); ++j)
      if (p.A()(i, j) > p.b()[i]) return false;
  return true;
}

NonnegModel normalize_well_behaved(const NonnegModel& p) {
  Mat a = p.A();
  if (!p.is_packing()) {
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = std::min(a(i, j), p.b()[i]);
    return NonnegModel(p.kind(), a, p.b(), p.fixed_zero());
  }
  auto fixed = p.fixed_zero();
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    bool feasible = true;
    for (Eigen::Index i = 0; i < a.rows(); ++i) feasible = feasible && a(i, j) <= p.b()[i];
    if (feasible) continue;
    // Integer points have x_j = 0 whenever some row has A_ij > b_i.
    fixed[std::size_t(j)] = true;
  }
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    if (fixed[std::size_t(j)])
      for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = Rational(0);
  return NonnegModel(p.kind(), a, p.b(), fixed);
}

// ---------------------------------------------------------------------------
// Lattice-free objects

Vec breve(const Vec& u, const IndexSet& t) {
  Vec out = u;
  for (auto j : t) {
    if (j < 0 || j >= u.size()) throw std::invalid_argument("index " + std::to_string(j) + " outside [0, n)");
    out[j] = Rational(0);
  }
  return out;
}

SplitSet::SplitSet(Vec p, Rational p0) : pi(std::move(p)), pi0(std::move(p0)) {
  if (!is_integral(pi) || !pi0.is_integer()) throw std::invalid_argument("split data must be integral");
  if (is_zero(pi)) throw std::invalid_argument("split direction must be nonzero");
}

bool SplitSet::contains(const Vec& x) const {
  const Rational v = dot(pi, x);
  return pi0 < v && v < pi0 + Rational(1);
}

SplitSet SplitSet::canonical() const {
  for (Eigen::Index j = 0; j < pi.size(); ++j) {
    if (pi[j].is_zero()) continue;
    if (pi[j].sign() > 0) return *this;
    return SplitSet(Vec(-pi), -pi0 - Rational(1));
  }
  return *this;
}

std::string SplitSet::str() const { return "S(" + to_string(pi) + "," + pi0.str() + ")"; }

bool MultiBranchSplit::contains(const Vec& x) const {
  return std::any_of(splits.begin(), splits.end(), [&](const SplitSet& s) { return s.contains(x); });
}

std::string MultiBranchSplit::str() const {
  std::string out;
  for (std::size_t i = 0; i < splits.size(); ++i) out += (i ? "|" : "") + splits[i].str();
  return out;
}

LatticeFreeBody::LatticeFreeBody(std::vector<LinearInequality> r) {
  if (r.empty()) throw std::invalid_argument("lattice-free body needs at least one row");
  for (auto& row : r) {
    row = row.as_leq();
    if (!is_integral(row.coeffs) || !row.rhs.is_integer())
      throw std::invalid_argument("lattice-free body rows must have integer data");
    if (row.dim() != r.front().dim()) throw DimensionMismatch("lattice-free body rows differ in length");
  }
  rows = std::move(r);
}

bool LatticeFreeBody::interior_contains(const Vec& x) const {
  return std::all_of(rows.begin(), rows.end(), [&](const LinearInequality& r) { return r.lhs(x) < r.rhs; });
}

std::string LatticeFreeBody::str() const {
  std::string out = "L{";
  for (std::size_t i = 0; i < rows.size(); ++i)
    out += (i ? "; " : "") + to_string(rows[i].coeffs) + "<=" + rows[i].rhs.str();
  return out + "}";
}

std::string describe(const Disjunction& d) {
  return std::visit([](const auto& m) { return m.str(); }, d);
}

bool removed_contains(const Disjunction& d, const Vec& x) {
  if (const auto* s = std::get_if<SplitSet>(&d)) return s->contains(x);
  if (const auto* m = std::get_if<MultiBranchSplit>(&d)) return m->contains(x);
  return std::get<LatticeFreeBody>(d).interior_contains(x);
}

Eigen::Index dim_of(const Disjunction& d) {
  return std::visit([](const auto& m) { return m.dim(); }, d);
}

std::optional<SplitSet> restrict_M_T(const SplitSet& s, const IndexSet& t) {
  Vec p = breve(s.pi, t);
  if (is_zero(p)) return std::nullopt;
  return SplitSet(std::move(p), s.pi0);
}

std::optional<MultiBranchSplit> restrict_M_T(const MultiBranchSplit& m, const IndexSet& t) {
  MultiBranchSplit out;
  for (const auto& s : m.splits)
    if (auto r = restrict_M_T(s, t)) out.splits.push_back(std::move(*r));
  if (out.splits.empty()) return std::nullopt;
  return out;
}

std::optional<LatticeFreeBody> restrict_M_T(const LatticeFreeBody& l, const IndexSet& t) {
  std::vector<LinearInequality> rows;
  for (const auto& r : l.rows) {
    Vec p = breve(r.coeffs, t);
    if (is_zero(p)) {
      if (r.rhs.sign() <= 0) return std::nullopt;  // 0 < rhs fails everywhere
      continue;                                     // 0 < rhs holds everywhere
    }
    rows.emplace_back(std::move(p), r.rhs, Sense::Leq);
  }
  if (rows.empty()) throw std::logic_error("restriction covers the whole space; the body was not lattice-free");
  return LatticeFreeBody(std::move(rows));
}

std::size_t IntBox::count() const {
  if (lo.size() != hi.size()) throw DimensionMismatch("box bounds differ in length");
  long double total = 1;
  for (std::size_t j = 0; j < lo.size(); ++j) {
    if (hi[j] < lo[j]) return 0;
    total *= static_cast<long double>(hi[j] - lo[j] + 1);
  }
  if (total > static_cast<long double>(std::numeric_limits<std::size_t>::max() / 2))
    return std::numeric_limits<std::size_t>::max() / 2;
  return static_cast<std::size_t>(total);
}

void for_each_lattice_point(const IntBox& box, std::size_t cap, const std::function<void(const Vec&)>& f) {
  const std::size_t total = box.count();
  if (total > cap)
    throw CapExceeded("lattice enumeration of " + std::to_string(total) + " points exceeds cap " +
                      std::to_string(cap));
  if (total == 0) return;
  const std::size_t n = box.lo.size();
  std::vector<long long> x = box.lo;
  Vec v(static_cast<Eigen::Index>(n));
  while (true) {
    for (std::size_t j = 0; j < n; ++j) v[Eigen::Index(j)] = Rational(x[j]);
    f(v);
    std::size_t j = 0;
    while (j < n && x[j] == box.hi[j]) {
      x[j] = box.lo[j];
      ++j;
    }
    if (j == n) return;
    ++x[j];
  }
}

bool is_strict_lattice_free(const Disjunction& d, const IntBox& box, std::size_t cap) {
  if (box.lo.size() != std::size_t(dim_of(d))) throw DimensionMismatch("box and set differ in dimension");
  bool free = true;
  for_each_lattice_point(box, cap, [&](const Vec& z) { free = free && !removed_contains(d, z); });
  return free;
}

IntBox bounding_box(const Polyhedron& p, long long margin) {
  if (!p.is_bounded()) throw PreconditionViolation("bounding box of an unbounded polyhedron");
  IntBox box;
  const auto n = std::size_t(p.dim());
  if (p.is_empty()) {
    box.lo.assign(n, 0);
    box.hi.assign(n, -1);
    return box;
  }
  const auto& vs = p.vrep().vertices;
  for (std::size_t j = 0; j < n; ++j) {
    Rational lo = vs.front()[Eigen::Index(j)], hi = lo;
    for (const auto& v : vs) {
      lo = std::min(lo, v[Eigen::Index(j)]);
      hi = std::max(hi, v[Eigen::Index(j)]);
    }
    box.lo.push_back(lo.floor().numerator().get_si() - margin);
    box.hi.push_back(hi.ceil().numerator().get_si() + margin);
  }
  return box;
}

}  // namespace closurelab
