#include "closurelab/closures.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <tuple>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "closurelab/double_description.hpp"
#include "closurelab/linalg.hpp"

namespace closurelab {

namespace {

void require_same_dim(Eigen::Index a, Eigen::Index b) {
  if (a != b) throw DimensionMismatch("polyhedron in dimension " + std::to_string(a) + ", lattice-free set in " +
                                      std::to_string(b));
}

long long to_ll(const Rational& integral) { return integral.numerator().get_si(); }

struct Range {
  Rational lo, hi;
  bool lo_finite = true, hi_finite = true;
};

// Range of pi·x over the vertices, and whether p extends beyond it along a ray or line.
Range vertex_range(const Polyhedron& p, const Vec& pi) {
  Range r;
  const auto& v = p.vrep();
  r.lo = r.hi = dot(pi, v.vertices.front());
  for (const auto& x : v.vertices) {
    const Rational t = dot(pi, x);
    r.lo = std::min(r.lo, t);
    r.hi = std::max(r.hi, t);
  }
  for (const auto& d : v.rays) {
    const int s = dot(pi, d).sign();
    if (s > 0) r.hi_finite = false;
    if (s < 0) r.lo_finite = false;
  }
  for (const auto& d : v.lines)
    if (dot(pi, d).sign() != 0) r.lo_finite = r.hi_finite = false;
  return r;
}

bool orthogonal_to_lines(const Polyhedron& p, const Vec& pi) {
  const auto& lines = p.vrep().lines;
  return std::all_of(lines.begin(), lines.end(), [&](const Vec& l) { return dot(pi, l).is_zero(); });
}

Polyhedron hull_of_pieces(const Polyhedron& p, std::vector<Polyhedron> pieces) {
  pieces.erase(std::remove_if(pieces.begin(), pieces.end(), [](const Polyhedron& q) { return q.is_empty(); }),
               pieces.end());
  if (pieces.empty()) return Polyhedron::empty(p.dim());
  if (pieces.size() == 1) return pieces.front();
  return closed_convex_hull_union(pieces);
}

// ---------------------------------------------------------------------------
// Lattice-free bodies

std::vector<Vec> lineality_basis(const std::vector<LinearInequality>& rows, Eigen::Index n) {
  Mat m(static_cast<Eigen::Index>(rows.size()), n);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(Eigen::Index(i)) = rows[i].coeffs.transpose();
  auto basis = linalg::nullspace<Rational>(m);
  for (auto& b : basis) make_primitive(b);
  return basis;
}

bool recession_is_lineality(const std::vector<Vec>& normals, Eigen::Index n) {
  return enumerate_cone<Rational>(normals, n).rays.empty();
}

// Integer points z with row·z < rhs for every row. Points are reduced modulo
// integer lineality vectors, so one representative per class may be reported.
std::vector<Vec> interior_lattice_points(const std::vector<LinearInequality>& rows, std::size_t cap) {
  const Eigen::Index n = rows.front().dim();
  const auto lin = lineality_basis(rows, n);
  HRep h;
  h.dim = n;
  h.rows = rows;
  for (const auto& l : lin) {
    h.rows.emplace_back(l, Rational(0), Sense::Leq);
    h.rows.emplace_back(l, Rational(0), Sense::Geq);
  }
  const auto q = Polyhedron::from_h(h);
  if (q.is_empty()) return {};
  if (!q.is_bounded()) throw PreconditionViolation("lattice-free body is not bounded modulo its lineality space");
  IntBox box = bounding_box(q);
  for (const auto& l : lin)
    for (Eigen::Index j = 0; j < n; ++j) {
      const long long c = to_ll(l[j]);
      if (c < 0) box.lo[std::size_t(j)] += c;
      if (c > 0) box.hi[std::size_t(j)] += c;
    }
  std::vector<Vec> out;
  for_each_lattice_point(box, cap, [&](const Vec& z) {
    if (std::all_of(rows.begin(), rows.end(), [&](const LinearInequality& r) { return r.lhs(z) < r.rhs; }))
      out.push_back(z);
  });
  return out;
}

// Direction subsets whose closed bodies have recession cone equal to lineality.
using DirectionSets = std::vector<std::vector<std::size_t>>;

const DirectionSets& bounded_direction_sets(const std::vector<Vec>& dirs, Eigen::Index n, int b, int k) {
  static std::mutex mu;
  static std::map<std::tuple<Eigen::Index, int, int>, DirectionSets> cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_tuple(n, b, k);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  DirectionSets out;
  std::vector<std::size_t> idx;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (idx.size() >= 2) {
      std::vector<Vec> normals;
      for (auto i : idx) normals.push_back(dirs[i]);
      if (recession_is_lineality(normals, n)) out.push_back(idx);
    }
    if (int(idx.size()) == k) return;
    for (std::size_t i = start; i < dirs.size(); ++i) {
      idx.push_back(i);
      rec(i + 1);
      idx.pop_back();
    }
  };
  rec(0);
  return cache.emplace(key, std::move(out)).first->second;
}

class LatticeFreeEnumerator {
 public:
  LatticeFreeEnumerator(const Polyhedron& p, const FamilySpec& f, std::size_t cap)
      : p_(p), f_(f), cap_(cap), n_(p.dim()) {}

  std::vector<Disjunction> run() {
    dirs_ = split_directions(n_, f_.coeff_bound, false, cap_);
    dirs_.erase(std::remove_if(dirs_.begin(), dirs_.end(), [](const Vec& d) {
                  Vec c = d;
                  make_primitive(c);
                  return !vec_equal(c, d);
                }),
                dirs_.end());
    for (const auto& d : dirs_) ranges_.push_back(offset_range(d));
    for (const auto& set : bounded_direction_sets(dirs_, n_, f_.coeff_bound, f_.k)) enumerate(set);
    return std::move(out_);
  }

 private:
  std::pair<long long, long long> offset_range(const Vec& pi) const {
    // pi0 > min over p so the interior meets p; pi0 = floor(max) + 1 already
    // contains p in the open half-space, larger values change nothing inside p.
    const Range r = vertex_range(p_, pi);
    const long long w = f_.coeff_bound;
    long long lo = r.lo_finite ? to_ll(r.lo.floor()) + 1 : to_ll(r.lo.floor()) + 1 - w;
    long long hi = r.hi_finite ? to_ll(r.hi.floor()) + 1 : to_ll(r.hi.ceil()) + w;
    if (f_.offset_bound) {
      lo = std::max(lo, -*f_.offset_bound);
      hi = std::min(hi, *f_.offset_bound);
    }
    return {lo, hi};
  }

  std::vector<LinearInequality> body(const std::vector<std::size_t>& set, const std::vector<long long>& off) const {
    std::vector<LinearInequality> rows;
    for (std::size_t i = 0; i < set.size(); ++i) rows.emplace_back(dirs_[set[i]], Rational(off[i]), Sense::Leq);
    return rows;
  }

  bool lattice_free(const std::vector<LinearInequality>& rows) const {
    return interior_lattice_points(rows, cap_).empty();
  }

  void enumerate(const std::vector<std::size_t>& set) {
    const std::size_t r = set.size();
    std::vector<long long> off(r);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i + 1 < r) {
        for (long long o = ranges_[set[i]].first; o <= ranges_[set[i]].second; ++o) {
          off[i] = o;
          rec(i + 1);
        }
        return;
      }
      const auto [lo, hi] = ranges_[set[i]];
      if (lo > hi) return;
      off[i] = hi;
      const auto rows = body(set, off);
      const auto pts = interior_lattice_points(rows, cap_);
      long long best = hi;
      for (const auto& z : pts) best = std::min(best, to_ll(dot(dirs_[set[i]], z)));
      if (best < lo) return;
      off[i] = best;
      consider(set, off);
    };
    rec(0);
  }

  void consider(const std::vector<std::size_t>& set, std::vector<long long> off) {
    const auto rows = body(set, off);
    if (!meets_interior(rows)) return;
    // Offset-maximal: growing any earlier row must create an interior lattice point.
    for (std::size_t i = 0; i + 1 < set.size(); ++i) {
      if (off[i] >= ranges_[set[i]].second) continue;
      ++off[i];
      const bool still_free = lattice_free(body(set, off));
      --off[i];
      if (still_free) return;
    }
    // Row-minimal: no proper subset of the rows is already a lattice-free body.
    if (set.size() > 2) {
      for (std::size_t mask = 1; mask + 1 < (std::size_t(1) << set.size()); ++mask) {
        if (std::popcount(mask) < 2) continue;
        std::vector<LinearInequality> sub;
        std::vector<Vec> normals;
        for (std::size_t i = 0; i < set.size(); ++i)
          if (mask >> i & 1) {
            sub.push_back(rows[i]);
            normals.push_back(rows[i].coeffs);
          }
        if (recession_is_lineality(normals, n_) && lattice_free(sub)) return;
      }
    }
    if (out_.size() >= cap_) throw CapExceeded("lattice-free family exceeds cap " + std::to_string(cap_));
    out_.emplace_back(LatticeFreeBody(rows));
  }

  // int(L) ∩ p nonempty: a relative-interior point of p ∩ L must be strictly inside L.
  bool meets_interior(const std::vector<LinearInequality>& rows) const {
    const auto q = intersect_rows(p_, rows);
    if (q.is_empty()) return false;
    const auto& v = q.vrep();
    Vec c = zero_vec(n_);
    for (const auto& x : v.vertices) c += x;
    c /= Rational(static_cast<long long>(v.vertices.size()));
    for (const auto& d : v.rays) c += d;
    return std::all_of(rows.begin(), rows.end(), [&](const LinearInequality& r) { return r.lhs(c) < r.rhs; });
  }

  const Polyhedron& p_;
  const FamilySpec& f_;
  std::size_t cap_;
  Eigen::Index n_;
  std::vector<Vec> dirs_;
  std::vector<std::pair<long long, long long>> ranges_;
  std::vector<Disjunction> out_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Hulls

Polyhedron split_hull(const Polyhedron& p, const SplitSet& s) {
  require_same_dim(p.dim(), s.dim());
  if (p.is_empty()) return p;
  const Range r = vertex_range(p, s.pi);
  // Closed hull is p unless the strip meets conv(vertices).
  if (!(r.lo < s.pi0 + Rational(1) && r.hi > s.pi0)) return p;
  if (!orthogonal_to_lines(p, s.pi)) return p;
  return hull_of_pieces(p, {intersect_rows(p, {s.left()}), intersect_rows(p, {s.right()})});
}

Polyhedron kbranch_hull(const Polyhedron& p, const MultiBranchSplit& m) {
  if (m.splits.empty()) throw std::invalid_argument("k-branch split needs at least one member");
  require_same_dim(p.dim(), m.dim());
  if (m.splits.size() == 1) return split_hull(p, m.splits.front());
  std::vector<Polyhedron> pieces;
  std::function<void(const Polyhedron&, std::size_t)> rec = [&](const Polyhedron& q, std::size_t i) {
    if (q.is_empty()) return;
    if (i == m.splits.size()) {
      pieces.push_back(q);
      return;
    }
    rec(intersect_rows(q, {m.splits[i].left()}), i + 1);
    rec(intersect_rows(q, {m.splits[i].right()}), i + 1);
  };
  rec(p, 0);
  return hull_of_pieces(p, std::move(pieces));
}

Polyhedron latticefree_hull(const Polyhedron& p, const LatticeFreeBody& l) {
  require_same_dim(p.dim(), l.dim());
  std::vector<Polyhedron> pieces;
  for (const auto& r : l.rows) pieces.push_back(intersect_rows(p, {LinearInequality(r.coeffs, r.rhs, Sense::Geq)}));
  return hull_of_pieces(p, std::move(pieces));
}

Polyhedron disjunctive_hull(const Polyhedron& p, const Disjunction& d) {
  if (const auto* s = std::get_if<SplitSet>(&d)) return split_hull(p, *s);
  if (const auto* m = std::get_if<MultiBranchSplit>(&d)) return kbranch_hull(p, *m);
  return latticefree_hull(p, std::get<LatticeFreeBody>(d));
}

// ---------------------------------------------------------------------------
// Families

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Split: return "split";
    case FamilyKind::KBranch: return "kbranch";
    case FamilyKind::LatticeFree: return "latticefree";
  }
  return "?";
}

void FamilySpec::validate() const {
  if (coeff_bound < 0) throw std::invalid_argument("coefficient bound must be nonnegative");
  if (kind == FamilyKind::KBranch && k < 1) throw std::invalid_argument("k-branch family needs k >= 1");
  if (kind == FamilyKind::LatticeFree && k < 2) throw std::invalid_argument("lattice-free family needs k >= 2");
  if (offset_bound && *offset_bound < 0) throw std::invalid_argument("offset bound must be nonnegative");
}

std::string FamilySpec::str() const {
  std::ostringstream os;
  os << to_string(kind);
  if (kind != FamilyKind::Split) os << "(k=" << k << ")";
  os << " |pi|<=" << coeff_bound;
  if (offset_bound) os << " |pi0|<=" << *offset_bound;
  return os.str();
}

std::vector<Vec> split_directions(Eigen::Index n, int coeff_bound, bool dedup, std::size_t cap) {
  std::vector<Vec> out;
  if (coeff_bound < 1) return out;
  long double grid = 1;
  for (Eigen::Index j = 0; j < n; ++j) grid *= 2 * coeff_bound + 1;
  if (grid > static_cast<long double>(cap))
    throw CapExceeded("direction grid of size " + std::to_string(static_cast<unsigned long long>(grid)) +
                      " exceeds cap " + std::to_string(cap));
  std::vector<int> x(std::size_t(n), -coeff_bound);
  while (true) {
    Vec v(n);
    long long g = 0;
    int first = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const int c = x[std::size_t(j)];
      v[j] = Rational(c);
      g = std::gcd(g, static_cast<long long>(c));
      if (first == 0 && c != 0) first = c;
    }
    if (first != 0 && (!dedup || (first > 0 && g == 1))) out.push_back(std::move(v));
    std::size_t j = std::size_t(n);
    // increment with the last coordinate fastest, so the output is lexicographic
    while (j > 0 && x[j - 1] == coeff_bound) x[--j] = -coeff_bound;
    if (j == 0) break;
    ++x[j - 1];
  }
  return out;
}

std::vector<SplitSet> enumerate_splits(const Polyhedron& p, int coeff_bound, std::optional<long long> offset_bound,
                                       bool dedup, std::size_t cap) {
  std::vector<SplitSet> out;
  if (p.is_empty()) return out;
  for (auto& pi : split_directions(p.dim(), coeff_bound, dedup, cap)) {
    if (!orthogonal_to_lines(p, pi)) continue;
    const Range r = vertex_range(p, pi);
    long long lo = to_ll(r.lo.floor());
    long long hi = to_ll(r.hi.ceil()) - 1;
    if (offset_bound) {
      lo = std::max(lo, -*offset_bound);
      hi = std::min(hi, *offset_bound);
    }
    if (hi >= lo && out.size() + static_cast<std::size_t>(hi - lo + 1) > cap)
      throw CapExceeded("split family exceeds cap " + std::to_string(cap));
    for (long long o = lo; o <= hi; ++o) out.emplace_back(pi, Rational(o));
  }
  return out;
}

std::vector<Disjunction> enumerate_family(const Polyhedron& p, const FamilySpec& f, std::size_t cap) {
  f.validate();
  std::vector<Disjunction> out;
  if (p.is_empty()) return out;
  if (f.kind == FamilyKind::LatticeFree) return LatticeFreeEnumerator(p, f, cap).run();

  const auto splits = enumerate_splits(p, f.coeff_bound, f.offset_bound, f.dedup, cap);
  if (f.kind == FamilyKind::Split || f.k == 1) {
    if (splits.size() > cap) throw CapExceeded("split family of size " + std::to_string(splits.size()) + " exceeds cap");
    for (const auto& s : splits) out.emplace_back(s);
    return out;
  }
  const std::size_t k = std::min<std::size_t>(std::size_t(f.k), splits.size());
  if (k == 0) return out;
  long double count = 1;
  for (std::size_t i = 0; i < k; ++i) count = count * (splits.size() - i) / (i + 1);
  if (count > static_cast<long double>(cap))
    throw CapExceeded("k-branch family of size " + std::to_string(static_cast<unsigned long long>(count)) +
                      " exceeds cap " + std::to_string(cap));
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    MultiBranchSplit m;
    for (auto i : idx) m.splits.push_back(splits[i]);
    out.emplace_back(std::move(m));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == splits.size() - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

bool certify_lattice_free(const std::vector<LinearInequality>& rows) {
  if (rows.empty()) return false;
  std::vector<LinearInequality> leq;
  std::vector<Vec> normals;
  for (const auto& r : rows) {
    leq.push_back(r.as_leq());
    normals.push_back(leq.back().coeffs);
  }
  if (!recession_is_lineality(normals, leq.front().dim()))
    throw PreconditionViolation("lattice-free certification needs recession cone equal to lineality space");
  return interior_lattice_points(leq, enumeration_cap()).empty();
}

ClosureResult closure_over(const Polyhedron& p, const std::vector<Disjunction>& family) {
  ClosureResult res;
  res.family_size = family.size();
  std::vector<LinearInequality> cuts;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& r : p.leq_rows()) {
    const auto nr = r.normalized();
    seen.emplace(to_string(nr.coeffs), nr.rhs.str());
  }
  for (const auto& d : family) {
    const auto h = disjunctive_hull(p, d);
    if (h == p) continue;
    ++res.disjunctions_used;
    if (h.is_empty()) {
      res.polyhedron = Polyhedron::empty(p.dim());
      return res;
    }
    for (const auto& r : h.leq_rows()) {
      const auto nr = r.normalized();
      if (seen.emplace(to_string(nr.coeffs), nr.rhs.str()).second) cuts.push_back(nr);
    }
  }
  res.polyhedron = intersect_rows(p, cuts);
  return res;
}

ClosureResult enumerated_closure(const Polyhedron& p, const FamilySpec& f, std::size_t cap) {
  auto res = closure_over(p, enumerate_family(p, f, cap));
  res.family = f;
  return res;
}

// ---------------------------------------------------------------------------
// Cuts and relaxations

CutInequality cg_cut(const NonnegModel& p, const Vec& lambda) {
  if (lambda.size() != p.num_rows()) throw DimensionMismatch("multiplier vector length differs from row count");
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    if (lambda[i].sign() < 0) throw std::invalid_argument("CG multipliers must be nonnegative");
  Vec coeffs = p.A().transpose() * lambda;
  Rational rhs = dot(p.b(), lambda);
  for (Eigen::Index j = 0; j < coeffs.size(); ++j) coeffs[j] = p.is_packing() ? coeffs[j].floor() : coeffs[j].ceil();
  rhs = p.is_packing() ? rhs.floor() : rhs.ceil();
  CutInequality cut;
  cut.ineq = LinearInequality(coeffs, rhs, p.is_packing() ? Sense::Leq : Sense::Geq);
  cut.source = "cg";
  cut.multipliers = lambda;
  cut.redundant = is_zero(coeffs) && rhs.is_zero();
  return cut;
}

LinearInequality aggregated_row(const NonnegModel& p, const Rational& alpha) {
  if (p.num_rows() != 2) throw std::invalid_argument("aggregation needs exactly two structural rows");
  if (alpha.sign() < 0 || alpha > Rational(1)) throw std::invalid_argument("aggregation weight must lie in [0, 1]");
  const Rational beta = Rational(1) - alpha;
  const auto r1 = p.row(0), r2 = p.row(1);
  return {Vec(beta * r1.coeffs + alpha * r2.coeffs), beta * r1.rhs + alpha * r2.rhs, r1.sense};
}

Polyhedron aggregation_relaxation(const NonnegModel& p, const Rational& alpha) {
  HRep h;
  h.dim = p.dim();
  h.nonneg = true;
  h.rows = {aggregated_row(p, alpha)};
  return integer_hull(Polyhedron::from_h(h));
}

WeightInterval aggregation_membership(const NonnegModel& p, const Vec& z) {
  if (p.num_rows() != 2) throw std::invalid_argument("aggregation needs exactly two structural rows");
  if (z.size() != p.dim()) throw DimensionMismatch("point dimension differs from model");
  WeightInterval out;
  if (!is_integral(z)) throw std::invalid_argument("membership thresholds are defined for integer points");
  for (Eigen::Index j = 0; j < z.size(); ++j)
    if (z[j].sign() < 0) return out;
  // Integer points of the single-row set are exactly the integer points of its
  // integer hull, so membership is (1-a) s1 + a s2 <= 0 with s_i the signed slack.
  const Rational sign = p.is_packing() ? Rational(1) : Rational(-1);
  const auto r1 = p.row(0), r2 = p.row(1);
  const Rational s1 = sign * (r1.lhs(z) - r1.rhs);
  const Rational s2 = sign * (r2.lhs(z) - r2.rhs);
  const Rational slope = s2 - s1;
  Rational lo(0), hi(1);
  if (slope.is_zero()) {
    if (s1.sign() > 0) return out;
  } else if (slope.sign() > 0) {
    hi = std::min(hi, -s1 / slope);
  } else {
    lo = std::max(lo, -s1 / slope);
  }
  if (lo > hi) return out;
  out.empty = false;
  out.lo = lo;
  out.hi = hi;
  return out;
}

Polyhedron integer_hull(const Polyhedron& p, std::size_t cap) {
  const auto n = p.dim();
  if (p.is_empty()) return p;
  const auto& v = p.vrep();
  std::vector<Vec> dirs = v.rays;
  for (const auto& l : v.lines) {
    dirs.push_back(l);
    dirs.push_back(Vec(-l));
  }
  // Every integer point is an integer point of conv(V) + sum [0,1) r plus a
  // nonnegative integer combination of the (integral, primitive) directions.
  IntBox box;
  for (Eigen::Index j = 0; j < n; ++j) {
    Rational lo = v.vertices.front()[j], hi = lo;
    for (const auto& x : v.vertices) {
      lo = std::min(lo, x[j]);
      hi = std::max(hi, x[j]);
    }
    for (const auto& d : dirs) {
      if (d[j].sign() < 0) lo += d[j];
      if (d[j].sign() > 0) hi += d[j];
    }
    box.lo.push_back(to_ll(lo.floor()));
    box.hi.push_back(to_ll(hi.ceil()));
  }
  VRep out;
  out.dim = n;
  for_each_lattice_point(box, cap, [&](const Vec& z) {
    if (p.contains(z)) out.vertices.push_back(z);
  });
  if (out.vertices.empty()) return Polyhedron::empty(n);
  out.rays = v.rays;
  out.lines = v.lines;
  return Polyhedron::from_v(out);
}

}  // namespace closurelab
