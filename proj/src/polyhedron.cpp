#include "closurelab/polyhedron.hpp"

#include <algorithm>
#include <sstream>

#include <boost/dynamic_bitset.hpp>

#include "closurelab/double_description.hpp"
#include "closurelab/linalg.hpp"

namespace closurelab {

namespace {

Vec homogenize_row(const LinearInequality& leq) {
  const auto n = leq.dim();
  Vec w(n + 1);
  w.head(n) = leq.coeffs;
  w[n] = -leq.rhs;
  return w;
}

Vec homogenize_point(const Vec& x, const Rational& t) {
  Vec g(x.size() + 1);
  g.head(x.size()) = x;
  g[x.size()] = t;
  return g;
}

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b)
    throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) + " vs " + std::to_string(b));
}

// Orthogonal projection onto the complement of span(lines).
class LinealityProjector {
 public:
  explicit LinealityProjector(const std::vector<Vec>& lines) : lines_(lines) {
    if (lines_.empty()) return;
    const auto k = static_cast<Eigen::Index>(lines_.size());
    gram_ = Mat(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) gram_(i, j) = dot(lines_[size_t(i)], lines_[size_t(j)]);
  }

  Vec operator()(const Vec& x) const {
    if (lines_.empty()) return x;
    const auto k = static_cast<Eigen::Index>(lines_.size());
    Vec rhs(k);
    for (Eigen::Index i = 0; i < k; ++i) rhs[i] = dot(lines_[size_t(i)], x);
    const Vec coef = linalg::solve<Rational>(gram_, rhs);
    Vec out = x;
    for (Eigen::Index i = 0; i < k; ++i)
      if (!coef[i].is_zero()) out -= coef[i] * lines_[size_t(i)];
    return out;
  }

 private:
  std::vector<Vec> lines_;
  Mat gram_;
};

std::vector<Vec> canonical_lines(const std::vector<Vec>& lines, Eigen::Index n) {
  if (lines.empty()) return {};
  Mat m(static_cast<Eigen::Index>(lines.size()), n);
  for (std::size_t i = 0; i < lines.size(); ++i) m.row(Eigen::Index(i)) = lines[i].transpose();
  const auto pivots = linalg::rref<Rational>(m);
  std::vector<Vec> out;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    Vec v = m.row(Eigen::Index(r)).transpose();
    make_primitive(v);
    out.push_back(std::move(v));
  }
  return out;
}

// Equations as rows (a | b) of a·x = b, returned in reduced echelon form.
std::vector<LinearInequality> canonical_equations(const std::vector<LinearInequality>& eqs, Eigen::Index n,
                                                  std::vector<Eigen::Index>& pivots_out) {
  pivots_out.clear();
  if (eqs.empty()) return {};
  Mat m(static_cast<Eigen::Index>(eqs.size()), n + 1);
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    m.row(Eigen::Index(i)).head(n) = eqs[i].coeffs.transpose();
    m(Eigen::Index(i), n) = eqs[i].rhs;
  }
  const auto pivots = linalg::rref<Rational>(m);
  std::vector<LinearInequality> out;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == n) throw std::logic_error("inconsistent equations in a nonempty polyhedron");
    Vec w = m.row(Eigen::Index(r)).transpose();
    make_primitive(w);
    out.emplace_back(Vec(w.head(n)), w[n], Sense::Leq);
    pivots_out.push_back(pivots[r]);
  }
  return out;
}

LinearInequality reduce_modulo(const LinearInequality& row, const std::vector<LinearInequality>& eqs,
                               const std::vector<Eigen::Index>& pivots) {
  LinearInequality r = row;
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    const Rational f = r.coeffs[pivots[i]];
    if (f.is_zero()) continue;
    const Rational p = eqs[i].coeffs[pivots[i]];
    const Rational s = f / p;
    r.coeffs -= s * eqs[i].coeffs;
    r.rhs -= s * eqs[i].rhs;
  }
  return r.normalized();
}

bool leq_row_less(const LinearInequality& a, const LinearInequality& b) {
  const auto c = lex_compare(a.coeffs, b.coeffs);
  if (c != 0) return c < 0;
  return a.rhs < b.rhs;
}

void sort_unique(std::vector<Vec>& vs) {
  std::sort(vs.begin(), vs.end(), LexLess{});
  vs.erase(std::unique(vs.begin(), vs.end(), VecEqual{}), vs.end());
}

}  // namespace

// ---------------------------------------------------------------------------
// LinearInequality / HRep / VRep

LinearInequality LinearInequality::as_leq() const {
  if (sense == Sense::Leq) return *this;
  return LinearInequality(Vec(-coeffs), -rhs, Sense::Leq);
}

LinearInequality LinearInequality::as_geq() const {
  if (sense == Sense::Geq) return *this;
  return LinearInequality(Vec(-coeffs), -rhs, Sense::Geq);
}

LinearInequality LinearInequality::normalized() const {
  Vec w(coeffs.size() + 1);
  w.head(coeffs.size()) = coeffs;
  w[coeffs.size()] = rhs;
  make_primitive(w);
  return LinearInequality(Vec(w.head(coeffs.size())), w[coeffs.size()], sense);
}

bool LinearInequality::satisfied_by(const Vec& x) const {
  const Rational v = lhs(x);
  return sense == Sense::Leq ? v <= rhs : v >= rhs;
}

std::string LinearInequality::str() const {
  std::ostringstream os;
  bool first = true;
  for (Eigen::Index j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j].is_zero()) continue;
    const Rational& c = coeffs[j];
    if (!first) os << (c.sign() < 0 ? " - " : " + ");
    else if (c.sign() < 0) os << "-";
    const Rational m = c.abs();
    if (m != Rational(1)) os << m << "*";
    os << "x" << (j + 1);
    first = false;
  }
  if (first) os << "0";
  os << (sense == Sense::Leq ? " <= " : " >= ") << rhs;
  return os.str();
}

void HRep::validate() const {
  if (dim < 1) throw std::invalid_argument("HRep needs dimension >= 1");
  for (const auto& r : rows)
    if (r.dim() != dim) throw DimensionMismatch("HRep row of length " + std::to_string(r.dim()) +
                                                " in dimension " + std::to_string(dim));
}

std::vector<LinearInequality> HRep::leq_rows() const {
  validate();
  std::vector<LinearInequality> out;
  out.reserve(rows.size() + (nonneg ? size_t(dim) : 0));
  for (const auto& r : rows) out.push_back(r.as_leq());
  if (nonneg) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      LinearInequality row(Vec(-unit_vec(dim, j)), Rational(0), Sense::Leq);
      const bool present = std::any_of(out.begin(), out.end(), [&](const LinearInequality& r) {
        return r.normalized() == row;
      });
      if (!present) out.push_back(std::move(row));
    }
  }
  return out;
}

void VRep::validate() const {
  if (dim < 1) throw std::invalid_argument("VRep needs dimension >= 1");
  auto check = [&](const std::vector<Vec>& vs) {
    for (const auto& v : vs)
      if (v.size() != dim) throw DimensionMismatch("VRep generator of wrong length");
  };
  check(vertices);
  check(rays);
  check(lines);
  if (vertices.empty() && !(rays.empty() && lines.empty()))
    throw std::invalid_argument("VRep with rays or lines needs at least one vertex");
}

// ---------------------------------------------------------------------------
// Polyhedron

Polyhedron Polyhedron::empty(Eigen::Index dim) {
  Polyhedron p;
  p.dim_ = dim;
  p.empty_ = true;
  p.affine_dim_ = -1;
  p.v_.dim = dim;
  return p;
}

Polyhedron Polyhedron::orthant(Eigen::Index dim) {
  HRep h;
  h.dim = dim;
  h.nonneg = true;
  return from_h(h);
}

Polyhedron Polyhedron::point(const Vec& x) {
  VRep v;
  v.dim = x.size();
  v.vertices.push_back(x);
  return from_v(v);
}

// homog_gens: generators (x, t) of the homogenized cone. candidate_rows: a <=
// description of the set containing every facet. When `generators_extreme` is
// false the rows must be exactly facets and equations, and the generators are
// filtered instead.
//
// Both filters are combinatorial. In the homogenized cone (pointed modulo the
// lineality space) a row defines a facet iff its set of tight generators is
// maximal and contains a vertex, and a generator is extreme iff no other
// generator is tight on a superset of its facets.
Polyhedron Polyhedron::assemble(Eigen::Index n, const std::vector<Vec>& homog_gens, const std::vector<Vec>& lines_in,
                                const std::vector<LinearInequality>& candidate_rows, bool generators_extreme) {
  using Bits = boost::dynamic_bitset<>;
  Polyhedron p;
  p.dim_ = n;
  p.v_.dim = n;

  const auto lines = canonical_lines(lines_in, n);
  const LinealityProjector project(lines);
  std::vector<Vec> vertices, rays;
  for (const auto& g : homog_gens) {
    const Rational& t = g[n];
    if (t.sign() > 0) {
      vertices.push_back(project(Vec(g.head(n) / t)));
    } else {
      Vec r = project(Vec(g.head(n)));
      if (is_zero(r)) continue;
      make_primitive(r);
      rays.push_back(std::move(r));
    }
  }
  if (vertices.empty()) return empty(n);
  sort_unique(vertices);
  sort_unique(rays);

  std::vector<Vec> rows;
  std::vector<const LinearInequality*> row_src;
  for (const auto& row : candidate_rows) {
    if (row.has_zero_coeffs()) continue;
    rows.push_back(homogenize_row(row));
    row_src.push_back(&row);
  }

  auto gens_of = [&] {
    std::vector<Vec> gens;
    for (const auto& v : vertices) gens.push_back(homogenize_point(v, Rational(1)));
    for (const auto& r : rays) gens.push_back(homogenize_point(r, Rational(0)));
    return gens;
  };
  auto tight_sets = [&](const std::vector<Vec>& gens) {
    std::vector<Bits> t(rows.size(), Bits(gens.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t g = 0; g < gens.size(); ++g)
        if (dot(rows[i], gens[g]).is_zero()) t[i].set(g);
    return t;
  };

  auto gens = gens_of();
  auto tight = tight_sets(gens);

  if (!generators_extreme) {
    // Incidence of each generator with the proper facets, plus the face at infinity for rays.
    std::vector<std::size_t> facet_rows;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!tight[i].all()) facet_rows.push_back(i);
    std::vector<Bits> inc(gens.size(), Bits(facet_rows.size() + 1));
    for (std::size_t f = 0; f < facet_rows.size(); ++f)
      for (std::size_t g = 0; g < gens.size(); ++g)
        if (tight[facet_rows[f]].test(g)) inc[g].set(f);
    for (std::size_t g = vertices.size(); g < gens.size(); ++g) inc[g].set(facet_rows.size());
    std::vector<bool> keep(gens.size(), true);
    for (std::size_t g = 0; g < gens.size(); ++g)
      for (std::size_t h = 0; h < gens.size() && keep[g]; ++h)
        if (h != g && inc[g].is_subset_of(inc[h])) keep[g] = false;
    std::vector<Vec> kv, kr;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (!keep[g]) continue;
      if (g < vertices.size())
        kv.push_back(vertices[g]);
      else
        kr.push_back(rays[g - vertices.size()]);
    }
    vertices = std::move(kv);
    rays = std::move(kr);
    gens = gens_of();
    tight = tight_sets(gens);
  }

  p.empty_ = false;
  p.v_.vertices = vertices;
  p.v_.rays = rays;
  p.v_.lines = lines;

  Bits vertex_mask(gens.size());
  for (std::size_t g = 0; g < vertices.size(); ++g) vertex_mask.set(g);

  std::vector<LinearInequality> eq_candidates;
  std::vector<std::size_t> facet_idx;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (tight[i].all()) {
      eq_candidates.push_back(*row_src[i]);
      continue;
    }
    if (!tight[i].intersects(vertex_mask)) continue;
    facet_idx.push_back(i);
  }
  std::vector<LinearInequality> facet_candidates;
  for (auto i : facet_idx) {
    bool maximal = true;
    for (auto j : facet_idx)
      if (j != i && tight[i].is_proper_subset_of(tight[j])) {
        maximal = false;
        break;
      }
    if (maximal) facet_candidates.push_back(*row_src[i]);
  }

  std::vector<Eigen::Index> pivots;
  p.equations_ = canonical_equations(eq_candidates, n, pivots);
  p.affine_dim_ = n - static_cast<Eigen::Index>(p.equations_.size());
  for (const auto& f : facet_candidates) p.facets_.push_back(reduce_modulo(f, p.equations_, pivots));
  std::sort(p.facets_.begin(), p.facets_.end(), leq_row_less);
  p.facets_.erase(std::unique(p.facets_.begin(), p.facets_.end()), p.facets_.end());
  return p;
}

Polyhedron Polyhedron::from_h(const HRep& h) {
  const auto rows = h.leq_rows();
  const auto n = h.dim;
  std::vector<Vec> cone_rows;
  cone_rows.reserve(rows.size() + 1);
  for (const auto& r : rows) cone_rows.push_back(homogenize_row(r));
  Vec t_row = zero_vec(n + 1);
  t_row[n] = Rational(-1);
  cone_rows.push_back(t_row);

  const auto gens = enumerate_cone<Rational>(cone_rows, n + 1);
  std::vector<Vec> lines;
  for (const auto& l : gens.lines) lines.push_back(Vec(l.head(n)));
  return assemble(n, gens.rays, lines, rows, true);
}

Polyhedron Polyhedron::from_v(const VRep& v) {
  v.validate();
  const auto n = v.dim;
  if (v.vertices.empty()) return empty(n);

  std::vector<Vec> dual_rows;
  for (const auto& x : v.vertices) dual_rows.push_back(homogenize_point(x, Rational(1)));
  for (const auto& r : v.rays) dual_rows.push_back(homogenize_point(r, Rational(0)));
  for (const auto& l : v.lines) {
    dual_rows.push_back(homogenize_point(l, Rational(0)));
    dual_rows.push_back(homogenize_point(Vec(-l), Rational(0)));
  }
  const auto dual = enumerate_cone<Rational>(dual_rows, n + 1);

  // Extreme rays of the dual cone are the facets (the one with zero a is the
  // face at infinity); its lineality space gives the equations.
  std::vector<LinearInequality> rows;
  for (const auto& w : dual.rays) {
    LinearInequality row(Vec(w.head(n)), -w[n], Sense::Leq);
    if (!row.has_zero_coeffs()) rows.push_back(std::move(row));
  }
  for (const auto& w : dual.lines) {
    LinearInequality row(Vec(w.head(n)), -w[n], Sense::Leq);
    if (row.has_zero_coeffs()) continue;
    rows.emplace_back(Vec(-row.coeffs), -row.rhs, Sense::Leq);
    rows.push_back(std::move(row));
  }

  std::vector<Vec> gens;
  for (const auto& x : v.vertices) gens.push_back(homogenize_point(x, Rational(1)));
  for (const auto& r : v.rays) gens.push_back(homogenize_point(r, Rational(0)));
  return assemble(n, gens, v.lines, rows, false);
}

HRep Polyhedron::hrep() const {
  HRep h;
  h.dim = dim_;
  if (empty_) {
    h.rows.emplace_back(zero_vec(dim_), Rational(-1), Sense::Leq);
    return h;
  }
  h.rows = facets_;
  for (const auto& e : equations_) {
    h.rows.push_back(e);
    h.rows.emplace_back(e.coeffs, e.rhs, Sense::Geq);
  }
  return h;
}

std::vector<LinearInequality> Polyhedron::leq_rows() const {
  std::vector<LinearInequality> out;
  for (const auto& r : hrep().rows) out.push_back(r.as_leq());
  return out;
}

bool Polyhedron::contains(const Vec& x) const {
  require_same_dim(dim_, x.size(), "contains");
  if (empty_) return false;
  for (const auto& e : equations_)
    if (!e.tight_at(x)) return false;
  for (const auto& f : facets_)
    if (!f.satisfied_by(x)) return false;
  return true;
}

std::string Polyhedron::str() const {
  std::ostringstream os;
  if (empty_) {
    os << "empty polyhedron in R^" << dim_;
    return os.str();
  }
  os << "polyhedron in R^" << dim_ << " (affine dim " << affine_dim_ << ")\n";
  for (const auto& e : equations_) os << "  " << e.coeffs.transpose() << " = " << e.rhs << "\n";
  for (const auto& f : facets_) os << "  " << f.str() << "\n";
  for (const auto& v : v_.vertices) os << "  vertex " << to_string(v) << "\n";
  for (const auto& r : v_.rays) os << "  ray " << to_string(r) << "\n";
  for (const auto& l : v_.lines) os << "  line " << to_string(l) << "\n";
  return os.str();
}

bool operator==(const Polyhedron& a, const Polyhedron& b) {
  if (a.dim_ != b.dim_ || a.empty_ != b.empty_) return false;
  if (a.empty_) return true;
  auto same = [](const std::vector<Vec>& x, const std::vector<Vec>& y) {
    return x.size() == y.size() && std::equal(x.begin(), x.end(), y.begin(), VecEqual{});
  };
  return a.facets_ == b.facets_ && a.equations_ == b.equations_ && same(a.v_.vertices, b.v_.vertices) &&
         same(a.v_.rays, b.v_.rays) && same(a.v_.lines, b.v_.lines);
}

// ---------------------------------------------------------------------------
// Free operations

VRep dd_convert(const HRep& h) { return Polyhedron::from_h(h).vrep(); }

HRep dd_convert(const VRep& v) { return Polyhedron::from_v(v).hrep(); }

std::optional<Vec> containment_witness(const Polyhedron& outer, const Polyhedron& inner) {
  require_same_dim(outer.dim(), inner.dim(), "contains_polyhedron");
  if (inner.is_empty()) return std::nullopt;
  const auto& iv = inner.vrep();
  if (outer.is_empty()) return iv.vertices.front();
  for (const auto& x : iv.vertices)
    if (!outer.contains(x)) return x;
  const Vec& base = iv.vertices.front();
  auto escape = [&](const Vec& dir, const LinearInequality& row) -> Vec {
    // row.coeffs·dir > 0: walk until row is violated
    const Rational slope = dot(row.coeffs, dir);
    const Rational t = (row.rhs - dot(row.coeffs, base)) / slope + Rational(1);
    return Vec(base + t * dir);
  };
  const auto rows = outer.leq_rows();
  for (const auto& r : iv.rays)
    for (const auto& row : rows)
      if (dot(row.coeffs, r).sign() > 0) return escape(r, row);
  for (const auto& l : iv.lines)
    for (const auto& row : rows) {
      const int s = dot(row.coeffs, l).sign();
      if (s > 0) return escape(l, row);
      if (s < 0) return escape(Vec(-l), row);
    }
  return std::nullopt;
}

bool contains_polyhedron(const Polyhedron& outer, const Polyhedron& inner) {
  return !containment_witness(outer, inner).has_value();
}

Polyhedron scale(const Polyhedron& p, const Rational& alpha) {
  if (alpha.sign() <= 0) throw std::invalid_argument("scale factor must be positive");
  if (p.is_empty() || alpha == Rational(1)) return p;
  // x -> alpha x keeps every canonical property: vertex order, rays, lines,
  // equation pivots and the reduced facet supports.
  Polyhedron q = p;
  for (auto& x : q.v_.vertices) x *= alpha;
  for (auto& f : q.facets_) f = LinearInequality(f.coeffs, f.rhs * alpha, Sense::Leq).normalized();
  for (auto& e : q.equations_) e = LinearInequality(e.coeffs, e.rhs * alpha, Sense::Leq).normalized();
  std::sort(q.facets_.begin(), q.facets_.end(), leq_row_less);
  return q;
}

Polyhedron intersect_rows(const Polyhedron& p, const std::vector<LinearInequality>& rows) {
  const auto n = p.dim();
  for (const auto& r : rows) require_same_dim(n, r.dim(), "intersect");
  if (p.is_empty()) return p;
  std::vector<LinearInequality> extra;
  for (const auto& r : rows) extra.push_back(r.as_leq());
  if (extra.empty()) return p;

  const auto base_rows = p.leq_rows();
  if (!p.is_pointed()) {
    HRep h;
    h.dim = n;
    h.rows = base_rows;
    h.rows.insert(h.rows.end(), extra.begin(), extra.end());
    return Polyhedron::from_h(h);
  }

  std::vector<Vec> cone_rows;
  for (const auto& r : base_rows) cone_rows.push_back(homogenize_row(r));
  Vec t_row = zero_vec(n + 1);
  t_row[n] = Rational(-1);
  cone_rows.push_back(t_row);
  std::vector<Vec> gens;
  for (const auto& x : p.vrep().vertices) gens.push_back(homogenize_point(x, Rational(1)));
  for (const auto& r : p.vrep().rays) gens.push_back(homogenize_point(r, Rational(0)));

  auto dd = PointedConeDD<Rational>::from_state(n + 1, n + 1, std::move(cone_rows), gens);
  for (const auto& r : extra) dd.add_row(homogenize_row(r));

  std::vector<Vec> out_gens;
  out_gens.reserve(dd.rays().size());
  for (const auto& r : dd.rays()) out_gens.push_back(r.v);
  std::vector<LinearInequality> candidates = base_rows;
  candidates.insert(candidates.end(), extra.begin(), extra.end());
  return Polyhedron::assemble(n, out_gens, {}, candidates, true);
}

Polyhedron intersect(const Polyhedron& a, const Polyhedron& b) {
  require_same_dim(a.dim(), b.dim(), "intersect");
  if (b.is_empty()) return b;
  return intersect_rows(a, b.leq_rows());
}

Polyhedron closed_convex_hull_union(const std::vector<Polyhedron>& pieces) {
  if (pieces.empty()) throw std::invalid_argument("closed_convex_hull_union needs at least one piece");
  const auto n = pieces.front().dim();
  std::vector<const Polyhedron*> nonempty;
  for (const auto& p : pieces) {
    require_same_dim(n, p.dim(), "closed_convex_hull_union");
    if (!p.is_empty()) nonempty.push_back(&p);
  }
  if (nonempty.empty()) return Polyhedron::empty(n);
  if (nonempty.size() == 1) return *nonempty.front();
  VRep v;
  v.dim = n;
  for (const auto* p : nonempty) {
    const auto& pv = p->vrep();
    v.vertices.insert(v.vertices.end(), pv.vertices.begin(), pv.vertices.end());
    v.rays.insert(v.rays.end(), pv.rays.begin(), pv.rays.end());
    v.lines.insert(v.lines.end(), pv.lines.begin(), pv.lines.end());
  }
  return Polyhedron::from_v(v);
}

LpOutcome optimize(const Polyhedron& p, const Vec& c, ObjectiveSense sense) {
  require_same_dim(p.dim(), c.size(), "optimize");
  LpOutcome out;
  if (p.is_empty()) return out;
  const int improving = sense == ObjectiveSense::Max ? 1 : -1;
  const auto& v = p.vrep();
  for (const auto& l : v.lines) {
    const int s = dot(c, l).sign();
    if (s != 0) {
      out.status = LpOutcome::Status::Unbounded;
      out.ray = s == improving ? l : Vec(-l);
      return out;
    }
  }
  for (const auto& r : v.rays) {
    if (dot(c, r).sign() == improving) {
      out.status = LpOutcome::Status::Unbounded;
      out.ray = r;
      return out;
    }
  }
  out.status = LpOutcome::Status::Optimal;
  bool first = true;
  for (const auto& x : v.vertices) {  // sorted lexicographically, so strict improvement keeps the lex-smallest
    const Rational val = dot(c, x);
    if (first || (improving > 0 ? val > out.value : val < out.value)) {
      out.value = val;
      out.point = x;
      first = false;
    }
  }
  return out;
}

}  // namespace closurelab
