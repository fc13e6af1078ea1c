#include "closurelab/catalog.hpp"

#include <random>

namespace closurelab {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionViolation(what);
}

// Uniform integer in [lo, hi]; modulo mapping keeps results identical across standard libraries.
long long draw(std::mt19937_64& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

CatalogInstance tight_packing(long long m) {
  require(m >= 1, "tight packing needs M >= 1");
  Mat a(2, 2);
  a << Rational(1), Rational(m), Rational(m), Rational(1);
  return {{"tight-packing", ModelKind::Packing, {{"M", m}}, "two-row packing instance with split gap 2M/(M+1)"},
          NonnegModel::packing(a, make_vec({m, m}))};
}

long long tight_packing_param(const Rational& eps) {
  require(eps.sign() > 0, "epsilon must be positive");
  const Rational m = (Rational(2) / eps - Rational(1)).ceil();
  return std::max<long long>(1, m.numerator().get_si());
}

CatalogInstance tight_covering(long long n) {
  require(n >= 2, "tight covering needs n >= 2");
  Mat a = Mat::Constant(n, n, Rational(2));
  for (long long i = 0; i < n; ++i) a(i, i) = Rational(1);
  return {{"tight-covering", ModelKind::Covering, {{"n", n}}, "covering instance with split gap 2 - 1/n"},
          NonnegModel::covering(a, Vec::Constant(n, Rational(2)))};
}

long long tight_covering_param(const Rational& eps) {
  require(eps.sign() > 0, "epsilon must be positive");
  const Rational n = (Rational(1) / eps).ceil();
  return std::max<long long>(2, n.numerator().get_si());
}

CatalogInstance stable_set_relaxation(long long n) {
  require(n >= 2, "stable set relaxation needs n >= 2");
  const long long m = n * (n - 1) / 2;
  Mat a = Mat::Constant(m, n, Rational(0));
  long long r = 0;
  for (long long i = 0; i < n; ++i)
    for (long long j = i + 1; j < n; ++j, ++r) {
      a(r, i) = Rational(1);
      a(r, j) = Rational(1);
    }
  return {{"stable-set", ModelKind::Packing, {{"n", n}}, "edge formulation of stable sets in K_n"},
          NonnegModel::packing(a, Vec::Constant(m, Rational(1)))};
}

CatalogInstance aggregation_packing_example() {
  Mat a(2, 2);
  a << Rational(7), Rational(1), Rational(0), Rational(4);
  return {{"aggregation-packing", ModelKind::Packing, {}, "split cut 7x1+4x2<=7 beyond every aggregation"},
          NonnegModel::packing(a, make_vec({7, 7}))};
}

CatalogInstance aggregation_covering_example() {
  Mat a(2, 2);
  a << Rational(7), Rational(1), Rational(0), Rational(4);
  return {{"aggregation-covering", ModelKind::Covering, {}, "split cut 21x1+4x2>=28 beyond every aggregation"},
          NonnegModel::covering(a, make_vec({7, 7}))};
}

CatalogInstance integral_box(long long n, long long u) {
  require(n >= 1 && u >= 0, "box needs n >= 1 and u >= 0");
  Mat a = Mat::Constant(n, n, Rational(0));
  for (long long j = 0; j < n; ++j) a(j, j) = Rational(1);
  return {{"box", ModelKind::Packing, {{"n", n}, {"u", u}}, "integral box [0,u]^n"},
          NonnegModel::packing(a, Vec::Constant(n, Rational(u)))};
}

CatalogInstance random_well_behaved(ModelKind kind, long long n, long long m, long long coeff_max,
                                    std::uint64_t seed) {
  require(n >= 1 && m >= 1, "random instance needs n, m >= 1");
  require(coeff_max >= 1, "random instance needs coeff_max >= 1");
  std::mt19937_64 rng(seed);
  Mat a(m, n);
  Vec b(m);
  for (long long i = 0; i < m; ++i) {
    b[i] = Rational(draw(rng, 1, coeff_max));
    const long long bi = b[i].numerator().get_si();
    for (long long j = 0; j < n; ++j) a(i, j) = Rational(draw(rng, 0, bi));
  }
  if (kind == ModelKind::Covering) {
    // A zero row would make the system infeasible.
    for (long long i = 0; i < m; ++i)
      if (is_zero(Vec(a.row(i).transpose()))) a(i, draw(rng, 0, n - 1)) = b[i];
  } else {
    // A zero column would make the polyhedron unbounded.
    for (long long j = 0; j < n; ++j)
      if (is_zero(Vec(a.col(j)))) a(draw(rng, 0, m - 1), j) = Rational(1);
  }
  InstanceDescriptor d{"random", kind,
                       {{"n", n}, {"m", m}, {"coeff_max", coeff_max}, {"seed", static_cast<long long>(seed)}},
                       "seeded random well-behaved " + to_string(kind) + " instance"};
  return {std::move(d), NonnegModel(kind, std::move(a), std::move(b))};
}

}  // namespace closurelab
