// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "closurelab/analysis.hpp"
#include "closurelab/catalog.hpp"
#include "oracles.hpp"

using namespace closurelab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

bool run_criterion(int id, const std::string& title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) out.fail("runtime " + std::to_string(secs) + " s over budget");
  char line[256];
  std::snprintf(line, sizeof line, "%s  [%d] %s (%.2f s, budget %.0f s)", out.pass ? "PASS" : "FAIL", id,
                title.c_str(), secs, budget_s);
  std::cout << line;
  if (!out.pass) std::cout << ": " << out.detail;
  std::cout << std::endl;
  return out.pass;
}

Vec ones(Eigen::Index n) { return Vec::Constant(n, Rational(1)); }

FamilySpec family(FamilyKind kind, int k, int bound) {
  FamilySpec f;
  f.kind = kind;
  f.k = k;
  f.coeff_bound = bound;
  return f;
}

Rational uniform(std::mt19937_64& rng, int den) { return Rational(static_cast<long long>(rng() % (den + 1)), den); }

Vec sample_point(const Polyhedron& p, std::mt19937_64& rng) {
  const auto& v = p.vrep();
  Vec x = zero_vec(p.dim());
  Rational left(1);
  for (std::size_t i = 0; i + 1 < v.vertices.size(); ++i) {
    const Rational w = left * uniform(rng, 7);
    x += w * v.vertices[i];
    left -= w;
  }
  x += left * v.vertices.back();
  for (const auto& r : v.rays) x += uniform(rng, 3) * r;
  return x;
}

ModelKind kind_of(std::uint64_t seed) { return seed % 2 == 0 ? ModelKind::Packing : ModelKind::Covering; }

// Seeded fuzz corpus shared by the structural checks.
std::vector<CatalogInstance> fuzz_corpus(std::size_t count) {
  std::vector<CatalogInstance> out;
  for (std::uint64_t seed = 0; seed < count; ++seed)
    out.push_back(random_well_behaved(kind_of(seed), 2 + static_cast<long long>(seed / 2 % 2),
                                      2 + static_cast<long long>(seed / 4 % 2), 5, 1000 + seed));
  return out;
}

void tight_packing_criterion(Outcome& out) {
  for (long long m : {1LL, 3LL, 10LL, 100LL}) {
    const auto inst = tight_packing(m);
    const Rational expected(2 * m, m + 1);
    // Independent route: the LP optimum sits at the intersection x1 = x2 = M/(M+1).
    const auto verts = oracle::brute_force_vertices(inst.model.polyhedron().leq_rows(), 2);
    Rational lp(0);
    for (const auto& v : verts) lp = std::max(lp, dot(ones(2), v));
    out.expect(lp == expected, "oracle LP value for M=" + std::to_string(m));

    const auto g = tightness_experiment(ModelKind::Packing, m);
    std::ostringstream tag;
    tag << "M=" << m << ": z_lp " << g.z_lp << ", z_closure " << (g.z_closure ? g.z_closure->str() : "none");
    out.expect(g.z_lp == expected, tag.str());
    out.expect(g.z_closure && *g.z_closure <= Rational(1), tag.str());
    if (m >= 2) out.expect(g.z_closure && *g.z_closure == Rational(1), tag.str());
    out.expect(g.closure_ratio && *g.closure_ratio == expected, tag.str() + " ratio");
  }
}

void tight_covering_criterion(Outcome& out) {
  for (long long n : {2LL, 3LL, 10LL}) {
    const auto g = tightness_experiment(ModelKind::Covering, n);
    std::ostringstream tag;
    tag << "n=" << n << ": z_lp " << g.z_lp << ", z_closure " << (g.z_closure ? g.z_closure->str() : "none");
    out.expect(g.z_lp == Rational(2 * n, 2 * n - 1), tag.str());
    out.expect(g.z_closure && *g.z_closure == Rational(2), tag.str());
    out.expect(g.closure_ratio && *g.closure_ratio == Rational(2) - Rational(1, n), tag.str() + " ratio");
    // The uniform point 2/(2n-1) is LP-feasible and attains z_lp.
    const Vec x = Vec::Constant(n, Rational(2, 2 * n - 1));
    const auto inst = tight_covering(n);
    out.expect(inst.model.polyhedron().contains(x) && dot(ones(n), x) == g.z_lp, tag.str() + " LP witness");
  }
}

void aggregation_criterion(Outcome& out) {
  const auto pack = aggregation_packing_example().model;
  const auto cover = aggregation_covering_example().model;
  const auto check = [&](const NonnegModel& m, const Vec& z, const Rational& lo, const Rational& hi,
                         const std::string& tag) {
    const auto w = aggregation_membership(m, z);
    out.expect(!w.empty && w.lo == lo && w.hi == hi, tag + " interval");
    // Dual route: probe the relaxation itself just inside and outside the interval.
    const Rational eps(1, 1000);
    out.expect(aggregation_relaxation(m, lo).contains(z) && aggregation_relaxation(m, hi).contains(z), tag + " ends");
    if (lo > Rational(0)) out.expect(!aggregation_relaxation(m, lo - eps).contains(z), tag + " below");
    if (hi < Rational(1)) out.expect(!aggregation_relaxation(m, hi + eps).contains(z), tag + " above");
  };
  check(pack, make_vec({0, 2}), Rational(0), Rational(5, 6), "packing (0,2)");
  check(pack, make_vec({1, 1}), Rational(1, 4), Rational(1), "packing (1,1)");
  check(cover, make_vec({0, 6}), Rational(1, 18), Rational(1), "covering (0,6)");
  check(cover, make_vec({1, 1}), Rational(0), Rational(1, 4), "covering (1,1)");

  const SplitSet s(make_vec({1, 0}), 0);
  const auto has_facet = [](const Polyhedron& h, const LinearInequality& want) {
    const auto leq = want.as_leq().normalized();
    for (const auto& f : h.facets())
      if (f == leq) return true;
    return false;
  };
  out.expect(has_facet(split_hull(pack.polyhedron(), s), LinearInequality(make_vec({7, 4}), 7, Sense::Leq)),
             "7x1 + 4x2 <= 7 is not a facet");
  out.expect(has_facet(split_hull(cover.polyhedron(), s), LinearInequality(make_vec({21, 4}), 28, Sense::Geq)),
             "21x1 + 4x2 >= 28 is not a facet");
}

struct AlphaTally {
  std::size_t instances = 0;
  std::size_t members = 0;
  double seconds = 0;

  std::string str() const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu instances / %zu members (%.1f s)", instances, members, seconds);
    return buf;
  }
};

void verify_corpus(Outcome& out, AlphaTally& tally, ModelKind kind, const FamilySpec& f, std::uint64_t seed0,
                   std::size_t count, const std::vector<long long>& dims) {
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t seed = seed0 + i;
    const long long n = dims[i % dims.size()];
    const auto inst = random_well_behaved(kind, n, 2 + static_cast<long long>(i / dims.size() % 2), 4, seed);
    const Rational alpha = verification_alpha(kind, f, n);
    const auto verdicts = verify_alpha_per_disjunction(inst.model, f, alpha);
    ++tally.instances;
    tally.members += verdicts.size();
    for (const auto& v : verdicts)
      if (!v.holds)
        out.fail(to_string(kind) + " seed " + std::to_string(seed) + " " + f.str() + " fails at " + v.disjunction +
                 " witness " + to_string(*v.witness));
  }
  tally.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void alpha_criterion(Outcome& out) {
  AlphaTally split_pack, split_cover, kbranch, latticefree;
  const std::vector<long long> all_dims = {2, 2, 3, 3, 4};
  verify_corpus(out, split_pack, ModelKind::Packing, family(FamilyKind::Split, 1, 3), 5000, 201, all_dims);
  verify_corpus(out, split_cover, ModelKind::Covering, family(FamilyKind::Split, 1, 3), 6000, 201, all_dims);
  verify_corpus(out, kbranch, ModelKind::Packing, family(FamilyKind::KBranch, 2, 2), 7000, 40, {2, 2, 2, 3});
  verify_corpus(out, latticefree, ModelKind::Packing, family(FamilyKind::LatticeFree, 3, 2), 8000, 20,
                {2, 2, 2, 2, 3});
  std::cout << "      split packing: " << split_pack.str() << "\n      split covering: " << split_cover.str()
            << "\n      2-branch packing: " << kbranch.str() << "\n      lattice-free packing: " << latticefree.str()
            << std::endl;
}

void rank_criterion(Outcome& out) {
  const FamilySpec f = family(FamilyKind::Split, 1, 1);
  for (const auto& inst : {tight_packing(3), integral_box(2), stable_set_relaxation(4)}) {
    const auto& m = inst.model;
    const auto hull = integer_hull(m.polyhedron());
    const auto lower = rank_lower_bound(m, hull, default_costs(m), Rational(2)).lower;
    const auto upper = iterated_closure_rank(m.polyhedron(), hull, f, 4);
    out.expect(upper.has_value(), inst.descriptor.name + ": closure did not converge");
    if (upper)
      out.expect(lower <= *upper, inst.descriptor.name + ": lower " + std::to_string(lower) + " > upper " +
                                      std::to_string(*upper));
  }
  for (long long n : {4LL, 8LL}) {
    const auto m = stable_set_relaxation(n).model;
    const auto r = rank_lower_bound(m, {ones(n)}, Rational(2));
    const int expected = ceil_log(Rational(n, 2), Rational(2));
    out.expect(r.lower == expected, "stable set n=" + std::to_string(n) + ": lower " + std::to_string(r.lower));
  }
}

bool downward_closed_sample(const Polyhedron& q, std::mt19937_64& rng) {
  for (int t = 0; t < 20; ++t) {
    const Vec x = sample_point(q, rng);
    if (!q.contains(x)) return false;
    Vec y = x;
    for (Eigen::Index j = 0; j < y.size(); ++j) y[j] *= uniform(rng, 5);
    if (!q.contains(y)) return false;
  }
  return true;
}

void structure_criterion(Outcome& out) {
  std::mt19937_64 rng(17);
  const FamilySpec f = family(FamilyKind::Split, 1, 3);
  for (const auto& inst : fuzz_corpus(120)) {
    const auto closure = enumerated_closure(inst.model.polyhedron(), f).polyhedron;
    const std::string tag = inst.descriptor.name + " seed " + std::to_string(inst.descriptor.params.at("seed"));
    if (!inst.model.is_packing()) {
      if (const auto why = covering_facet_violation(closure)) out.fail(tag + ": " + *why);
    } else {
      out.expect(downward_closed_sample(closure, rng), tag + ": closure not downward closed");
    }
  }
}

HRep random_hrep(std::mt19937_64& rng, Eigen::Index n, int m) {
  HRep h;
  h.dim = n;
  h.nonneg = rng() % 2 == 0;
  for (int i = 0; i < m; ++i) {
    Vec a(n);
    for (Eigen::Index j = 0; j < n; ++j) a[j] = Rational(static_cast<long long>(rng() % 9) - 4);
    h.rows.emplace_back(a, Rational(static_cast<long long>(rng() % 7)), Sense::Leq);
  }
  // Keep the set bounded so the vertex lists describe it fully.
  for (Eigen::Index j = 0; j < n; ++j) {
    h.rows.emplace_back(unit_vec(n, j), Rational(5), Sense::Leq);
    if (!h.nonneg) h.rows.emplace_back(-unit_vec(n, j), Rational(5), Sense::Leq);
  }
  return h;
}

void oracle_criterion(Outcome& out) {
  std::mt19937_64 rng(29);
  std::size_t checked = 0;
  for (Eigen::Index n = 1; n <= 3; ++n) {
    for (int m = 0; m <= 6; ++m) {
      for (int rep = 0; rep < 12; ++rep) {
        const HRep h = random_hrep(rng, n, m);
        const auto verts = dd_convert(h).vertices;
        const auto truth = oracle::brute_force_vertices(h.leq_rows(), n);
        auto sorted = verts;
        std::sort(sorted.begin(), sorted.end(), LexLess{});
        const bool same = sorted.size() == truth.size() &&
                          std::equal(sorted.begin(), sorted.end(), truth.begin(), VecEqual{});
        out.expect(same, "n=" + std::to_string(n) + " m=" + std::to_string(m) + " vertex lists differ");
        ++checked;
      }
    }
  }
  for (const auto& inst : {tight_packing(3), tight_covering(2), tight_covering(3), stable_set_relaxation(3),
                           aggregation_packing_example(), aggregation_covering_example()}) {
    const auto& p = inst.model.polyhedron();
    const auto truth = oracle::brute_force_vertices(inst.model.hrep().leq_rows(), p.dim());
    out.expect(p.vrep().vertices.size() == truth.size() &&
                   std::equal(p.vrep().vertices.begin(), p.vrep().vertices.end(), truth.begin(), VecEqual{}),
               inst.descriptor.name + ": vertex lists differ");
    ++checked;
  }
  std::cout << "      " << checked << " systems compared" << std::endl;
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run_criterion(1, "tight packing ratio 2M/(M+1)", 5, tight_packing_criterion);
  ok &= run_criterion(2, "tight covering ratio 2 - 1/n", 10, tight_covering_criterion);
  ok &= run_criterion(3, "aggregation thresholds and split-cut facets", 1, aggregation_criterion);
  ok &= run_criterion(4, "per-disjunction approximation factors", 600, alpha_criterion);
  ok &= run_criterion(5, "rank sandwich", 120, rank_criterion);
  ok &= run_criterion(6, "closure structure on the fuzz corpus", 600, structure_criterion);
  ok &= run_criterion(7, "double description against brute-force vertices", 60, oracle_criterion);
  return ok ? 0 : 1;
}
