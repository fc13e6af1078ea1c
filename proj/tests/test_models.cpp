#include <random>

#include <gtest/gtest.h>

#include "closurelab/catalog.hpp"
#include "closurelab/closures.hpp"
#include "closurelab/models.hpp"
#include "oracles.hpp"

using namespace closurelab;

namespace {

Mat mat(std::initializer_list<std::initializer_list<long long>> rows) {
  Mat a(Eigen::Index(rows.size()), Eigen::Index(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (auto v : r) a(i, j++) = Rational(v);
    ++i;
  }
  return a;
}

Rational uniform(std::mt19937_64& rng, int den) {
  return Rational(static_cast<std::int64_t>(rng() % (den + 1)), den);
}

// Random convex combination of the vertices plus a random conic combination of rays.
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

}  // namespace

TEST(WellBehaved, Examples) {
  EXPECT_TRUE(is_well_behaved(tight_packing(3).model));
  EXPECT_FALSE(is_well_behaved(NonnegModel::covering(mat({{3, 1}}), make_vec({2}))));
  EXPECT_TRUE(is_well_behaved(stable_set_relaxation(4).model));
  EXPECT_FALSE(is_well_behaved(NonnegModel::packing(mat({{2, 1}}), make_vec({1}))));
}

TEST(WellBehaved, NormalizeCoveringClamps) {
  const auto p = normalize_well_behaved(NonnegModel::covering(mat({{3, 1}}), make_vec({2})));
  EXPECT_EQ(p, NonnegModel::covering(mat({{2, 1}}), make_vec({2})));
  EXPECT_TRUE(is_well_behaved(p));
}

TEST(WellBehaved, NormalizeIsFixpointOnWellBehaved) {
  for (const auto& inst : {tight_packing(3), tight_covering(3), stable_set_relaxation(4), integral_box(2, 2)})
    EXPECT_EQ(normalize_well_behaved(inst.model), inst.model) << inst.descriptor.name;
}

TEST(WellBehaved, NormalizePackingFixesCoordinate) {
  const auto orig = NonnegModel::packing(mat({{2, 1}}), make_vec({1}));
  const auto p = normalize_well_behaved(orig);
  EXPECT_TRUE(p.fixed_zero()[0]);
  EXPECT_FALSE(p.fixed_zero()[1]);
  EXPECT_EQ(p.A()(0, 0), Rational(0));
  EXPECT_TRUE(is_well_behaved(p));
  // {x2 <= 1, x1 = 0}
  EXPECT_EQ(p.polyhedron().vrep().vertices.size(), 2u);
  EXPECT_TRUE(p.polyhedron().contains(make_vec({0, 1})));
  EXPECT_FALSE(p.polyhedron().contains(make_vec({Rational(1, 4), 0})));

  const auto before = oracle::lattice_points(2, -1, 4, [&](const Vec& z) { return orig.polyhedron().contains(z); });
  const auto after = oracle::lattice_points(2, -1, 4, [&](const Vec& z) { return p.polyhedron().contains(z); });
  ASSERT_EQ(before.size(), after.size());
  for (std::size_t i = 0; i < before.size(); ++i) EXPECT_TRUE(vec_equal(before[i], after[i]));
}

TEST(WellBehaved, NormalizeKeepsIntegerPointsOnRandomData) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    Mat a(2, 3);
    Vec b(2);
    for (Eigen::Index i = 0; i < 2; ++i) {
      b[i] = Rational(1 + static_cast<long long>(rng() % 4));
      for (Eigen::Index j = 0; j < 3; ++j) a(i, j) = Rational(static_cast<long long>(rng() % 6));
    }
    for (auto kind : {ModelKind::Packing, ModelKind::Covering}) {
      const NonnegModel orig(kind, a, b);
      const auto norm = normalize_well_behaved(orig);
      EXPECT_TRUE(is_well_behaved(norm));
      auto pts = [](const NonnegModel& m) {
        return oracle::lattice_points(3, 0, 5, [&](const Vec& z) { return m.polyhedron().contains(z); });
      };
      const auto x = pts(orig), y = pts(norm);
      ASSERT_EQ(x.size(), y.size());
      for (std::size_t i = 0; i < x.size(); ++i) EXPECT_TRUE(vec_equal(x[i], y[i]));
    }
  }
}

TEST(Model, RejectsNegativeDataAndBadShapes) {
  EXPECT_THROW(NonnegModel::packing(mat({{1, -1}}), make_vec({1})), std::invalid_argument);
  EXPECT_THROW(NonnegModel::covering(mat({{1, 1}}), make_vec({-1})), std::invalid_argument);
  EXPECT_THROW(NonnegModel::packing(mat({{1, 1}}), make_vec({1, 2})), DimensionMismatch);
}

TEST(Breve, Examples) {
  EXPECT_TRUE(vec_equal(breve(make_vec({1, -2, 3}), {1}), make_vec({1, 0, 3})));
  const Vec u = make_vec({4, Rational(-1, 2), 7});
  EXPECT_TRUE(vec_equal(breve(u, {}), u));
  EXPECT_TRUE(is_zero(breve(u, {0, 1, 2})));
  EXPECT_THROW(breve(u, {3}), std::invalid_argument);
}

TEST(Breve, IdempotentLinearAndSupportDisjoint) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index n = 1 + Eigen::Index(rng() % 5);
    Vec u(n), w(n);
    IndexSet tset;
    for (Eigen::Index j = 0; j < n; ++j) {
      u[j] = Rational(static_cast<long long>(rng() % 7) - 3, 1 + static_cast<long long>(rng() % 3));
      w[j] = Rational(static_cast<long long>(rng() % 7) - 3);
      if (rng() % 2) tset.push_back(j);
    }
    const Rational s(static_cast<long long>(rng() % 5) - 2);
    EXPECT_TRUE(vec_equal(breve(breve(u, tset), tset), breve(u, tset)));
    EXPECT_TRUE(vec_equal(breve(Vec(u + s * w), tset), Vec(breve(u, tset) + s * breve(w, tset))));
    Vec v = u;
    for (auto j : tset) v[j] = Rational(0);
    EXPECT_TRUE(vec_equal(breve(v, tset), v));
  }
}

TEST(Restrict, Examples) {
  const auto r = restrict_M_T(SplitSet(make_vec({2, 1}), 0), {1});
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r, SplitSet(make_vec({2, 0}), 0));
  EXPECT_FALSE(restrict_M_T(SplitSet(make_vec({0, 1}), 0), {1}).has_value());

  // 0 < x1 < 1 as a body; removing coordinate 0 leaves 0 < 0.
  const LatticeFreeBody strip({{make_vec({1, 0}), 1, Sense::Leq}, {make_vec({-1, 0}), 0, Sense::Leq}});
  EXPECT_FALSE(restrict_M_T(strip, {0}).has_value());
  // Point sampling agrees: nothing satisfies 0 < 0.
  for (const auto& z : oracle::lattice_points(2, -2, 2, [](const Vec&) { return true; }))
    EXPECT_FALSE(LatticeFreeBody({{make_vec({0, 0}), 0, Sense::Leq}, {make_vec({-1, 0}), 0, Sense::Leq}})
                     .interior_contains(z));

  // A row whose breve vanishes with positive rhs is dropped.
  const LatticeFreeBody tri({{make_vec({1, 0}), 1, Sense::Leq},
                             {make_vec({0, 1}), 1, Sense::Leq},
                             {make_vec({-1, -1}), -1, Sense::Leq}});
  const auto rt = restrict_M_T(tri, {0});
  ASSERT_TRUE(rt.has_value());
  EXPECT_EQ(rt->rows.size(), 2u);
}

TEST(Restrict, MultiBranchDropsEmptyMembers) {
  MultiBranchSplit m{{SplitSet(make_vec({0, 1}), 0), SplitSet(make_vec({1, 1}), 0)}};
  const auto r = restrict_M_T(m, {1});
  ASSERT_TRUE(r.has_value());
  ASSERT_EQ(r->splits.size(), 1u);
  EXPECT_EQ(r->splits[0], SplitSet(make_vec({1, 0}), 0));
  EXPECT_FALSE(restrict_M_T(MultiBranchSplit{{SplitSet(make_vec({0, 1}), 0)}}, {1}).has_value());
}

TEST(Restrict, EmptyIndexSetIsIdentity) {
  const SplitSet s(make_vec({2, -1, 3}), 4);
  EXPECT_EQ(*restrict_M_T(s, {}), s);
  const MultiBranchSplit m{{s, SplitSet(make_vec({1, 0, 0}), 0)}};
  const auto rm = restrict_M_T(m, {});
  ASSERT_EQ(rm->splits.size(), 2u);
  EXPECT_EQ(rm->splits[0], m.splits[0]);
  EXPECT_EQ(rm->splits[1], m.splits[1]);
  const LatticeFreeBody l({{make_vec({1, 0, 0}), 1, Sense::Leq}, {make_vec({-1, 0, 0}), 0, Sense::Leq}});
  const auto rl = restrict_M_T(l, {});
  ASSERT_EQ(rl->rows.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(rl->rows[i], l.rows[i]);
}

TEST(LatticeFree, Examples) {
  const IntBox five{{0, 0}, {5, 5}};
  EXPECT_TRUE(is_strict_lattice_free(SplitSet(make_vec({1, 1}), 1), five));
  EXPECT_TRUE(is_strict_lattice_free(SplitSet(make_vec({2, 0}), 1), IntBox{{0, 0}, {3, 3}}));
  const LatticeFreeBody strip({{make_vec({-1, 0}), 0, Sense::Leq}, {make_vec({1, 0}), 1, Sense::Leq}});
  EXPECT_TRUE(is_strict_lattice_free(strip, IntBox{{-3, -3}, {3, 3}}));
  const LatticeFreeBody wide({{make_vec({-1, 0}), 0, Sense::Leq}, {make_vec({1, 0}), 2, Sense::Leq}});
  EXPECT_FALSE(is_strict_lattice_free(wide, IntBox{{-3, -3}, {3, 3}}));
  EXPECT_THROW(is_strict_lattice_free(strip, IntBox{{0, 0}, {2000, 2000}}, 1000), CapExceeded);
  EXPECT_THROW(is_strict_lattice_free(strip, IntBox{{0}, {1}}), DimensionMismatch);
}

TEST(LatticeFree, SplitConstructionAndCanonical) {
  EXPECT_THROW(SplitSet(make_vec({Rational(1, 2), 1}), 0), std::invalid_argument);
  EXPECT_THROW(SplitSet(make_vec({0, 0}), 0), std::invalid_argument);
  const SplitSet s(make_vec({-1, 2}), 3);
  const auto c = s.canonical();
  EXPECT_EQ(c, SplitSet(make_vec({1, -2}), -4));
  for (const auto& z : oracle::lattice_points(2, -3, 3, [](const Vec&) { return true; })) {
    const Vec x = z / Rational(3);
    EXPECT_EQ(s.contains(x), c.contains(x));
  }
}

TEST(LatticeFree, EnumeratedSplitsAreLatticeFreeOnBoundingBox) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = random_well_behaved(ModelKind::Packing, 2 + seed % 2, 2, 4, seed);
    const auto& p = inst.model.polyhedron();
    const auto box = bounding_box(p, 1);
    for (const auto& s : enumerate_splits(p, 2, std::nullopt, true)) EXPECT_TRUE(is_strict_lattice_free(s, box));
  }
}

TEST(LatticeFree, EnumerateBoxVisitsEveryPointOnce) {
  const IntBox box{{-1, 0, 2}, {1, 2, 2}};
  EXPECT_EQ(box.count(), 9u);
  std::size_t n = 0;
  std::vector<Vec> seen;
  for_each_lattice_point(box, 100, [&](const Vec& z) {
    ++n;
    seen.push_back(z);
  });
  EXPECT_EQ(n, 9u);
  std::sort(seen.begin(), seen.end(), LexLess{});
  EXPECT_EQ(std::unique(seen.begin(), seen.end(), VecEqual{}), seen.end());
  EXPECT_EQ((IntBox{{0}, {-1}}).count(), 0u);
}

TEST(Closedness, PackingIsDownwardClosed) {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = random_well_behaved(ModelKind::Packing, 3, 3, 5, seed);
    const auto& p = inst.model.polyhedron();
    for (int t = 0; t < 10; ++t) {
      const Vec x = sample_point(p, rng);
      ASSERT_TRUE(p.contains(x));
      Vec y = x;
      for (Eigen::Index j = 0; j < y.size(); ++j) y[j] *= uniform(rng, 5);
      EXPECT_TRUE(p.contains(y)) << to_string(x) << " -> " << to_string(y);
    }
  }
}

TEST(Closedness, CoveringIsUpwardClosed) {
  std::mt19937_64 rng(4);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = random_well_behaved(ModelKind::Covering, 3, 3, 5, seed);
    const auto& p = inst.model.polyhedron();
    EXPECT_EQ(p.vrep().rays.size(), 3u);
    for (int t = 0; t < 10; ++t) {
      const Vec x = sample_point(p, rng);
      ASSERT_TRUE(p.contains(x));
      Vec y = x;
      for (Eigen::Index j = 0; j < y.size(); ++j) y[j] += uniform(rng, 4) * Rational(3);
      EXPECT_TRUE(p.contains(y)) << to_string(x) << " -> " << to_string(y);
    }
  }
}

TEST(Disjunction, DescribeAndMembership) {
  const Disjunction s = SplitSet(make_vec({1, 1}), 1);
  EXPECT_EQ(describe(s), "S((1,1),1)");
  EXPECT_TRUE(removed_contains(s, make_vec({Rational(3, 4), Rational(3, 4)})));
  EXPECT_FALSE(removed_contains(s, make_vec({1, 0})));
  const Disjunction m = MultiBranchSplit{{SplitSet(make_vec({1, 0}), 0), SplitSet(make_vec({0, 1}), 0)}};
  EXPECT_TRUE(removed_contains(m, make_vec({Rational(1, 2), 5})));
  EXPECT_FALSE(removed_contains(m, make_vec({1, 1})));
  EXPECT_EQ(dim_of(m), 2);
}
