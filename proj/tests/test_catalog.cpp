#include <gtest/gtest.h>

#include "closurelab/catalog.hpp"
#include "closurelab/closures.hpp"

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

}  // namespace

TEST(Catalog, TightPacking) {
  EXPECT_EQ(tight_packing(1).model, NonnegModel::packing(mat({{1, 1}, {1, 1}}), make_vec({1, 1})));
  const auto t = tight_packing(3);
  EXPECT_EQ(t.model, NonnegModel::packing(mat({{1, 3}, {3, 1}}), make_vec({3, 3})));
  EXPECT_EQ(t.descriptor.params.at("M"), 3);
  EXPECT_EQ(t.descriptor.kind, ModelKind::Packing);
  EXPECT_EQ(tight_packing_param(Rational(1, 10)), 19);
  EXPECT_EQ(tight_packing_param(Rational(3)), 1);
  EXPECT_THROW(tight_packing(0), PreconditionViolation);
  EXPECT_THROW(tight_packing_param(Rational(0)), PreconditionViolation);
}

TEST(Catalog, TightPackingParamExceedsTarget) {
  for (long long den : {2, 3, 7, 10, 100}) {
    const Rational eps(1, den);
    const long long m = tight_packing_param(eps);
    const Rational ratio = Rational(2 * m) / Rational(m + 1);
    EXPECT_GE(ratio, Rational(2) - eps);
    if (m > 1) EXPECT_LT(Rational(2 * (m - 1)) / Rational(m), Rational(2) - eps);
  }
}

TEST(Catalog, TightCovering) {
  const auto t = tight_covering(2);
  EXPECT_EQ(t.model, NonnegModel::covering(mat({{1, 2}, {2, 1}}), make_vec({2, 2})));
  const auto lp = optimize(t.model.polyhedron(), make_vec({1, 1}), ObjectiveSense::Min);
  EXPECT_TRUE(vec_equal(lp.point, make_vec({Rational(2, 3), Rational(2, 3)})));
  EXPECT_EQ(tight_covering_param(Rational(1, 3)), 3);
  EXPECT_EQ(tight_covering_param(Rational(1)), 2);
  EXPECT_THROW(tight_covering(1), PreconditionViolation);
  for (long long n : {2, 3, 5, 10}) {
    const auto c = tight_covering(n);
    const auto r = optimize(c.model.polyhedron(), Vec::Constant(n, Rational(1)), ObjectiveSense::Min);
    EXPECT_EQ(r.value, Rational(2 * n) / Rational(2 * n - 1));
    EXPECT_TRUE(vec_equal(r.point, Vec::Constant(n, Rational(2) / Rational(2 * n - 1))));
  }
}

TEST(Catalog, StableSet) {
  EXPECT_EQ(stable_set_relaxation(3).model.num_rows(), 3);
  for (long long n : {2, 4, 6, 8}) {
    const auto s = stable_set_relaxation(n);
    EXPECT_EQ(s.model.num_rows(), n * (n - 1) / 2);
    EXPECT_EQ(optimize(s.model.polyhedron(), Vec::Constant(n, Rational(1)), ObjectiveSense::Max).value,
              Rational(n, 2));
  }
  const auto h = integer_hull(stable_set_relaxation(2).model.polyhedron());
  EXPECT_EQ(h.vrep().vertices.size(), 3u);
  EXPECT_THROW(stable_set_relaxation(1), PreconditionViolation);
}

TEST(Catalog, AggregationExamples) {
  EXPECT_EQ(aggregation_packing_example().model, NonnegModel::packing(mat({{7, 1}, {0, 4}}), make_vec({7, 7})));
  EXPECT_EQ(aggregation_covering_example().model, NonnegModel::covering(mat({{7, 1}, {0, 4}}), make_vec({7, 7})));
  // The x2 intercept of the second row is 7/4.
  const auto p = aggregation_packing_example().model.polyhedron();
  EXPECT_EQ(optimize(p, make_vec({0, 1}), ObjectiveSense::Max).value, Rational(7, 4));
}

TEST(Catalog, EveryInstanceIsWellBehaved) {
  for (const auto& inst : {tight_packing(1), tight_packing(100), tight_covering(2), tight_covering(10),
                           stable_set_relaxation(5), aggregation_packing_example(), aggregation_covering_example(),
                           integral_box(3, 2)})
    EXPECT_TRUE(is_well_behaved(inst.model)) << inst.descriptor.name;
  for (std::uint64_t seed = 0; seed < 200; ++seed)
    for (auto kind : {ModelKind::Packing, ModelKind::Covering}) {
      const auto inst = random_well_behaved(kind, 1 + seed % 4, 1 + seed % 5, 1 + seed % 6, seed);
      EXPECT_TRUE(is_well_behaved(inst.model)) << seed;
      EXPECT_FALSE(inst.model.polyhedron().is_empty());
      if (kind == ModelKind::Packing) EXPECT_TRUE(inst.model.polyhedron().is_bounded());
    }
}

TEST(Catalog, ConstructionIsDeterministic) {
  EXPECT_EQ(tight_packing(7).model, tight_packing(7).model);
  EXPECT_EQ(tight_packing(7).model.polyhedron(), tight_packing(7).model.polyhedron());
  for (std::uint64_t seed : {0u, 1u, 99u}) {
    const auto a = random_well_behaved(ModelKind::Covering, 3, 4, 6, seed);
    const auto b = random_well_behaved(ModelKind::Covering, 3, 4, 6, seed);
    EXPECT_EQ(a.model, b.model);
    EXPECT_EQ(a.descriptor.params, b.descriptor.params);
  }
  EXPECT_FALSE(random_well_behaved(ModelKind::Packing, 3, 3, 6, 1).model ==
               random_well_behaved(ModelKind::Packing, 3, 3, 6, 2).model);
}

TEST(Catalog, GoldenRandomInstance) {
  const auto p = random_well_behaved(ModelKind::Packing, 3, 2, 5, 42);
  EXPECT_EQ(p.model, NonnegModel::packing(mat({{2, 1, 1}, {2, 1, 0}}), make_vec({2, 2})));
  const auto c = random_well_behaved(ModelKind::Covering, 3, 2, 5, 42);
  EXPECT_EQ(c.model, NonnegModel::covering(mat({{2, 1, 0}, {2, 1, 0}}), make_vec({2, 2})));
  EXPECT_EQ(p.descriptor.params.at("seed"), 42);
}

TEST(Catalog, IntegralBox) {
  const auto b = integral_box(2, 3);
  EXPECT_EQ(b.model.polyhedron().vrep().vertices.size(), 4u);
  EXPECT_EQ(integer_hull(b.model.polyhedron()), b.model.polyhedron());
  EXPECT_THROW(integral_box(0), PreconditionViolation);
}
