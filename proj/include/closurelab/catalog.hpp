#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "closurelab/models.hpp"

namespace closurelab {

struct InstanceDescriptor {
  std::string name;
  ModelKind kind = ModelKind::Packing;
  std::map<std::string, long long> params;
  std::string description;
};

struct CatalogInstance {
  InstanceDescriptor descriptor;
  NonnegModel model;
};

/// x1 + M x2 <= M, M x1 + x2 <= M. The split closure is a factor 2M/(M+1) away from the LP.
CatalogInstance tight_packing(long long m);
/// M = max{1, ceil(2/eps - 1)}, the smallest M whose ratio reaches 2 - eps (equality when 2/eps is an integer).
long long tight_packing_param(const Rational& eps);

/// x_i + sum_{j != i} 2 x_j >= 2 for all i. The LP optimum is 2n/(2n-1), the split closure value 2.
CatalogInstance tight_covering(long long n);
/// n = max{2, ceil(1/eps)}.
long long tight_covering_param(const Rational& eps);

/// Edge relaxation of the stable set polytope of the complete graph K_n.
CatalogInstance stable_set_relaxation(long long n);

/// 7 x1 + x2 <= 7, 4 x2 <= 7: a split cut that no single aggregation reproduces.
CatalogInstance aggregation_packing_example();
/// 7 x1 + x2 >= 7, 4 x2 >= 7: covering counterpart.
CatalogInstance aggregation_covering_example();

/// {0 <= x <= u} written as a packing system.
CatalogInstance integral_box(long long n, long long u = 1);

/// b_i uniform in [1, coeff_max] and A_ij uniform in [0, b_i], so the instance is well-behaved.
CatalogInstance random_well_behaved(ModelKind kind, long long n, long long m, long long coeff_max, std::uint64_t seed);

}  // namespace closurelab
