#pragma once

// Double description method for polyhedral cones {y : A y <= 0}.
//
// The cone is split as C = C' + L where L = ker A is the lineality space and
// C' = C ∩ rowspace(A) is pointed. Extreme rays of C' are built incrementally
// starting from a simplicial cone on a row basis; adjacency is decided by the
// combinatorial zero-set test.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "closurelab/linalg.hpp"

namespace closurelab {

/// Hook for rescaling generated rays; exact scalars may override it by ADL.
template <class Vector>
void normalize_ray(Vector&) {}

template <class Scalar>
struct ConeGenerators {
  std::vector<linalg::DenseVector<Scalar>> rays;
  std::vector<linalg::DenseVector<Scalar>> lines;
};

template <class Scalar>
class PointedConeDD {
 public:
  using VecT = linalg::DenseVector<Scalar>;
  using Bits = boost::dynamic_bitset<>;

  struct Ray {
    VecT v;
    Bits zeros;
  };

  /// `space_rank` is the dimension of the linear space the cone lives in.
  PointedConeDD(Eigen::Index dim, Eigen::Index space_rank) : dim_(dim), space_rank_(space_rank) {}

  /// Starts from a known pointed cone: its defining rows and its extreme rays.
  static PointedConeDD from_state(Eigen::Index dim, Eigen::Index space_rank, std::vector<VecT> rows,
                                  const std::vector<VecT>& rays) {
    PointedConeDD dd(dim, space_rank);
    dd.rows_ = std::move(rows);
    for (const auto& r : rays) {
      Ray ray{r, Bits(dd.rows_.size())};
      for (std::size_t i = 0; i < dd.rows_.size(); ++i)
        if (is_zero_value(dd.rows_[i], r)) ray.zeros.set(i);
      dd.rays_.push_back(std::move(ray));
    }
    return dd;
  }

  /// Simplicial start on independent rows `basis` taken from `rows`.
  static PointedConeDD simplicial(const std::vector<VecT>& basis_rows, Eigen::Index dim) {
    const auto r = static_cast<Eigen::Index>(basis_rows.size());
    PointedConeDD dd(dim, r);
    linalg::DenseMatrix<Scalar> b(r, dim);
    for (Eigen::Index i = 0; i < r; ++i) b.row(i) = basis_rows[static_cast<std::size_t>(i)].transpose();
    const linalg::DenseMatrix<Scalar> gram = b * b.transpose();
    dd.rows_ = basis_rows;
    for (Eigen::Index i = 0; i < r; ++i) {
      VecT rhs(r);
      for (Eigen::Index j = 0; j < r; ++j) rhs[j] = Scalar(0);
      rhs[i] = Scalar(-1);
      const VecT z = linalg::solve<Scalar>(gram, rhs);
      VecT v = b.transpose() * z;
      normalize_ray(v);
      Ray ray{std::move(v), Bits(static_cast<std::size_t>(r))};
      ray.zeros.set();
      ray.zeros.reset(static_cast<std::size_t>(i));
      dd.rays_.push_back(std::move(ray));
    }
    return dd;
  }

  /// Intersects the cone with {y : a y <= 0}.
  void add_row(const VecT& a) {
    const std::size_t idx = rows_.size();
    rows_.push_back(a);
    for (auto& r : rays_) r.zeros.resize(idx + 1);

    std::vector<Scalar> val(rays_.size());
    std::vector<std::size_t> pos, neg, zero;
    for (std::size_t i = 0; i < rays_.size(); ++i) {
      val[i] = dot_value(a, rays_[i].v);
      const int s = sign_of(val[i]);
      if (s > 0)
        pos.push_back(i);
      else if (s < 0)
        neg.push_back(i);
      else
        zero.push_back(i);
    }
    if (pos.empty()) {
      for (auto i : zero) rays_[i].zeros.set(idx);
      return;
    }

    std::vector<Ray> next;
    next.reserve(neg.size() + zero.size() + pos.size());
    const std::size_t need = space_rank_ >= 2 ? static_cast<std::size_t>(space_rank_ - 2) : 0;
    for (auto p : pos) {
      for (auto q : neg) {
        Bits common = rays_[p].zeros & rays_[q].zeros;
        if (common.count() < need) continue;
        bool adjacent = true;
        for (std::size_t t = 0; t < rays_.size() && adjacent; ++t) {
          if (t == p || t == q) continue;
          if (common.is_subset_of(rays_[t].zeros)) adjacent = false;
        }
        if (!adjacent) continue;
        VecT v = val[p] * rays_[q].v - val[q] * rays_[p].v;
        normalize_ray(v);
        common.set(idx);
        next.push_back(Ray{std::move(v), std::move(common)});
      }
    }
    for (auto i : neg) next.push_back(std::move(rays_[i]));
    for (auto i : zero) {
      rays_[i].zeros.set(idx);
      next.push_back(std::move(rays_[i]));
    }
    rays_ = std::move(next);
  }

  const std::vector<Ray>& rays() const { return rays_; }
  const std::vector<VecT>& rows() const { return rows_; }
  Eigen::Index dim() const { return dim_; }

 private:
  static Scalar dot_value(const VecT& a, const VecT& v) {
    Scalar s(0);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (a[i] == Scalar(0) || v[i] == Scalar(0)) continue;
      s += a[i] * v[i];
    }
    return s;
  }
  static bool is_zero_value(const VecT& a, const VecT& v) { return dot_value(a, v) == Scalar(0); }
  static int sign_of(const Scalar& s) { return s > Scalar(0) ? 1 : (s < Scalar(0) ? -1 : 0); }

  Eigen::Index dim_;
  Eigen::Index space_rank_;
  std::vector<VecT> rows_;
  std::vector<Ray> rays_;
};

/// Generators of {y in R^dim : row·y <= 0 for every row}.
template <class Scalar>
ConeGenerators<Scalar> enumerate_cone(const std::vector<linalg::DenseVector<Scalar>>& rows, Eigen::Index dim) {
  using VecT = linalg::DenseVector<Scalar>;
  ConeGenerators<Scalar> out;
  for (const auto& r : rows)
    if (r.size() != dim) throw std::invalid_argument("cone row has wrong dimension");

  if (!rows.empty()) {
    linalg::DenseMatrix<Scalar> a(static_cast<Eigen::Index>(rows.size()), dim);
    for (std::size_t i = 0; i < rows.size(); ++i) a.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    out.lines = linalg::nullspace<Scalar>(a);
  } else {
    for (Eigen::Index j = 0; j < dim; ++j) {
      VecT e(dim);
      for (Eigen::Index i = 0; i < dim; ++i) e[i] = Scalar(0);
      e[j] = Scalar(1);
      out.lines.push_back(std::move(e));
    }
    return out;
  }
  for (auto& l : out.lines) normalize_ray(l);

  const auto basis = linalg::independent_rows<Scalar>(rows, dim);
  if (basis.empty()) return out;
  std::vector<VecT> basis_rows;
  std::vector<bool> used(rows.size(), false);
  for (auto i : basis) {
    basis_rows.push_back(rows[i]);
    used[i] = true;
  }
  auto dd = PointedConeDD<Scalar>::simplicial(basis_rows, dim);
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!used[i]) dd.add_row(rows[i]);
  for (const auto& r : dd.rays()) out.rays.push_back(r.v);
  return out;
}

}  // namespace closurelab
