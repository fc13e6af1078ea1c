#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include <Eigen/Core>

namespace closurelab {

/**
 * Exact rational number.
 *
 * Values whose numerator and denominator fit in 63 bits are kept inline and
 * combined with 128-bit intermediates; anything larger is promoted to a GMP
 * rational and demoted again as soon as it fits. The value is always in
 * lowest terms with a positive denominator.
 */
class Rational {
 public:
  Rational() = default;
  Rational(int v) : num_(v) {}                 // NOLINT(google-explicit-constructor)
  Rational(long v) : num_(v) { check_small(); }  // NOLINT
  Rational(long long v) : num_(v) { check_small(); }  // NOLINT
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class& q);

  /// Parses "p", "-p" or "p/q" (decimal integers of any length).
  static Rational parse(std::string_view text);

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;
  Rational operator+() const { return *this; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  int sign() const;
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_integer() const;
  bool is_small() const { return !big_; }

  Rational floor() const;
  Rational ceil() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }
  Rational reciprocal() const;

  /// Numerator and denominator as GMP integers (denominator > 0).
  mpz_class numerator() const;
  mpz_class denominator() const;
  mpq_class to_mpq() const;
  double to_double() const;

  /// "p" for integers, "p/q" otherwise.
  std::string str() const;
  std::size_t hash() const;

 private:
  void check_small();
  void assign(const mpq_class& q);
  void assign_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational abs(const Rational& r) { return r.abs(); }

/// Greatest common divisor of two integer-valued rationals (non-negative).
Rational gcd(const Rational& a, const Rational& b);
/// Least common multiple of two integer-valued rationals (non-negative).
Rational lcm(const Rational& a, const Rational& b);

/// Smallest t >= 0 with base^t >= target; base > 1, target > 0.
int ceil_log(const Rational& target, const Rational& base);

}  // namespace closurelab

template <>
struct std::hash<closurelab::Rational> {
  std::size_t operator()(const closurelab::Rational& r) const { return r.hash(); }
};

namespace Eigen {
template <>
struct NumTraits<closurelab::Rational> : GenericNumTraits<closurelab::Rational> {
  using Real = closurelab::Rational;
  using NonInteger = closurelab::Rational;
  using Literal = closurelab::Rational;
  using Nested = closurelab::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace closurelab {

using Vec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using Mat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

Vec make_vec(std::initializer_list<Rational> values);
Vec zero_vec(Eigen::Index n);
Vec unit_vec(Eigen::Index n, Eigen::Index j);

Rational dot(const Vec& a, const Vec& b);

/// Rescales v by a positive factor so that it becomes a primitive integer vector.
void make_primitive(Vec& v);

/// Ray normalization hook picked up by the double description kernel.
inline void normalize_ray(Vec& v) { make_primitive(v); }

/// Lexicographic three-way comparison of equal-length vectors.
std::strong_ordering lex_compare(const Vec& a, const Vec& b);

struct LexLess {
  bool operator()(const Vec& a, const Vec& b) const { return lex_compare(a, b) < 0; }
};

bool is_zero(const Vec& v);
bool is_integral(const Vec& v);
bool vec_equal(const Vec& a, const Vec& b);

std::string to_string(const Vec& v);
std::vector<std::string> to_strings(const Vec& v);
Vec vec_from_strings(const std::vector<std::string>& parts);

struct VecHash {
  std::size_t operator()(const Vec& v) const;
};
struct VecEqual {
  bool operator()(const Vec& a, const Vec& b) const { return vec_equal(a, b); }
};

}  // namespace closurelab
