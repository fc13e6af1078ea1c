#include "closurelab/rational.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace closurelab {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

u128 uabs(i128 v) { return v < 0 ? u128(-(v + 1)) + 1 : u128(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(i128 v) { return v <= kMax && v >= -kMax; }

mpz_class mpz_from(i128 v) {
  const bool neg = v < 0;
  u128 m = uabs(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(m >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(m)));
  mpz_class out = (hi << 64) + lo;
  return neg ? mpz_class(-out) : out;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  i128 n = num, d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  assign_wide(n, d);
}

Rational::Rational(const mpq_class& q) { assign(q); }

void Rational::check_small() {
  if (num_ == std::numeric_limits<std::int64_t>::min()) assign(mpq_class(mpz_from(num_)));
}

void Rational::assign_wide(i128 num, i128 den) {
  u128 g = gcd128(uabs(num), u128(den));
  if (g > 1) {
    num /= i128(g);
    den /= i128(g);
  }
  if (fits(num) && fits(den)) {
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    big_.reset();
    return;
  }
  mpq_class q(mpz_from(num), mpz_from(den));
  auto p = std::make_shared<mpq_class>(std::move(q));
  big_ = std::move(p);
  num_ = 0;
  den_ = 1;
}

void Rational::assign(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  const mpz_class& n = c.get_num();
  const mpz_class& d = c.get_den();
  if (n.fits_slong_p() && d.fits_slong_p()) {
    long nv = n.get_si();
    long dv = d.get_si();
    if (nv != std::numeric_limits<long>::min()) {
      num_ = nv;
      den_ = dv;
      big_.reset();
      return;
    }
  }
  big_ = std::make_shared<mpq_class>(std::move(c));
  num_ = 0;
  den_ = 1;
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    const auto b = t.find_first_not_of(" \t\n\r");
    const auto e = t.find_last_not_of(" \t\n\r");
    t = b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
  };
  trim(s);
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  const auto slash = s.find('/');
  std::string ns = slash == std::string::npos ? s : s.substr(0, slash);
  std::string ds = slash == std::string::npos ? std::string("1") : s.substr(slash + 1);
  trim(ns);
  trim(ds);
  if (!valid_int(ns) || !valid_int(ds) || ds[0] == '-' )
    throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
  if (ns[0] == '+') ns.erase(0, 1);
  if (ds[0] == '+') ds.erase(0, 1);
  mpz_class n(ns, 10), d(ds, 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(mpq_class(n, d));
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_from(num_), mpz_from(den_));
}

mpz_class Rational::numerator() const { return big_ ? mpz_class(big_->get_num()) : mpz_from(num_); }
mpz_class Rational::denominator() const { return big_ ? mpz_class(big_->get_den()) : mpz_from(den_); }

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == o.den_) {
      assign_wide(i128(num_) + o.num_, den_);
    } else {
      assign_wide(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
    }
    return *this;
  }
  assign(to_mpq() + o.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == o.den_) {
      assign_wide(i128(num_) - o.num_, den_);
    } else {
      assign_wide(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_);
    }
    return *this;
  }
  assign(to_mpq() - o.to_mpq());
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (num_ == 0 || o.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    const std::uint64_t g1 = gcd64(uabs(num_), std::uint64_t(o.den_));
    const std::uint64_t g2 = gcd64(uabs(o.num_), std::uint64_t(den_));
    const i128 n = i128(num_ / std::int64_t(g1)) * (o.num_ / std::int64_t(g2));
    const i128 d = i128(den_ / std::int64_t(g2)) * (o.den_ / std::int64_t(g1));
    if (fits(n) && fits(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
    } else {
      assign_wide(n, d);
    }
    return *this;
  }
  assign(to_mpq() * o.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  return *this *= o.reciprocal();
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw std::domain_error("reciprocal of zero");
  if (!big_) {
    Rational r;
    r.num_ = num_ < 0 ? -den_ : den_;
    r.den_ = num_ < 0 ? -num_ : num_;
    return r;
  }
  return Rational(mpq_class(1) / *big_);
}

Rational Rational::operator-() const {
  if (!big_) {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  return Rational(mpq_class(-*big_));
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  // big values are never demotable, so mixed representations differ
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    const i128 l = i128(a.num_) * b.den_;
    const i128 r = i128(b.num_) * a.den_;
    return l <=> r;
  }
  const int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

Rational Rational::floor() const {
  if (!big_) {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return Rational(q);
  }
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  return Rational(mpq_class(q));
}

Rational Rational::ceil() const {
  if (!big_) {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return Rational(q);
  }
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  return Rational(mpq_class(q));
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::size_t Rational::hash() const {
  if (!big_) return std::hash<std::int64_t>{}(num_) * 1000003u ^ std::hash<std::int64_t>{}(den_);
  return std::hash<std::string>{}(big_->get_str());
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational gcd(const Rational& a, const Rational& b) {
  if (!a.is_integer() || !b.is_integer()) throw std::invalid_argument("gcd of non-integers");
  if (a.is_small() && b.is_small()) {
    const auto an = a.numerator().get_si();
    const auto bn = b.numerator().get_si();
    return Rational(static_cast<std::int64_t>(gcd64(uabs(an), uabs(bn))));
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.numerator().get_mpz_t(), b.numerator().get_mpz_t());
  return Rational(mpq_class(g));
}

Rational lcm(const Rational& a, const Rational& b) {
  if (a.is_zero() || b.is_zero()) return Rational(0);
  return (a * b).abs() / gcd(a, b);
}

int ceil_log(const Rational& target, const Rational& base) {
  if (base <= Rational(1)) throw std::invalid_argument("ceil_log base must exceed 1");
  if (target.sign() <= 0) throw std::invalid_argument("ceil_log target must be positive");
  int t = 0;
  Rational power(1);
  while (power < target) {
    power *= base;
    ++t;
  }
  return t;
}

Vec make_vec(std::initializer_list<Rational> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const auto& x : values) v[i++] = x;
  return v;
}

Vec zero_vec(Eigen::Index n) {
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = Rational(0);
  return v;
}

Vec unit_vec(Eigen::Index n, Eigen::Index j) {
  Vec v = zero_vec(n);
  v[j] = Rational(1);
  return v;
}

Rational dot(const Vec& a, const Vec& b) {
  Rational s;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i].is_zero() || b[i].is_zero()) continue;
    s += a[i] * b[i];
  }
  return s;
}

void make_primitive(Vec& v) {
  Rational den(1);
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!v[i].is_integer()) den = lcm(den, Rational(mpq_class(v[i].denominator())));
  Rational g(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    g = gcd(g, v[i] * den);
  }
  if (g.is_zero()) return;
  const Rational scale = den / g;
  if (scale == Rational(1)) return;
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] *= scale;
}

std::strong_ordering lex_compare(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size() && i < b.size(); ++i) {
    auto c = a[i] <=> b[i];
    if (c != 0) return c;
  }
  return a.size() <=> b.size();
}

bool is_zero(const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) return false;
  return true;
}

bool is_integral(const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!v[i].is_integer()) return false;
  return true;
}

bool vec_equal(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

std::string to_string(const Vec& v) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

std::vector<std::string> to_strings(const Vec& v) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i].str());
  return out;
}

Vec vec_from_strings(const std::vector<std::string>& parts) {
  Vec v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) v[static_cast<Eigen::Index>(i)] = Rational::parse(parts[i]);
  return v;
}

std::size_t VecHash::operator()(const Vec& v) const {
  std::size_t h = static_cast<std::size_t>(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) h = h * 1000003u ^ v[i].hash();
  return h;
}

}  // namespace closurelab
