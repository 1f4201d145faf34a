#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

namespace klwb {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct NonUnitLeadingCoefficient : std::domain_error {
  using std::domain_error::domain_error;
};

// Element of Z[v, v^-1]. Dense window [lo, lo + size) with nonzero ends.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(int c) : LaurentPoly(Integer(c)) {}
  LaurentPoly(long c) : LaurentPoly(Integer(c)) {}
  explicit LaurentPoly(Integer c);
  LaurentPoly(const std::map<int, Integer>& terms);

  static LaurentPoly monomial(Integer c, int e);
  static LaurentPoly v(int e = 1) { return monomial(1, e); }

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return lo_ == 0 && c_.size() == 1 && c_[0] == 1; }
  // lowest / highest exponent; undefined on zero
  int low() const { return lo_; }
  int high() const { return lo_ + static_cast<int>(c_.size()) - 1; }
  int span() const { return static_cast<int>(c_.size()); }
  const Integer& operator[](int e) const;
  Integer coeff(int e) const { return (*this)[e]; }
  const Integer& leading() const { return c_.back(); }
  const Integer& trailing() const { return c_.front(); }
  std::map<int, Integer> terms() const;

  bool is_monomial() const { return c_.size() == 1; }
  // +-v^k
  bool is_unit() const { return c_.size() == 1 && (c_[0] == 1 || c_[0] == -1); }

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Integer& k);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.lo_ == b.lo_ && a.c_ == b.c_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }
  // total order for use as map keys / sorting
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b);

  LaurentPoly shift(int k) const;  // multiply by v^k
  LaurentPoly bar() const;         // v -> v^-1
  LaurentPoly pow(unsigned n) const;
  Integer content() const;
  Integer eval(const Integer& x) const;  // requires low() >= 0 or x = +-1

  std::string str() const;

 private:
  int lo_ = 0;
  std::vector<Integer> c_;
  void trim();
};

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

// Exact quotient a / b in Z[v, v^-1], or nothing if b does not divide a.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b);
// gcd in Z[v, v^-1]; normalized to low() == 0 and positive leading coefficient.
LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);
// p / (v^k * content) with low() == 0 and positive leading coefficient
LaurentPoly primitive_part(const LaurentPoly& p);

// d-th cyclotomic polynomial in v
LaurentPoly cyclotomic(int d);

// Element of Q(v) kept as a reduced fraction num/den, den with low() == 0 and
// positive leading coefficient.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(int c) : num_(c), den_(1) {}
  RationalFunction(long c) : num_(c), den_(1) {}
  RationalFunction(LaurentPoly p) : num_(std::move(p)), den_(1) {}
  RationalFunction(LaurentPoly n, LaurentPoly d);

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  int weight() const;  // rough size for pivot choice

  RationalFunction operator-() const { return RationalFunction(-num_, den_, raw_tag{}); }
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  RationalFunction inverse() const;
  std::string str() const;

 private:
  struct raw_tag {};
  RationalFunction(LaurentPoly n, LaurentPoly d, raw_tag) : num_(std::move(n)), den_(std::move(d)) {}
  void normalize();
  LaurentPoly num_, den_;
};

std::ostream& operator<<(std::ostream& os, const RationalFunction& r);

// Element of Z[v, v^-1][x]; index = degree in x.
class BivarPoly {
 public:
  BivarPoly() = default;
  BivarPoly(LaurentPoly c);
  explicit BivarPoly(std::vector<LaurentPoly> coeffs);
  static BivarPoly x() { return BivarPoly(std::vector<LaurentPoly>{LaurentPoly(0), LaurentPoly(1)}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const LaurentPoly& operator[](int i) const;
  const std::vector<LaurentPoly>& coeffs() const { return c_; }
  const LaurentPoly& leading() const { return c_.back(); }

  BivarPoly& operator+=(const BivarPoly& o);
  BivarPoly& operator-=(const BivarPoly& o);
  friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
  friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator*(const LaurentPoly& k, const BivarPoly& b);
  friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const BivarPoly& a, const BivarPoly& b) { return !(a == b); }
  BivarPoly operator-() const;

  LaurentPoly eval(const LaurentPoly& x) const;
  BivarPoly pow(unsigned n) const;
  std::string str() const;

 private:
  std::vector<LaurentPoly> c_;
  void trim();
};

std::ostream& operator<<(std::ostream& os, const BivarPoly& p);

// f = q*g + r with deg r < deg g; g needs a leading coefficient +-v^k.
std::pair<BivarPoly, BivarPoly> divmod_x(const BivarPoly& f, const BivarPoly& g);

// prod_{i=i0}^{m} (x - v^{2i}) with i0 = 0, or 1 for the tilde variant
BivarPoly annihilator_family(int m, bool tilde = false);
// prod_{i=1}^{m} (1 - v^{2i})
LaurentPoly p_of_v(int m);

struct SplitAtOne {
  LaurentPoly pv;
  BivarPoly r;  // pv = ptilde + r (x - 1)
};
SplitAtOne split_at_one(const BivarPoly& ptilde);

// a + b sqrt(q)
struct SurdValue {
  Rational a, b;
  long q = 0;
  bool nonzero() const { return a != 0 || b != 0; }
  std::string str() const;
};
SurdValue specialize_sqrt_q(const LaurentPoly& p, long q);

// numerator / prod_i (1 - v^{2i})^{mult_i}
class LocalizedScalar {
 public:
  LocalizedScalar() = default;
  LocalizedScalar(LaurentPoly num, std::map<int, int> den = {});

  const LaurentPoly& numerator() const { return num_; }
  const std::map<int, int>& denominator() const { return den_; }
  LaurentPoly denominator_poly() const;
  bool is_zero() const { return num_.is_zero(); }

  friend LocalizedScalar operator*(const LocalizedScalar& a, const LocalizedScalar& b);
  friend LocalizedScalar operator+(const LocalizedScalar& a, const LocalizedScalar& b);
  // equality of represented fractions
  friend bool equivalent(const LocalizedScalar& a, const LocalizedScalar& b);
  friend bool operator==(const LocalizedScalar& a, const LocalizedScalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalFunction to_rational() const;
  std::string str() const;

 private:
  LaurentPoly num_;
  std::map<int, int> den_;
};

LocalizedScalar localized_reduce(const LocalizedScalar& x);

// least r <= rmax with d | p_m(v)^r
std::optional<int> divides_p_power(const LaurentPoly& d, int m, int rmax);

}  // namespace klwb

namespace Eigen {

template <>
struct NumTraits<klwb::LaurentPoly> : GenericNumTraits<klwb::LaurentPoly> {
  typedef klwb::LaurentPoly Real;
  typedef klwb::LaurentPoly NonInteger;
  typedef klwb::LaurentPoly Nested;
  typedef klwb::LaurentPoly Literal;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 32
  };
};

template <>
struct NumTraits<klwb::RationalFunction> : GenericNumTraits<klwb::RationalFunction> {
  typedef klwb::RationalFunction Real;
  typedef klwb::RationalFunction NonInteger;
  typedef klwb::RationalFunction Nested;
  typedef klwb::RationalFunction Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 64,
    MulCost = 64
  };
};

}  // namespace Eigen
