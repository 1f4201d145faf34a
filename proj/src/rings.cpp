#include "klwb/rings.hpp"

#include <algorithm>
#include <sstream>

namespace klwb {

namespace {

const Integer kZero = 0;

Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

Integer igcd(Integer a, Integer b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    Integer t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(Integer c) {
  if (c != 0) c_.push_back(std::move(c));
}

LaurentPoly::LaurentPoly(const std::map<int, Integer>& terms) {
  if (terms.empty()) return;
  lo_ = terms.begin()->first;
  int hi = terms.rbegin()->first;
  c_.assign(static_cast<size_t>(hi - lo_ + 1), Integer(0));
  for (const auto& [e, c] : terms) c_[static_cast<size_t>(e - lo_)] = c;
  trim();
}

LaurentPoly LaurentPoly::monomial(Integer c, int e) {
  LaurentPoly p;
  if (c == 0) return p;
  p.lo_ = e;
  p.c_.push_back(std::move(c));
  return p;
}

void LaurentPoly::trim() {
  size_t a = 0;
  while (a < c_.size() && c_[a] == 0) ++a;
  if (a == c_.size()) {
    c_.clear();
    lo_ = 0;
    return;
  }
  size_t b = c_.size();
  while (c_[b - 1] == 0) --b;
  if (a > 0 || b < c_.size()) {
    c_.erase(c_.begin() + static_cast<long>(b), c_.end());
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(a));
    lo_ += static_cast<int>(a);
  }
}

const Integer& LaurentPoly::operator[](int e) const {
  if (c_.empty() || e < lo_ || e > high()) return kZero;
  return c_[static_cast<size_t>(e - lo_)];
}

std::map<int, Integer> LaurentPoly::terms() const {
  std::map<int, Integer> t;
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) t.emplace(lo_ + static_cast<int>(i), c_[i]);
  return t;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  int lo = std::min(lo_, o.lo_);
  int hi = std::max(high(), o.high());
  if (lo < lo_ || hi > high()) {
    std::vector<Integer> c(static_cast<size_t>(hi - lo + 1), Integer(0));
    for (size_t i = 0; i < c_.size(); ++i) c[static_cast<size_t>(lo_ - lo) + i] = std::move(c_[i]);
    c_ = std::move(c);
    lo_ = lo;
  }
  size_t off = static_cast<size_t>(o.lo_ - lo_);
  for (size_t i = 0; i < o.c_.size(); ++i) c_[off + i] += o.c_[i];
  trim();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = -o;
  int lo = std::min(lo_, o.lo_);
  int hi = std::max(high(), o.high());
  if (lo < lo_ || hi > high()) {
    std::vector<Integer> c(static_cast<size_t>(hi - lo + 1), Integer(0));
    for (size_t i = 0; i < c_.size(); ++i) c[static_cast<size_t>(lo_ - lo) + i] = std::move(c_[i]);
    c_ = std::move(c);
    lo_ = lo;
  }
  size_t off = static_cast<size_t>(o.lo_ - lo_);
  for (size_t i = 0; i < o.c_.size(); ++i) c_[off + i] -= o.c_[i];
  trim();
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.lo_ = a.lo_ + b.lo_;
  if (a.c_.size() == 1) {
    r.c_ = b.c_;
    if (a.c_[0] != 1)
      for (auto& c : r.c_) c *= a.c_[0];
    return r;
  }
  if (b.c_.size() == 1) {
    r.c_ = a.c_;
    if (b.c_[0] != 1)
      for (auto& c : r.c_) c *= b.c_[0];
    return r;
  }
  r.c_.assign(a.c_.size() + b.c_.size() - 1, Integer(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j)
      if (b.c_[j] != 0) r.c_[i + j] += a.c_[i] * b.c_[j];
  }
  r.trim();
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly& LaurentPoly::operator*=(const Integer& k) {
  if (k == 0) {
    c_.clear();
    lo_ = 0;
  } else if (k != 1) {
    for (auto& c : c_) c *= k;
  }
  return *this;
}

bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.lo_ != b.lo_) return a.lo_ < b.lo_;
  return a.c_ < b.c_;
}

LaurentPoly LaurentPoly::shift(int k) const {
  LaurentPoly r = *this;
  if (!r.is_zero()) r.lo_ += k;
  return r;
}

LaurentPoly LaurentPoly::bar() const {
  LaurentPoly r;
  if (is_zero()) return r;
  r.c_.assign(c_.rbegin(), c_.rend());
  r.lo_ = -high();
  return r;
}

LaurentPoly LaurentPoly::pow(unsigned n) const {
  LaurentPoly r(1), b = *this;
  while (n) {
    if (n & 1u) r *= b;
    n >>= 1u;
    if (n) b *= b;
  }
  return r;
}

Integer LaurentPoly::content() const {
  Integer g = 0;
  for (const auto& c : c_) {
    g = igcd(g, c);
    if (g == 1) break;
  }
  return g;
}

Integer LaurentPoly::eval(const Integer& x) const {
  if (is_zero()) return 0;
  if (lo_ < 0 && x != 1 && x != -1) throw std::domain_error("eval of Laurent polynomial with negative exponents");
  Integer acc = 0;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  if (lo_ > 0) {
    for (int i = 0; i < lo_; ++i) acc *= x;
  } else if (lo_ < 0 && x == -1 && (-lo_) % 2 == 1) {
    acc = -acc;
  }
  return acc;
}

std::string LaurentPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    const Integer& c = c_[i];
    if (c == 0) continue;
    int e = lo_ + static_cast<int>(i);
    bool neg = c < 0;
    Integer a = neg ? Integer(-c) : c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (e == 0) {
      os << a;
      continue;
    }
    if (a != 1) os << a << "*";
    os << "v";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.str(); }

// ----------------------------------------------------------- division / gcd

std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return LaurentPoly();
  if (b.is_monomial()) {
    std::map<int, Integer> t;
    const Integer& d = b.leading();
    for (const auto& [e, c] : a.terms()) {
      if (c % d != 0) return std::nullopt;
      t.emplace(e - b.low(), c / d);
    }
    return LaurentPoly(t);
  }
  LaurentPoly r = a.shift(-a.low());
  LaurentPoly d = b.shift(-b.low());
  int dh = d.high();
  if (r.high() < dh) return std::nullopt;
  std::vector<Integer> q(static_cast<size_t>(r.high() - dh + 1), Integer(0));
  const Integer& lc = d.leading();
  while (!r.is_zero() && r.high() >= dh) {
    const Integer& top = r.leading();
    if (top % lc != 0) return std::nullopt;
    Integer t = top / lc;
    int k = r.high() - dh;
    q[static_cast<size_t>(k)] = t;
    r -= LaurentPoly::monomial(t, k) * d;
  }
  if (!r.is_zero()) return std::nullopt;
  std::map<int, Integer> t;
  for (size_t i = 0; i < q.size(); ++i)
    if (q[i] != 0) t.emplace(static_cast<int>(i) + a.low() - b.low(), q[i]);
  return LaurentPoly(t);
}

LaurentPoly primitive_part(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  LaurentPoly r = p.shift(-p.low());
  Integer c = r.content();
  if (r.leading() < 0) c = -c;
  if (c != 1) {
    std::map<int, Integer> t;
    for (const auto& [e, x] : r.terms()) t.emplace(e, x / c);
    r = LaurentPoly(t);
  }
  return r;
}

namespace {

// pseudo remainder of a by b, both with low() == 0
LaurentPoly prem(LaurentPoly r, const LaurentPoly& b) {
  int bh = b.high();
  const Integer& lb = b.leading();
  while (!r.is_zero() && r.high() >= bh) {
    LaurentPoly t = LaurentPoly::monomial(r.leading(), r.high() - bh) * b;
    r *= lb;
    r -= t;
  }
  return r;
}

}  // namespace

LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() && b.is_zero()) return {};
  if (a.is_zero() || b.is_zero()) {
    LaurentPoly r = a.is_zero() ? b : a;
    r = r.shift(-r.low());
    return r.leading() < 0 ? -r : r;
  }
  Integer c = igcd(a.content(), b.content());
  LaurentPoly x = primitive_part(a), y = primitive_part(b);
  if (x.high() < y.high()) std::swap(x, y);
  while (!y.is_zero()) {
    if (y.high() == 0) {
      x = LaurentPoly(1);
      break;
    }
    LaurentPoly r = prem(x, y);
    x = std::move(y);
    y = primitive_part(r);
  }
  x = primitive_part(x);
  x *= c;
  return x;
}

LaurentPoly cyclotomic(int d) {
  if (d < 1) throw std::invalid_argument("cyclotomic index must be positive");
  LaurentPoly p = LaurentPoly::v(d) - LaurentPoly(1);
  for (int e = 1; e < d; ++e)
    if (d % e == 0) p = *divide_exact(p, cyclotomic(e));
  return p;
}

// ---------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(LaurentPoly n, LaurentPoly d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = LaurentPoly(1);
    return;
  }
  if (den_.low() != 0) {
    num_ = num_.shift(-den_.low());
    den_ = den_.shift(-den_.low());
  }
  if (den_.is_monomial()) {
    if (den_.leading() == 1) return;
    Integer g = igcd(num_.content(), den_.leading());
    if (den_.leading() < 0) g = -g;
    if (g != 1) {
      num_ = *divide_exact(num_, LaurentPoly(g));
      den_ = *divide_exact(den_, LaurentPoly(g));
    }
    return;
  }
  LaurentPoly g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ = *divide_exact(num_, g);
    den_ = *divide_exact(den_, g);
  }
  if (den_.low() != 0) {
    num_ = num_.shift(-den_.low());
    den_ = den_.shift(-den_.low());
  }
  if (den_.leading() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

int RationalFunction::weight() const { return num_.span() + 2 * (den_.span() - 1); }

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.is_one()) normalize();
    else if (num_.is_zero()) den_ = LaurentPoly(1);
    return *this;
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = RationalFunction();
  if (den_.is_one() && o.den_.is_one()) {
    num_ *= o.num_;
    return *this;
  }
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return RationalFunction(den_, num_);
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) { return *this *= o.inverse(); }

std::string RationalFunction::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

std::ostream& operator<<(std::ostream& os, const RationalFunction& r) { return os << r.str(); }

// ------------------------------------------------------------------ BivarPoly

BivarPoly::BivarPoly(LaurentPoly c) {
  if (!c.is_zero()) c_.push_back(std::move(c));
}

BivarPoly::BivarPoly(std::vector<LaurentPoly> coeffs) : c_(std::move(coeffs)) { trim(); }

void BivarPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const LaurentPoly& BivarPoly::operator[](int i) const {
  static const LaurentPoly zero;
  if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
  return c_[static_cast<size_t>(i)];
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

BivarPoly BivarPoly::operator-() const {
  BivarPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<LaurentPoly> c(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return BivarPoly(std::move(c));
}

BivarPoly operator*(const LaurentPoly& k, const BivarPoly& b) {
  std::vector<LaurentPoly> c = b.c_;
  for (auto& x : c) x = k * x;
  return BivarPoly(std::move(c));
}

LaurentPoly BivarPoly::eval(const LaurentPoly& x) const {
  LaurentPoly acc;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

BivarPoly BivarPoly::pow(unsigned n) const {
  BivarPoly r(LaurentPoly(1)), b = *this;
  while (n) {
    if (n & 1u) r = r * b;
    n >>= 1u;
    if (n) b = b * b;
  }
  return r;
}

std::string BivarPoly::str() const {
  if (is_zero()) return "0";
  std::string s;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + c_[i].str() + ")";
    if (i == 1) s += "*x";
    if (i > 1) s += "*x^" + std::to_string(i);
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const BivarPoly& p) { return os << p.str(); }

std::pair<BivarPoly, BivarPoly> divmod_x(const BivarPoly& f, const BivarPoly& g) {
  if (g.is_zero() || !g.leading().is_unit())
    throw NonUnitLeadingCoefficient("divisor leading coefficient is not +-v^k: " + g.str());
  const LaurentPoly& lc = g.leading();
  // inverse of +-v^k
  LaurentPoly inv = LaurentPoly::monomial(lc.leading(), -lc.low());
  int dg = g.degree();
  std::vector<LaurentPoly> rem = f.coeffs();
  std::vector<LaurentPoly> q(std::max(0, f.degree() - dg + 1));
  for (int k = f.degree(); k >= dg; --k) {
    LaurentPoly t = rem[static_cast<size_t>(k)] * inv;
    if (t.is_zero()) continue;
    q[static_cast<size_t>(k - dg)] = t;
    for (int i = 0; i <= dg; ++i) rem[static_cast<size_t>(k - dg + i)] -= t * g[i];
  }
  return {BivarPoly(std::move(q)), BivarPoly(std::move(rem))};
}

BivarPoly annihilator_family(int m, bool tilde) {
  if (m < 0) throw std::invalid_argument("annihilator_family needs m >= 0");
  BivarPoly r(LaurentPoly(1));
  for (int i = tilde ? 1 : 0; i <= m; ++i)
    r = r * BivarPoly(std::vector<LaurentPoly>{-LaurentPoly::v(2 * i), LaurentPoly(1)});
  return r;
}

LaurentPoly p_of_v(int m) {
  LaurentPoly p(1);
  for (int i = 1; i <= m; ++i) p *= LaurentPoly(1) - LaurentPoly::v(2 * i);
  return p;
}

SplitAtOne split_at_one(const BivarPoly& ptilde) {
  LaurentPoly pv = ptilde.eval(LaurentPoly(1));
  BivarPoly xm1(std::vector<LaurentPoly>{LaurentPoly(-1), LaurentPoly(1)});
  auto [q, rem] = divmod_x(ptilde - BivarPoly(pv), xm1);
  if (!rem.is_zero()) throw std::logic_error("split_at_one: nonzero remainder");
  return {pv, -q};
}

// ----------------------------------------------------------------- surds

std::string SurdValue::str() const {
  std::string s = rational_str(a);
  if (b != 0) s += (b < 0 ? " - " : " + ") + rational_str(b < 0 ? Rational(-b) : b) + "*sqrt(" + std::to_string(q) + ")";
  return s;
}

SurdValue specialize_sqrt_q(const LaurentPoly& p, long q) {
  if (q < 2) throw std::invalid_argument("specialize_sqrt_q needs q >= 2");
  SurdValue r;
  r.q = q;
  Integer Q = q;
  auto qpow = [&](int k) {
    Integer b = boost::multiprecision::pow(Q, static_cast<unsigned>(std::abs(k)));
    return k >= 0 ? Rational(b) : Rational(1) / Rational(b);
  };
  for (const auto& [e, c] : p.terms()) {
    int even = (e >= 0) ? e / 2 : -((-e + 1) / 2);  // floor(e/2)
    if (e - 2 * even == 0)
      r.a += Rational(c) * qpow(even);
    else
      r.b += Rational(c) * qpow(even);
  }
  long s = 0;
  while ((s + 1) * (s + 1) <= q) ++s;
  if (s * s == q) {
    r.a += r.b * s;
    r.b = 0;
  }
  return r;
}

// ------------------------------------------------------------ LocalizedScalar

LocalizedScalar::LocalizedScalar(LaurentPoly num, std::map<int, int> den) : num_(std::move(num)), den_(std::move(den)) {
  for (auto it = den_.begin(); it != den_.end();) {
    if (it->first < 1) throw std::invalid_argument("denominator index must be >= 1");
    if (it->second < 0) throw std::invalid_argument("negative denominator multiplicity");
    it = it->second == 0 ? den_.erase(it) : std::next(it);
  }
  if (num_.is_zero()) den_.clear();
}

LaurentPoly LocalizedScalar::denominator_poly() const {
  LaurentPoly d(1);
  for (const auto& [i, k] : den_) d *= (LaurentPoly(1) - LaurentPoly::v(2 * i)).pow(static_cast<unsigned>(k));
  return d;
}

RationalFunction LocalizedScalar::to_rational() const { return RationalFunction(num_, denominator_poly()); }

LocalizedScalar operator*(const LocalizedScalar& a, const LocalizedScalar& b) {
  std::map<int, int> d = a.den_;
  for (const auto& [i, k] : b.den_) d[i] += k;
  return localized_reduce(LocalizedScalar(a.num_ * b.num_, d));
}

LocalizedScalar operator+(const LocalizedScalar& a, const LocalizedScalar& b) {
  std::map<int, int> d = a.den_;
  for (const auto& [i, k] : b.den_) d[i] = std::max(d[i], k);
  auto lift = [&](const LocalizedScalar& x) {
    LaurentPoly n = x.num_;
    for (const auto& [i, k] : d) {
      auto it = x.den_.find(i);
      int have = it == x.den_.end() ? 0 : it->second;
      n *= (LaurentPoly(1) - LaurentPoly::v(2 * i)).pow(static_cast<unsigned>(k - have));
    }
    return n;
  };
  return localized_reduce(LocalizedScalar(lift(a) + lift(b), d));
}

bool equivalent(const LocalizedScalar& a, const LocalizedScalar& b) {
  return a.num_ * b.denominator_poly() == b.num_ * a.denominator_poly();
}

std::string LocalizedScalar::str() const {
  if (den_.empty()) return num_.str();
  std::string s = "(" + num_.str() + ")/(";
  bool first = true;
  for (const auto& [i, k] : den_) {
    if (!first) s += "*";
    first = false;
    s += "(1 - v^" + std::to_string(2 * i) + ")";
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s + ")";
}

LocalizedScalar localized_reduce(const LocalizedScalar& x) {
  if (x.numerator().is_zero()) return LocalizedScalar();
  LaurentPoly num = x.numerator();
  std::map<int, int> den = x.denominator();
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> keys;
    for (const auto& kv : den) keys.push_back(kv.first);
    for (auto it = keys.rbegin(); it != keys.rend() && !changed; ++it) {
      int i = *it;
      LaurentPoly full = LaurentPoly(1) - LaurentPoly::v(2 * i);
      for (int j = 0; j < i && !changed; ++j) {
        if (j > 0 && i % j != 0) continue;
        LaurentPoly quo = j == 0 ? full : *divide_exact(full, LaurentPoly(1) - LaurentPoly::v(2 * j));
        if (auto q = divide_exact(num, quo)) {
          num = *q;
          if (--den[i] == 0) den.erase(i);
          if (j > 0) ++den[j];
          changed = true;
        }
      }
    }
  }
  return LocalizedScalar(num, den);
}

std::optional<int> divides_p_power(const LaurentPoly& d, int m, int rmax) {
  if (d.is_zero()) throw std::invalid_argument("divides_p_power needs d != 0");
  LaurentPoly p = p_of_v(m), acc(1);
  for (int r = 0; r <= rmax; ++r) {
    if (divide_exact(acc, d)) return r;
    acc *= p;
  }
  return std::nullopt;
}

}  // namespace klwb
