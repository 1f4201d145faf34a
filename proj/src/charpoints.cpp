#include "klwb/charpoints.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace klwb {

namespace {

long mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

int i_min(int d) { return d % 2 == 0 ? d / 2 : d; }

}  // namespace

CharacterPoint::CharacterPoint(std::vector<long> num, long den) : num_(std::move(num)), den_(den) {
  if (den_ <= 0) throw std::invalid_argument("denominator must be positive");
  for (long& x : num_) x = mod(x, den_);
  long g = den_;
  for (long x : num_) g = std::gcd(g, x);
  for (long& x : num_) x /= g;
  den_ /= g;
}

CharacterPoint CharacterPoint::parse(const std::string& s) {
  std::vector<Rational> coords;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) throw std::invalid_argument("empty coordinate in '" + s + "'");
    auto slash = item.find('/');
    try {
      if (slash == std::string::npos) {
        coords.emplace_back(std::stol(item));
      } else {
        long d = std::stol(item.substr(slash + 1));
        if (d <= 0) throw std::invalid_argument("bad denominator");
        coords.emplace_back(std::stol(item.substr(0, slash)), d);
      }
    } catch (const std::logic_error&) {
      throw std::invalid_argument("bad coordinate '" + item + "'");
    }
  }
  if (coords.empty()) throw std::invalid_argument("empty character point");
  long den = 1;
  for (const Rational& c : coords) den = std::lcm(den, static_cast<long>(boost::multiprecision::denominator(c)));
  std::vector<long> num;
  for (const Rational& c : coords) num.push_back(static_cast<long>(boost::multiprecision::numerator(c) * (den / static_cast<long>(boost::multiprecision::denominator(c)))));
  return CharacterPoint(std::move(num), den);
}

bool CharacterPoint::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](long x) { return x == 0; });
}

std::string CharacterPoint::str() const {
  std::string out;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (i) out += ",";
    Rational c(num_[i], den_);
    out += c.str();
  }
  return out;
}

bool operator<(const CharacterPoint& a, const CharacterPoint& b) {
  for (std::size_t i = 0; i < a.num_.size() && i < b.num_.size(); ++i) {
    long l = a.num_[i] * b.den_, r = b.num_[i] * a.den_;
    if (l != r) return l < r;
  }
  return a.num_.size() < b.num_.size();
}

Rational pairing(const CharacterPoint& lam, const Eigen::VectorXi& coroot) {
  long s = 0;
  for (int i = 0; i < lam.rank(); ++i) s += coroot[i] * lam.numerators()[static_cast<std::size_t>(i)];
  return Rational(mod(s, lam.denominator()), lam.denominator());
}

Rational pairing(const WeylGroup& W, const CharacterPoint& lam, int root) {
  return pairing(lam, W.roots().coroot(root));
}

CharacterPoint simple_act(const WeylGroup& W, int s, const CharacterPoint& lam) {
  const auto& C = W.roots().cartan();
  std::vector<long> num = lam.numerators();
  const long ls = num[static_cast<std::size_t>(s)];
  for (int i = 0; i < lam.rank(); ++i) num[static_cast<std::size_t>(i)] -= ls * C(s, i);
  return CharacterPoint(std::move(num), lam.denominator());
}

CharacterPoint act(const WeylGroup& W, int w, const CharacterPoint& lam) {
  CharacterPoint p = lam;
  const auto& word = W.word(w);
  for (auto it = word.rbegin(); it != word.rend(); ++it) p = simple_act(W, *it, p);
  return p;
}

std::vector<int> kernel_roots(const WeylGroup& W, const CharacterPoint& lam) {
  std::vector<int> out;
  for (int r = 0; r < W.roots().num_positive(); ++r)
    if (pairing(W, lam, r) == 0) out.push_back(r);
  return out;
}

Subsystem wl_subsystem(const WeylGroup& W, const CharacterPoint& lam) {
  return W.reflection_subgroup(kernel_roots(W, lam));
}

int OrbitData::index_of(const CharacterPoint& p) const {
  auto it = std::lower_bound(points.begin(), points.end(), p);
  return it != points.end() && *it == p ? static_cast<int>(it - points.begin()) : -1;
}

unsigned OrbitData::simple_mask(int i) const {
  unsigned m = 0;
  const Subsystem& sub = subsystem(i);
  for (int s = 0; s < group->rank(); ++s)
    if (sub.has_root(s)) m |= 1u << s;
  return m;
}

OrbitData orbit(const WeylGroup& W, const CharacterPoint& lam) {
  if (lam.rank() != W.rank()) throw std::invalid_argument("character point rank mismatch");
  std::set<CharacterPoint> seen{lam};
  std::vector<CharacterPoint> queue{lam};
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (int s = 0; s < W.rank(); ++s) {
      CharacterPoint p = simple_act(W, s, queue[k]);
      if (seen.insert(p).second) queue.push_back(p);
    }
  OrbitData o;
  o.group = &W;
  o.points.assign(seen.begin(), seen.end());
  const std::size_t n = o.points.size();
  o.stabilizer_order = static_cast<std::size_t>(W.size()) / n;

  std::vector<int> simple(static_cast<std::size_t>(W.rank()) * n);
  for (int s = 0; s < W.rank(); ++s)
    for (std::size_t i = 0; i < n; ++i)
      simple[static_cast<std::size_t>(s) * n + i] = o.index_of(simple_act(W, s, o.points[i]));
  o.move.assign(static_cast<std::size_t>(W.size()) * n, 0);
  for (std::size_t i = 0; i < n; ++i) o.move[i] = static_cast<int>(i);
  for (int w = 1; w < W.size(); ++w) {
    int s = W.word(w).front();
    int rest = W.lmul(s, w);
    for (std::size_t i = 0; i < n; ++i)
      o.move[static_cast<std::size_t>(w) * n + i] =
          simple[static_cast<std::size_t>(s) * n + static_cast<std::size_t>(o.moved(rest, static_cast<int>(i)))];
  }

  std::map<std::vector<int>, std::shared_ptr<const Subsystem>> cache;
  for (const CharacterPoint& p : o.points) {
    auto roots = kernel_roots(W, p);
    auto& slot = cache[roots];
    if (!slot) slot = std::make_shared<const Subsystem>(W.reflection_subgroup(roots));
    o.subsystems.push_back(slot);
  }
  return o;
}

std::vector<OrbitData> orbit_set(const WeylGroup& W, int nmax, DenominatorMode mode) {
  if (nmax < 1) throw std::invalid_argument("denominator bound must be positive");
  std::set<CharacterPoint> candidates;
  const int r = W.rank();
  auto enumerate = [&](long n) {
    std::vector<long> num(static_cast<std::size_t>(r), 0);
    while (true) {
      candidates.insert(CharacterPoint(num, n));
      int i = 0;
      while (i < r && ++num[static_cast<std::size_t>(i)] == n) num[static_cast<std::size_t>(i++)] = 0;
      if (i == r) break;
    }
  };
  if (mode == DenominatorMode::dividing) {
    enumerate(nmax);
  } else {
    for (long n = 1; n <= nmax; ++n) enumerate(n);
  }
  std::vector<OrbitData> out;
  std::set<CharacterPoint> covered;
  for (const CharacterPoint& p : candidates) {
    if (covered.count(p)) continue;
    OrbitData o = orbit(W, p);
    covered.insert(o.points.begin(), o.points.end());
    out.push_back(std::move(o));
  }
  std::stable_sort(out.begin(), out.end(), [](const OrbitData& a, const OrbitData& b) {
    if (a.representative().denominator() != b.representative().denominator())
      return a.representative().denominator() < b.representative().denominator();
    return a.representative() < b.representative();
  });
  return out;
}

const char* to_string(SignConvention c) { return c == SignConvention::negative_v2 ? "negative_v2" : "positive_v2"; }

LaurentPoly poincare_q(const Subsystem& sub, SignConvention c) {
  const WeylGroup& I = *sub.intrinsic;
  std::map<int, Integer> terms;
  for (int u = 0; u < I.size(); ++u) {
    int l = I.length(u);
    terms[2 * l] += (c == SignConvention::negative_v2 && l % 2) ? -1 : 1;
  }
  return LaurentPoly(terms);
}

LaurentPoly poincare_q(const WeylGroup& W, const CharacterPoint& lam, SignConvention c) {
  return poincare_q(wl_subsystem(W, lam), c);
}

ChevalleyReport chevalley_divisibility(const LaurentPoly& q, int m) {
  ChevalleyReport rep;
  if (q.is_zero()) {
    rep.residual = q;
    return rep;
  }
  LaurentPoly rest = q.shift(-q.low());
  std::map<int, int> mult;  // d -> multiplicity of the d-th cyclotomic
  for (int d = 1; d <= 2 * m; ++d) {
    LaurentPoly phi = cyclotomic(d);
    while (rest.span() > 1) {
      auto quo = divide_exact(rest, phi);
      if (!quo) break;
      rest = *quo;
      ++mult[d];
    }
  }
  if (rest.is_unit()) {
    rep.success = true;
    rep.unit = rest.shift(q.low());
  } else {
    rep.residual = rest;
  }
  std::map<int, std::vector<int>> by_i;
  for (const auto& [d, k] : mult) by_i[i_min(d)].push_back(d);
  for (auto& [i, ds] : by_i) {
    while (true) {
      LaurentPoly f(1);
      bool any = false;
      for (int d : ds)
        if (mult[d] > 0) {
          f *= cyclotomic(d);
          --mult[d];
          any = true;
        }
      if (!any) break;
      rep.factors.push_back({f, i});
    }
  }
  return rep;
}

std::string ChevalleyReport::str() const {
  std::ostringstream os;
  os << (success ? "success" : "failure");
  for (const auto& f : factors) os << "; (" << f.factor.str() << ") | v^" << 2 * f.i << " - 1";
  if (!success) os << "; residual " << residual.str();
  return os.str();
}

}  // namespace klwb
