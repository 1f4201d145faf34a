#include "klwb/hecke.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace klwb {

namespace {

LaurentPoly v(int e = 1) { return LaurentPoly::v(e); }

std::vector<std::vector<char>> reachability(const std::vector<std::vector<int>>& adj) {
  const std::size_t n = adj.size();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (std::size_t a = 0; a < n; ++a) {
    auto& r = reach[a];
    std::deque<int> q{static_cast<int>(a)};
    r[a] = 1;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y : adj[static_cast<std::size_t>(x)])
        if (!r[static_cast<std::size_t>(y)]) {
          r[static_cast<std::size_t>(y)] = 1;
          q.push_back(y);
        }
    }
  }
  return reach;
}

std::vector<std::vector<int>> classes(const std::vector<std::vector<char>>& reach) {
  const std::size_t n = reach.size();
  std::vector<int> owner(n, -1);
  std::vector<std::vector<int>> out;
  for (std::size_t a = 0; a < n; ++a) {
    if (owner[a] >= 0) continue;
    std::vector<int> cls;
    for (std::size_t b = a; b < n; ++b)
      if (reach[a][b] && reach[b][a]) {
        owner[b] = static_cast<int>(out.size());
        cls.push_back(static_cast<int>(b));
      }
    out.push_back(std::move(cls));
  }
  return out;
}

}  // namespace

const char* to_string(Convention c) { return c == Convention::standard ? "std" : "ly"; }

HeckeElement::HeckeElement(const WeylGroup* g, Convention c, Terms t) : group_(g), conv_(c) {
  for (auto& [w, p] : t)
    if (!p.is_zero()) terms_.emplace(w, std::move(p));
}

LaurentPoly HeckeElement::coeff(int w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? LaurentPoly() : it->second;
}

void HeckeElement::add_term(int w, const LaurentPoly& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void HeckeElement::check(const HeckeElement& o) const {
  if (group_ != o.group_) throw MixedAmbient("Hecke elements over different groups");
  if (conv_ != o.conv_) throw ConventionMismatch("Hecke elements in different conventions");
}

HeckeElement& HeckeElement::operator+=(const HeckeElement& o) {
  if (!group_) *this = HeckeElement(o.group_, o.conv_);
  check(o);
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

HeckeElement& HeckeElement::operator-=(const HeckeElement& o) {
  if (!group_) *this = HeckeElement(o.group_, o.conv_);
  check(o);
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

HeckeElement operator*(const LaurentPoly& k, const HeckeElement& a) {
  HeckeElement r(a.group_, a.conv_);
  if (k.is_zero()) return r;
  for (const auto& [w, c] : a.terms_) r.terms_.emplace(w, k * c);
  return r;
}

std::string HeckeElement::str() const {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << ", ";
    first = false;
    os << "(" << group_->word_string(it->first) << ", " << it->second.str() << ")";
  }
  os << "]";
  return os.str();
}

HeckeAlgebra::HeckeAlgebra(const WeylGroup& W) : W_(&W) {}

void HeckeAlgebra::check(const HeckeElement& a) const {
  if (a.group() != W_) throw MixedAmbient("element of a different group");
}

HeckeElement HeckeAlgebra::T(int w, Convention c) const {
  HeckeElement e(W_, c);
  e.add_term(w, LaurentPoly(1));
  return e;
}

HeckeElement HeckeAlgebra::lmul_gen(int s, const HeckeElement& a) const {
  check(a);
  HeckeElement r(W_, a.convention());
  const bool ly = a.convention() == Convention::ly;
  const LaurentPoly lo = ly ? v(2) : LaurentPoly(1);
  const LaurentPoly diag = ly ? LaurentPoly(1) - v(2) : v(-1) - v(1);
  for (const auto& [w, c] : a.terms()) {
    int sw = W_->lmul(s, w);
    if (W_->length(sw) > W_->length(w)) {
      r.add_term(sw, c);
    } else {
      r.add_term(sw, lo * c);
      r.add_term(w, diag * c);
    }
  }
  return r;
}

HeckeElement HeckeAlgebra::rmul_gen(const HeckeElement& a, int s) const {
  check(a);
  HeckeElement r(W_, a.convention());
  const bool ly = a.convention() == Convention::ly;
  const LaurentPoly lo = ly ? v(2) : LaurentPoly(1);
  const LaurentPoly diag = ly ? LaurentPoly(1) - v(2) : v(-1) - v(1);
  for (const auto& [w, c] : a.terms()) {
    int ws = W_->rmul(w, s);
    if (W_->length(ws) > W_->length(w)) {
      r.add_term(ws, c);
    } else {
      r.add_term(ws, lo * c);
      r.add_term(w, diag * c);
    }
  }
  return r;
}

HeckeElement HeckeAlgebra::mul(const HeckeElement& a, const HeckeElement& b) const {
  check(a);
  check(b);
  if (a.convention() != b.convention()) throw ConventionMismatch("product across conventions");
  HeckeElement r(W_, a.convention());
  for (const auto& [x, c] : a.terms()) {
    HeckeElement t = b;
    const auto& word = W_->word(x);
    for (auto it = word.rbegin(); it != word.rend(); ++it) t = lmul_gen(*it, t);
    r += c * t;
  }
  return r;
}

HeckeElement HeckeAlgebra::convert(const HeckeElement& a, Convention to) const {
  check(a);
  if (a.convention() == to) return a;
  std::call_once(conv_once_, [&] {
    const int n = W_->size();
    to_ly_.assign(static_cast<std::size_t>(n), HeckeElement());
    to_std_.assign(static_cast<std::size_t>(n), HeckeElement());
    to_ly_[0] = one(Convention::ly);
    to_std_[0] = one(Convention::standard);
    for (int w = 1; w < n; ++w) {
      int s = W_->word(w).front();
      int rest = W_->lmul(s, w);
      // std T_s = (v^-1 - v) - v^-1 T~_s
      const HeckeElement& x = to_ly_[static_cast<std::size_t>(rest)];
      to_ly_[static_cast<std::size_t>(w)] = (v(-1) - v(1)) * x - v(-1) * lmul_gen(s, x);
      // ly T~_s = (1 - v^2) - v T_s
      const HeckeElement& y = to_std_[static_cast<std::size_t>(rest)];
      to_std_[static_cast<std::size_t>(w)] = (LaurentPoly(1) - v(2)) * y - v(1) * lmul_gen(s, y);
    }
  });
  const auto& table = to == Convention::ly ? to_ly_ : to_std_;
  HeckeElement r(W_, to);
  for (const auto& [w, c] : a.terms()) r += c * table[static_cast<std::size_t>(w)];
  return r;
}

HeckeElement HeckeAlgebra::bar(const HeckeElement& a) const {
  check(a);
  if (a.convention() == Convention::ly) return convert(bar(convert(a, Convention::standard)), Convention::ly);
  std::call_once(bar_once_, [&] {
    const int n = W_->size();
    bar_t_.assign(static_cast<std::size_t>(n), HeckeElement());
    bar_t_[0] = one(Convention::standard);
    for (int w = 1; w < n; ++w) {
      int s = W_->word(w).front();
      const HeckeElement& x = bar_t_[static_cast<std::size_t>(W_->lmul(s, w))];
      // T_s^-1 = T_s + v - v^-1
      bar_t_[static_cast<std::size_t>(w)] = lmul_gen(s, x) + (v(1) - v(-1)) * x;
    }
  });
  HeckeElement r(W_, Convention::standard);
  for (const auto& [w, c] : a.terms()) r += c.bar() * bar_t_[static_cast<std::size_t>(w)];
  return r;
}

const HeckeElement& HeckeAlgebra::kl(int w) const {
  std::call_once(kl_once_, [&] {
    const int n = W_->size();
    kl_.assign(static_cast<std::size_t>(n), HeckeElement());
    kl_[0] = one(Convention::standard);
    for (int x = 1; x < n; ++x) {
      int s = W_->word(x).front();
      int rest = W_->lmul(s, x);
      const HeckeElement& c = kl_[static_cast<std::size_t>(rest)];
      HeckeElement r = lmul_gen(s, c) + v(1) * c;
      for (const auto& [z, h] : c.terms()) {
        if (z == rest || !W_->left_descent(s, z)) continue;
        Integer m = h.coeff(1);
        if (m != 0) r -= LaurentPoly(m) * kl_[static_cast<std::size_t>(z)];
      }
      kl_[static_cast<std::size_t>(x)] = std::move(r);
    }
  });
  return kl_[static_cast<std::size_t>(w)];
}

Integer HeckeAlgebra::mu(int z, int w) const {
  if (z == w) return 0;
  return kl(w).coeff(z).coeff(1);
}

std::map<int, LaurentPoly> HeckeAlgebra::kl_expand(const HeckeElement& a) const {
  HeckeElement work = convert(a, Convention::standard);
  std::map<int, LaurentPoly> out;
  while (!work.is_zero()) {
    // highest term: largest index has maximal length
    auto it = std::prev(work.terms().end());
    int y = it->first;
    LaurentPoly c = it->second;
    out[y] = c;
    work -= c * kl(y);
  }
  return out;
}

const CellDecomposition& HeckeAlgebra::cells() const {
  std::call_once(cells_once_, [&] {
    const int n = W_->size();
    std::vector<std::vector<int>> left(static_cast<std::size_t>(n)), right(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) {
      auto& L = left[static_cast<std::size_t>(w)];
      auto& R = right[static_cast<std::size_t>(w)];
      for (int s = 0; s < W_->rank(); ++s) {
        int sw = W_->lmul(s, w);
        if (W_->length(sw) > W_->length(w)) {
          L.push_back(sw);
          for (const auto& [z, h] : kl(w).terms())
            if (z != w && W_->left_descent(s, z) && h.coeff(1) != 0) L.push_back(z);
        }
        int ws = W_->rmul(w, s);
        if (W_->length(ws) > W_->length(w)) {
          R.push_back(ws);
          for (const auto& [z, h] : kl(w).terms())
            if (z != w && W_->right_descent(z, s) && h.coeff(1) != 0) R.push_back(z);
        }
      }
    }
    std::vector<std::vector<int>> both(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) {
      auto& B = both[static_cast<std::size_t>(w)];
      B = left[static_cast<std::size_t>(w)];
      B.insert(B.end(), right[static_cast<std::size_t>(w)].begin(), right[static_cast<std::size_t>(w)].end());
    }
    auto reach = reachability(both);
    CellDecomposition d;
    d.left_cells = classes(reachability(left));
    d.right_cells = classes(reachability(right));
    auto cls = classes(reach);
    auto below = [&](const std::vector<int>& c) {
      std::size_t k = 0;
      for (char x : reach[static_cast<std::size_t>(c.front())]) k += x;
      return k;
    };
    std::stable_sort(cls.begin(), cls.end(), [&](const auto& a, const auto& b) { return below(a) > below(b); });
    d.cells = cls;
    d.cell_of.assign(static_cast<std::size_t>(n), -1);
    for (std::size_t c = 0; c < cls.size(); ++c)
      for (int x : cls[c]) d.cell_of[static_cast<std::size_t>(x)] = static_cast<int>(c);
    d.leq.assign(cls.size(), std::vector<char>(cls.size(), 0));
    for (std::size_t a = 0; a < cls.size(); ++a)
      for (std::size_t b = 0; b < cls.size(); ++b)
        d.leq[a][b] = reach[static_cast<std::size_t>(cls[b].front())][static_cast<std::size_t>(cls[a].front())];
    cells_ = std::move(d);
  });
  return *cells_;
}

bool HeckeAlgebra::is_central(const HeckeElement& z) const {
  for (int s = 0; s < W_->rank(); ++s)
    if (lmul_gen(s, z) != rmul_gen(z, s)) return false;
  return true;
}

std::optional<CellScalar> HeckeAlgebra::cell_scalar(const HeckeElement& z, int cell) const {
  HeckeElement zs = convert(z, Convention::standard);
  if (!is_central(zs)) throw NotCentral("element does not commute with the generators");
  const auto& members = cells().cells.at(static_cast<std::size_t>(cell));
  std::optional<LaurentPoly> scalar;
  for (int x : members) {
    auto col = kl_expand(mul(zs, kl(x)));
    for (int y : members) {
      LaurentPoly c = col.count(y) ? col[y] : LaurentPoly();
      if (y != x) {
        if (!c.is_zero()) return std::nullopt;
      } else if (!scalar) {
        scalar = c;
      } else if (*scalar != c) {
        return std::nullopt;
      }
    }
  }
  if (!scalar || !scalar->is_unit()) return std::nullopt;
  return CellScalar{scalar->leading() > 0 ? 1 : -1, scalar->low()};
}

HeckeElement HeckeAlgebra::tilting_class(bool reversed) const {
  HeckeElement r(W_, Convention::standard);
  const int top = W_->length(W_->longest());
  for (int w = 0; w < W_->size(); ++w) r.add_term(w, v(reversed ? W_->length(w) - top : top - W_->length(w)));
  return r;
}

HeckeElement HeckeAlgebra::full_twist(Convention c) const {
  HeckeElement t = T(W_->longest(), c);
  return mul(t, t);
}

BivarPoly HeckeAlgebra::minpoly(const HeckeElement& z) const {
  check(z);
  const int n = W_->size();
  LMatrix m = zero_lmatrix(n, n);
  for (int y = 0; y < n; ++y) {
    HeckeElement col = mul(T(y, z.convention()), z);
    for (const auto& [x, c] : col.terms()) m(x, y) = c;
  }
  return minimal_polynomial(m);
}

}  // namespace klwb
