#include "klwb/klalgebra.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace klwb {

namespace {

LaurentPoly v(int e = 1) { return LaurentPoly::v(e); }

int braid_order(const WeylGroup& W, int s, int t) {
  switch (W.roots().cartan()(s, t) * W.roots().cartan()(t, s)) {
    case 0:
      return 2;
    case 1:
      return 3;
    case 2:
      return 4;
    default:
      return 6;
  }
}

std::vector<int> alternating(int s, int t, int m) {
  std::vector<int> w;
  for (int i = 0; i < m; ++i) w.push_back(i % 2 ? t : s);
  return w;
}

std::vector<int> twice(const std::vector<int>& w) {
  std::vector<int> r = w;
  r.insert(r.end(), w.begin(), w.end());
  return r;
}

CheckResult result(const std::string& check, const OrbitHeckeAlgebra& H, bool ok, std::string detail,
                   std::string witness = {}) {
  CheckResult r;
  r.check = check;
  r.type = H.group().label();
  r.orbit = H.orbit().representative().str();
  r.status = ok ? Status::pass : Status::fail;
  r.detail = std::move(detail);
  if (!ok) r.witness = std::move(witness);
  return r;
}

}  // namespace

LaurentPoly OrbitHeckeElement::coeff(int point, int w) const {
  auto it = terms_.find({point, w});
  return it == terms_.end() ? LaurentPoly() : it->second;
}

void OrbitHeckeElement::add_term(int point, int w, const LaurentPoly& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(Key{point, w}, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

OrbitHeckeElement OrbitHeckeElement::block(int point) const {
  OrbitHeckeElement r(alg_);
  for (auto it = terms_.lower_bound({point, 0}); it != terms_.end() && it->first.first == point; ++it)
    r.terms_.insert(*it);
  return r;
}

void OrbitHeckeElement::check(const OrbitHeckeElement& o) const {
  if (alg_ != o.alg_) throw OrbitMismatch("elements of different orbit algebras");
}

OrbitHeckeElement& OrbitHeckeElement::operator+=(const OrbitHeckeElement& o) {
  check(o);
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}

OrbitHeckeElement& OrbitHeckeElement::operator-=(const OrbitHeckeElement& o) {
  check(o);
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
  return *this;
}

OrbitHeckeElement operator*(const LaurentPoly& k, const OrbitHeckeElement& a) {
  OrbitHeckeElement r(a.alg_);
  if (k.is_zero()) return r;
  for (const auto& [key, c] : a.terms_) r.terms_.emplace(key, k * c);
  return r;
}

std::string OrbitHeckeElement::str() const {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << ", ";
    first = false;
    os << "(" << alg_->orbit().points[static_cast<std::size_t>(k.first)].str() << " | "
       << alg_->group().word_string(k.second) << ", " << c.str() << ")";
  }
  os << "]";
  return os.str();
}

OrbitHeckeAlgebra::OrbitHeckeAlgebra(const WeylGroup& W, OrbitData o) : W_(&W), orbit_(std::move(o)) {
  if (orbit_.group != &W) throw OrbitMismatch("orbit computed for a different group");
  for (int i = 0; i < orbit_.size(); ++i) masks_.push_back(orbit_.simple_mask(i));
}

OrbitHeckeElement OrbitHeckeAlgebra::unit() const {
  OrbitHeckeElement r(this);
  for (int i = 0; i < num_points(); ++i) r.add_term(i, W_->identity(), LaurentPoly(1));
  return r;
}

OrbitHeckeElement OrbitHeckeAlgebra::T(int w, int point) const {
  OrbitHeckeElement r(this);
  r.add_term(point, w, LaurentPoly(1));
  return r;
}

OrbitHeckeElement OrbitHeckeAlgebra::t_lmul(int s, const OrbitHeckeElement& x) const {
  if (x.algebra() != this) throw OrbitMismatch("element of a different orbit algebra");
  OrbitHeckeElement r(this);
  const LaurentPoly q = v(2), d = LaurentPoly(1) - v(2);
  for (const auto& [k, c] : x.terms()) {
    const auto [i, u] = k;
    int su = W_->lmul(s, u);
    if (W_->length(su) > W_->length(u) || !in_wl(s, target(i, u))) {
      r.add_term(i, su, c);
    } else {
      r.add_term(i, su, q * c);
      r.add_term(i, u, d * c);
    }
  }
  return r;
}

OrbitHeckeElement OrbitHeckeAlgebra::t_lmul_inverse(int s, const OrbitHeckeElement& x) const {
  // on W_L blocks T_s^-1 = v^-2 (T_s - 1 + v^2); elsewhere T_s^2 = 1
  OrbitHeckeElement r(this);
  OrbitHeckeElement fixed(this), moving(this);
  for (const auto& [k, c] : x.terms())
    (in_wl(s, target(k.first, k.second)) ? fixed : moving).add_term(k.first, k.second, c);
  r += t_lmul(s, moving);
  r += v(-2) * (t_lmul(s, fixed) - (LaurentPoly(1) - v(2)) * fixed);
  return r;
}

OrbitHeckeElement OrbitHeckeAlgebra::gen_lmul(int s, const OrbitHeckeElement& x, bool inverse) const {
  OrbitHeckeElement plus(this), minus(this);
  for (const auto& [k, c] : x.terms())
    (in_wl(s, target(k.first, k.second)) ? plus : minus).add_term(k.first, k.second, c);
  if (inverse) return t_lmul_inverse(s, plus) - t_lmul_inverse(s, minus);
  return t_lmul(s, plus) - t_lmul(s, minus);
}

OrbitHeckeElement OrbitHeckeAlgebra::mul(const OrbitHeckeElement& a, const OrbitHeckeElement& b) const {
  if (a.algebra() != this || b.algebra() != this) throw OrbitMismatch("element of a different orbit algebra");
  OrbitHeckeElement r(this);
  // group right factors by target idempotent
  std::vector<OrbitHeckeElement> by_target(static_cast<std::size_t>(num_points()), OrbitHeckeElement(this));
  for (const auto& [k, c] : b.terms()) by_target[static_cast<std::size_t>(target(k.first, k.second))].add_term(k.first, k.second, c);
  for (const auto& [k, c] : a.terms()) {
    const auto [j, x] = k;
    const OrbitHeckeElement& rhs = by_target[static_cast<std::size_t>(j)];
    if (rhs.is_zero()) continue;
    OrbitHeckeElement t = rhs;
    const auto& word = W_->word(x);
    for (auto it = word.rbegin(); it != word.rend(); ++it) t = t_lmul(*it, t);
    r += c * t;
  }
  return r;
}

OrbitHeckeElement OrbitHeckeAlgebra::apply_word(const std::vector<int>& word, OrbitHeckeElement x) const {
  for (auto it = word.rbegin(); it != word.rend(); ++it) x = *it >= 0 ? gen_lmul(*it, x) : gen_lmul(~*it, x, true);
  return x;
}

OrbitHeckeElement OrbitHeckeAlgebra::pi_word(const std::vector<int>& word) const { return apply_word(word, unit()); }

OrbitHeckeElement OrbitHeckeAlgebra::full_twist() const { return pi_word(twice(W_->word(W_->longest()))); }

LMatrix OrbitHeckeAlgebra::block_matrix(const OrbitHeckeElement& z, int point) const {
  const int n = W_->size();
  LMatrix m = zero_lmatrix(n, n);
  for (int u = 0; u < n; ++u) {
    OrbitHeckeElement col = mul(z, T(u, point));
    for (const auto& [k, c] : col.terms()) {
      if (k.first != point) throw std::logic_error("left multiplication left the block");
      m(k.second, u) = c;
    }
  }
  return m;
}

std::vector<unsigned> OrbitHeckeAlgebra::signature(int point) const {
  std::vector<unsigned> sig;
  for (int u = 0; u < W_->size(); ++u) sig.push_back(masks_[static_cast<std::size_t>(target(point, u))]);
  return sig;
}

KLAlgebra::KLAlgebra(const WeylGroup& W, int den, DenominatorMode mode) : KLAlgebra(W, orbit_set(W, den, mode)) {}

KLAlgebra::KLAlgebra(const WeylGroup& W, const std::vector<OrbitData>& orbits) : W_(&W) {
  for (const auto& o : orbits) algs_.push_back(std::make_unique<OrbitHeckeAlgebra>(W, o));
}

KLElement KLAlgebra::element(const std::vector<int>& signed_word) const {
  for (int s : signed_word) {
    int g = s >= 0 ? s : ~s;
    if (g >= W_->rank()) throw std::out_of_range("generator index out of range");
  }
  KLElement e{signed_word, {}};
  for (const auto& h : algs_) e.projections.push_back(h->pi_word(signed_word));
  return e;
}

KLElement KLAlgebra::mul(const KLElement& x, const KLElement& y) const {
  KLElement r;
  r.word = x.word;
  r.word.insert(r.word.end(), y.word.begin(), y.word.end());
  for (std::size_t k = 0; k < algs_.size(); ++k) r.projections.push_back(algs_[k]->mul(x.projections[k], y.projections[k]));
  return r;
}

bool KLAlgebra::reevaluates(const KLElement& x) const { return equal(element(x.word), x); }

std::vector<CheckResult> verify_braid(const KLAlgebra& A, int threads) {
  std::vector<CheckResult> out(static_cast<std::size_t>(A.num_orbits()));
  const WeylGroup& W = A.group();
  parallel_for(A.num_orbits(), threads, [&](int k) {
    const auto& H = A.orbit_algebra(k);
    int checked = 0;
    for (int s = 0; s < W.rank(); ++s)
      for (int t = s + 1; t < W.rank(); ++t) {
        int m = braid_order(W, s, t);
        auto l = H.pi_word(alternating(s, t, m)), r = H.pi_word(alternating(t, s, m));
        ++checked;
        if (l != r) {
          out[static_cast<std::size_t>(k)] =
              result("braid", H, false, "s=" + std::to_string(s + 1) + " t=" + std::to_string(t + 1), (l - r).str());
          return;
        }
      }
    out[static_cast<std::size_t>(k)] = result("braid", H, true, std::to_string(checked) + " relations");
  });
  return out;
}

std::vector<CheckResult> verify_cubic(const KLAlgebra& A, int threads) {
  std::vector<CheckResult> out(static_cast<std::size_t>(A.num_orbits()));
  parallel_for(A.num_orbits(), threads, [&](int k) {
    const auto& H = A.orbit_algebra(k);
    const auto one = H.unit();
    for (int s = 0; s < A.group().rank(); ++s) {
      auto x = H.pi_generator(s);
      auto lhs = H.mul(x + v(2) * one, H.mul(x, x) - one);
      if (!lhs.is_zero()) {
        out[static_cast<std::size_t>(k)] = result("cubic", H, false, "s=" + std::to_string(s + 1), lhs.str());
        return;
      }
    }
    out[static_cast<std::size_t>(k)] = result("cubic", H, true, std::to_string(H.num_points()) + " blocks");
  });
  return out;
}

std::vector<CheckResult> operator_square_identity(const KLAlgebra& A, int threads) {
  std::vector<CheckResult> out(static_cast<std::size_t>(A.num_orbits()));
  parallel_for(A.num_orbits(), threads, [&](int k) {
    const auto& H = A.orbit_algebra(k);
    const auto one = H.unit();
    for (int s = 0; s < A.group().rank(); ++s) {
      auto x = H.pi_generator(s);
      auto y = H.mul(x, x) - one;
      auto diff = H.mul(y, y) - (v(4) - LaurentPoly(1)) * y;
      if (!diff.is_zero()) {
        out[static_cast<std::size_t>(k)] = result("square_identity", H, false, "s=" + std::to_string(s + 1), diff.str());
        return;
      }
    }
    out[static_cast<std::size_t>(k)] = result("square_identity", H, true, std::to_string(H.num_points()) + " blocks");
  });
  return out;
}

std::vector<CheckResult> verify_projection_properties(const KLAlgebra& A, int pairs, unsigned long seed, int threads) {
  const int n = A.num_orbits();
  std::vector<CheckResult> out(static_cast<std::size_t>(3 * n));
  const WeylGroup& W = A.group();
  parallel_for(n, threads, [&](int k) {
    const auto& H = A.orbit_algebra(k);
    std::mt19937_64 rng(seed + static_cast<unsigned long>(k));
    std::uniform_int_distribution<int> pick(0, W.size() - 1), pt(0, H.num_points() - 1);
    CheckResult twisted = result("projection_product", H, true, std::to_string(pairs) + " pairs");
    for (int p = 0; p < pairs && twisted.status == Status::pass; ++p) {
      int w1 = pick(rng), w2 = pick(rng), i = pt(rng);
      auto lhs = H.apply_word(W.word(w1), H.apply_word(W.word(w2), H.idempotent(i)));
      auto left = H.apply_word(W.word(w1), H.idempotent(H.target(i, w2)));
      auto right = H.apply_word(W.word(w2), H.idempotent(i));
      auto rhs = H.mul(left, right);
      if (lhs != rhs)
        twisted = result("projection_product", H, false, "w1=" + W.word_string(w1) + " w2=" + W.word_string(w2),
                         (lhs - rhs).str());
    }
    CheckResult inside = result("projection_wl", H, true, "");
    int count = 0;
    for (int i = 0; i < H.num_points() && inside.status == Status::pass; ++i)
      for (int w : H.orbit().subsystem(i).embed) {
        ++count;
        auto got = H.apply_word(W.word(w), H.idempotent(i));
        if (got != H.T(w, i)) {
          inside = result("projection_wl", H, false, "w=" + W.word_string(w), got.str());
          break;
        }
      }
    if (inside.status == Status::pass) inside.detail = std::to_string(count) + " elements";
    CheckResult square = result("projection_square", H, true, "");
    count = 0;
    for (int i = 0; i < H.num_points() && square.status == Status::pass; ++i)
      for (int s = 0; s < W.rank(); ++s) {
        if (H.in_wl(s, i)) continue;
        ++count;
        auto got = H.apply_word({s, s}, H.idempotent(i));
        if (got != H.idempotent(i)) {
          square = result("projection_square", H, false, "s=" + std::to_string(s + 1), got.str());
          break;
        }
      }
    if (square.status == Status::pass) square.detail = std::to_string(count) + " generator blocks";
    out[static_cast<std::size_t>(3 * k)] = twisted;
    out[static_cast<std::size_t>(3 * k + 1)] = inside;
    out[static_cast<std::size_t>(3 * k + 2)] = square;
  });
  return out;
}

std::vector<W0Comparison> check_w0_identity(const OrbitHeckeAlgebra& H) {
  const OrbitHeckeElement ft = H.full_twist();
  std::map<const Subsystem*, std::pair<HeckeElement, HeckeElement>> cache;
  std::vector<std::unique_ptr<HeckeAlgebra>> keep;
  std::vector<W0Comparison> out;
  for (int i = 0; i < H.num_points(); ++i) {
    const Subsystem& sub = H.orbit().subsystem(i);
    auto it = cache.find(&sub);
    if (it == cache.end()) {
      keep.push_back(std::make_unique<HeckeAlgebra>(*sub.intrinsic));
      const HeckeAlgebra& I = *keep.back();
      const WeylGroup& G = *sub.intrinsic;
      HeckeElement t = I.T(G.longest(), Convention::ly);
      HeckeElement sq = I.mul(t, t);
      HeckeElement inv = I.one(Convention::ly);
      for (int s : G.word(G.longest()))
        inv = v(-2) * (I.lmul_gen(s, inv) - (LaurentPoly(1) - v(2)) * inv);
      HeckeElement variant = v(2 * G.length(G.longest())) * I.mul(inv, inv);
      it = cache.emplace(&sub, std::make_pair(sq, variant)).first;
    }
    W0Comparison c;
    c.point = i;
    c.projected = ft.block(i);
    c.expected = H.zero();
    c.variant = H.zero();
    for (const auto& [u, coef] : it->second.first.terms()) c.expected.add_term(i, sub.embed[static_cast<std::size_t>(u)], coef);
    for (const auto& [u, coef] : it->second.second.terms()) c.variant.add_term(i, sub.embed[static_cast<std::size_t>(u)], coef);
    c.equal = c.projected == c.expected;
    c.variant_equal = c.projected == c.variant;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CheckResult> verify_w0(const KLAlgebra& A, int threads) {
  std::vector<CheckResult> out(static_cast<std::size_t>(A.num_orbits()));
  parallel_for(A.num_orbits(), threads, [&](int k) {
    const auto& H = A.orbit_algebra(k);
    auto cmp = check_w0_identity(H);
    int eq = 0, var = 0;
    std::string witness;
    for (const auto& c : cmp) {
      eq += c.equal;
      var += c.variant_equal;
      if (!c.equal && witness.empty()) witness = c.projected.str() + " vs " + c.expected.str();
    }
    const int n = static_cast<int>(cmp.size());
    CheckResult r = result("w0", H, eq == n,
                           std::to_string(eq) + "/" + std::to_string(n) + " blocks match T_{w0,L}^2; " + std::to_string(var) +
                               "/" + std::to_string(n) + " match v^{2l} T_{w0,L}^-2",
                           witness);
    if (eq != n) r.status = Status::finding;
    out[static_cast<std::size_t>(k)] = r;
  });
  return out;
}

std::vector<BlockData> distinct_blocks(const KLAlgebra& A) {
  const WeylGroup& W = A.group();
  std::map<std::vector<unsigned>, int> seen;
  std::vector<BlockData> out;
  const auto w0 = W.word(W.longest());
  for (int k = 0; k < A.num_orbits(); ++k) {
    const auto& H = A.orbit_algebra(k);
    for (int i = 0; i < H.num_points(); ++i) {
      auto sig = H.signature(i);
      if (seen.count(sig)) continue;
      seen.emplace(sig, static_cast<int>(out.size()));
      BlockData b;
      b.signature = sig;
      b.example = H.orbit().representative().str() + " | " + H.orbit().points[static_cast<std::size_t>(i)].str();
      for (int s = 0; s < W.rank(); ++s) b.gens.push_back(H.block_matrix(H.pi_generator(s), i));
      LMatrix f = identity_lmatrix(W.size());
      for (int rep = 0; rep < 2; ++rep)
        for (int s : w0) f = mul(f, b.gens[static_cast<std::size_t>(s)]);
      b.fulltwist = f;
      out.push_back(std::move(b));
    }
  }
  return out;
}

FullTwistSpectrum fulltwist_minpoly(const KLAlgebra& A) {
  FullTwistSpectrum sp;
  auto blocks = distinct_blocks(A);
  std::vector<LMatrix> mats;
  for (const auto& b : blocks) mats.push_back(b.fulltwist);
  sp.blocks = static_cast<int>(blocks.size());
  sp.minpoly = minimal_polynomial(mats);
  const int l = A.group().length(A.group().longest());
  BivarPoly rest = sp.minpoly;
  for (int e = -8 * l; e <= 8 * l && rest.degree() > 0; ++e) {
    BivarPoly lin(std::vector<LaurentPoly>{-v(e), LaurentPoly(1)});
    while (rest.degree() > 0) {
      auto [q, r] = divmod_x(rest, lin);
      if (!r.is_zero()) break;
      rest = q;
      sp.eigen_exponents.push_back(e);
    }
  }
  sp.split = rest.degree() == 0;
  sp.divides_ell = divmod_x(annihilator_family(l), sp.minpoly).second.is_zero();
  sp.divides_safe = divmod_x(annihilator_family(2 * l), sp.minpoly).second.is_zero();
  return sp;
}

std::vector<CheckResult> verify_minpoly(const KLAlgebra& A, int m) {
  const WeylGroup& W = A.group();
  const int l = W.length(W.longest());
  auto sp = fulltwist_minpoly(A);
  std::vector<CheckResult> out;
  std::string eig;
  for (int e : sp.eigen_exponents) eig += (eig.empty() ? "" : ",") + std::to_string(e);
  CheckResult base{"fulltwist_minpoly", W.label(), "", Status::pass,
                   sp.minpoly.str() + "; eigenvalue exponents {" + eig + "}; " + std::to_string(sp.blocks) + " distinct blocks",
                   ""};
  out.push_back(base);
  CheckResult safe{"divides_safe_family", W.label(), "", sp.divides_safe ? Status::pass : Status::fail,
                   "m=" + std::to_string(2 * l), sp.divides_safe ? "" : sp.minpoly.str()};
  out.push_back(safe);
  bool div = divmod_x(annihilator_family(m), sp.minpoly).second.is_zero();
  CheckResult conf{"divides_configured_family", W.label(), "", div ? Status::pass : Status::finding,
                   "m=" + std::to_string(m) + (div ? ": divides" : ": minimal polynomial does not divide prod_{i=0}^{m} (x - v^{2i})"),
                   ""};
  out.push_back(conf);
  return out;
}

}  // namespace klwb
