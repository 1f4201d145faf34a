#include "klwb/k0model.hpp"

#include <algorithm>
#include <sstream>

#include "klwb/report.hpp"

namespace klwb {

namespace {

LaurentPoly v(int e = 1) { return LaurentPoly::v(e); }

// M_u for every u, M_{su} = G_s M_u along lengths
std::vector<LMatrix> element_matrices(const WeylGroup& W, const std::vector<LMatrix>& gens) {
  const auto n = gens.front().rows();
  std::vector<LMatrix> m(static_cast<std::size_t>(W.size()));
  m[static_cast<std::size_t>(W.identity())] = identity_lmatrix(n);
  std::vector<int> order(static_cast<std::size_t>(W.size()));
  for (int w = 0; w < W.size(); ++w) order[static_cast<std::size_t>(w)] = w;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return W.length(a) < W.length(b); });
  for (int w : order) {
    if (w == W.identity()) continue;
    int s = W.word(w).front();
    m[static_cast<std::size_t>(w)] = mul(gens[static_cast<std::size_t>(s)], m[static_cast<std::size_t>(W.lmul(s, w))]);
  }
  return m;
}

LaurentPoly random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-3, 3), e(-2, 2), k(1, 2);
  LaurentPoly p;
  int n = k(rng);
  for (int i = 0; i < n; ++i) p += LaurentPoly(c(rng)) * v(e(rng));
  return p;
}

}  // namespace

SparseLMatrix SparseLMatrix::from_dense(const LMatrix& m) {
  SparseLMatrix s;
  s.n = static_cast<int>(m.rows());
  s.cols.resize(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) s.cols[static_cast<std::size_t>(j)].emplace_back(static_cast<int>(i), m(i, j));
  return s;
}

LMatrix SparseLMatrix::dense() const {
  LMatrix m = zero_lmatrix(n, n);
  for (int j = 0; j < n; ++j)
    for (const auto& [i, c] : cols[static_cast<std::size_t>(j)]) m(i, j) = c;
  return m;
}

void SparseLMatrix::apply_add(const LVector& x, LVector& y, Eigen::Index off) const {
  for (int j = 0; j < n; ++j) {
    const LaurentPoly& xj = x[off + j];
    if (xj.is_zero()) continue;
    for (const auto& [i, c] : cols[static_cast<std::size_t>(j)]) y[off + i] += c * xj;
  }
}

KModule::KModule(const KLAlgebra& A) : W_(&A.group()) {
  for (auto& b : distinct_blocks(A)) {
    Block blk;
    blk.dense = std::move(b.gens);
    blocks_.push_back(std::move(blk));
  }
  init();
}

KModule::KModule(const WeylGroup& W, std::vector<std::vector<LMatrix>> gens) : W_(&W) {
  for (auto& g : gens) {
    if (static_cast<int>(g.size()) != W.rank()) throw std::invalid_argument("one matrix per generator expected");
    Block blk;
    blk.dense = std::move(g);
    blocks_.push_back(std::move(blk));
  }
  init();
}

void KModule::init() {
  dim_ = 0;
  for (auto& b : blocks_) {
    b.n = static_cast<int>(b.dense.front().rows());
    b.offset = dim_;
    dim_ += b.n;
    for (const auto& g : b.dense) {
      if (g.rows() != b.n || g.cols() != b.n) throw std::invalid_argument("block generator has wrong shape");
      b.sparse.push_back(SparseLMatrix::from_dense(g));
    }
  }
  w0_word_ = W_->word(W_->longest());
  for (int i = 0; i < num_blocks(); ++i) blocks_[static_cast<std::size_t>(i)].ft = SparseLMatrix::from_dense(fulltwist_matrix(i));
  for (auto* cache : {&sq_, &theta_, &glue_}) {
    std::size_t count = cache == &sq_ ? blocks_.size() * static_cast<std::size_t>(W_->rank()) : blocks_.size();
    for (std::size_t i = 0; i < count; ++i) cache->push_back(std::make_unique<Cache>());
  }
}

LVector KModule::gen(int s, const LVector& x) const {
  LVector y = zero();
  for (const auto& b : blocks_) b.sparse[static_cast<std::size_t>(s)].apply_add(x, y, b.offset);
  return y;
}

LVector KModule::act_word(const std::vector<int>& word, const LVector& x) const {
  LVector y = x;
  for (auto it = word.rbegin(); it != word.rend(); ++it) y = gen(*it, y);
  return y;
}

LVector KModule::act(int w, const LVector& x) const { return act_word(W_->word(w), x); }

LVector KModule::fulltwist(const LVector& x) const {
  LVector y = zero();
  for (const auto& b : blocks_) b.ft.apply_add(x, y, b.offset);
  return y;
}

LVector KModule::poly(const BivarPoly& p, const LVector& x) const {
  // Horner
  LVector y = zero();
  for (int i = p.degree(); i >= 0; --i) {
    y = fulltwist(y);
    if (!p[i].is_zero())
      for (Eigen::Index j = 0; j < x.size(); ++j) y[j] += p[i] * x[j];
  }
  return y;
}

LMatrix KModule::fulltwist_matrix(int b) const {
  const auto& blk = blocks_[static_cast<std::size_t>(b)];
  LMatrix f = identity_lmatrix(blk.n);
  for (int rep = 0; rep < 2; ++rep)
    for (int s : w0_word_) f = mul(f, blk.dense[static_cast<std::size_t>(s)]);
  return f;
}

const RowReduction& KModule::square_minus_one(int b, int s) const {
  auto& c = *sq_[static_cast<std::size_t>(b * W_->rank() + s)];
  std::call_once(c.flag, [&] {
    const LMatrix& g = generator(b, s);
    LMatrix m = mul(g, g);
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, i) -= LaurentPoly(1);
    c.rr = std::make_unique<RowReduction>(to_rational(m));
  });
  return *c.rr;
}

const RowReduction& KModule::free_system(int b) const {
  auto& c = *theta_[static_cast<std::size_t>(b)];
  std::call_once(c.flag, [&] {
    const auto& blk = blocks_[static_cast<std::size_t>(b)];
    const int n = blk.n, g = W_->size();
    auto mats = element_matrices(*W_, blk.dense);
    RMatrix theta = RMatrix::Constant(g * n, g * n, RationalFunction());
    for (int y = 0; y < g; ++y)
      for (int w = 0; w < g; ++w) {
        const LMatrix& m = mats[static_cast<std::size_t>(W_->mul(y, W_->inverse(w)))];
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (!m(i, j).is_zero()) theta(y * n + i, w * n + j) = RationalFunction(m(i, j));
      }
    c.rr = std::make_unique<RowReduction>(theta);
  });
  return *c.rr;
}

const RMatrix& KModule::gluing_kernel(int b) const {
  auto& c = *glue_[static_cast<std::size_t>(b)];
  std::call_once(c.flag, [&] {
    const auto& blk = blocks_[static_cast<std::size_t>(b)];
    const int n = blk.n, g = W_->size();
    // (G_s + v^2)(a_{sw} - G_s a_w) = 0 for sw > w
    std::vector<std::pair<int, int>> conds;
    for (int s = 0; s < W_->rank(); ++s)
      for (int w = 0; w < g; ++w)
        if (W_->length(W_->lmul(s, w)) > W_->length(w)) conds.emplace_back(s, w);
    RMatrix sys = RMatrix::Constant(static_cast<Eigen::Index>(conds.size()) * n, g * n, RationalFunction());
    for (std::size_t k = 0; k < conds.size(); ++k) {
      auto [s, w] = conds[k];
      LMatrix p = blk.dense[static_cast<std::size_t>(s)];
      for (int i = 0; i < n; ++i) p(i, i) += v(2);
      LMatrix q = mul(p, blk.dense[static_cast<std::size_t>(s)]);
      const int sw = W_->lmul(s, w);
      const auto row = static_cast<Eigen::Index>(k) * n;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (!p(i, j).is_zero()) sys(row + i, sw * n + j) += RationalFunction(p(i, j));
          if (!q(i, j).is_zero()) sys(row + i, w * n + j) -= RationalFunction(q(i, j));
        }
    }
    c.rr = std::make_unique<RowReduction>(sys);
    c.kernel = c.rr->nullspace();
  });
  return c.kernel;
}

KTuple zero_tuple(const KModule& M) {
  return KTuple{std::vector<LVector>(static_cast<std::size_t>(M.group().size()), M.zero())};
}

KTuple scale(const LaurentPoly& k, const KTuple& t) {
  KTuple r = t;
  for (auto& x : r.c)
    for (Eigen::Index i = 0; i < x.size(); ++i)
      if (!x[i].is_zero()) x[i] = k * x[i];
  return r;
}

KTuple add(const KTuple& a, const KTuple& b) {
  KTuple r = a;
  for (std::size_t w = 0; w < r.c.size(); ++w) r.c[w] += b.c[w];
  return r;
}

bool is_zero(const KTuple& t) {
  for (const auto& x : t.c)
    if (!is_zero(x)) return false;
  return true;
}

const GluingEntry* GluingReport::first_failure() const {
  for (const auto& e : entries)
    if (!e.ok) return &e;
  return nullptr;
}

GluingReport check_gluing(const KModule& M, const KTuple& t, int threads) {
  const WeylGroup& W = M.group();
  GluingReport rep;
  rep.entries.resize(static_cast<std::size_t>(W.rank() * W.size()));
  parallel_for(W.rank() * W.size(), threads, [&](int idx) {
    const int s = idx / W.size(), w = idx % W.size();
    GluingEntry& e = rep.entries[static_cast<std::size_t>(idx)];
    e.s = s;
    e.w = w;
    LVector d = t.c[static_cast<std::size_t>(W.lmul(s, w))] - M.gen(s, t.c[static_cast<std::size_t>(w)]);
    e.witness = RVector::Constant(M.dim(), RationalFunction());
    e.ok = true;
    for (int b = 0; b < M.num_blocks() && e.ok; ++b) {
      LVector db = M.slice(d, b);
      if (is_zero(db)) continue;
      auto x = M.square_minus_one(b, s).solve(db);
      if (!x) {
        e.ok = false;
        e.witness = to_rational(d);
      } else {
        e.witness.segment(M.block_offset(b), M.block_dim(b)) = *x;
      }
    }
  });
  for (const auto& e : rep.entries) rep.ok = rep.ok && e.ok;
  return rep;
}

KTuple iota(const KModule& M, const KTuple& t) {
  const WeylGroup& W = M.group();
  KTuple r = zero_tuple(M);
  for (int w = 0; w < W.size(); ++w)
    r.c[static_cast<std::size_t>(w)] = M.act(W.longest(), t.c[static_cast<std::size_t>(W.mul(W.longest(), w))]);
  return r;
}

KTuple iota_sq(const KModule& M, const KTuple& t) {
  KTuple r = t;
  for (auto& x : r.c) x = M.fulltwist(x);
  return r;
}

KTuple make_free(const KModule& M, int w, const LVector& k) {
  const WeylGroup& W = M.group();
  KTuple r = zero_tuple(M);
  const int wi = W.inverse(w);
  for (int y = 0; y < W.size(); ++y) r.c[static_cast<std::size_t>(y)] = M.act(W.mul(y, wi), k);
  return r;
}

std::vector<CanonicalEntry> canonical_identity(const KModule& M, const LVector& k, int threads) {
  const WeylGroup& W = M.group();
  const int n = W.rank();
  const unsigned full = (1u << n) - 1;
  std::vector<LVector> phix(static_cast<std::size_t>(W.size()));
  for (int x = 0; x < W.size(); ++x) phix[static_cast<std::size_t>(x)] = M.act(x, k);
  std::vector<std::vector<int>> reps(static_cast<std::size_t>(full + 1));
  for (unsigned J = 1; J <= full; ++J) reps[J] = W.min_coset_reps(full & ~J);
  std::vector<CanonicalEntry> out(static_cast<std::size_t>(W.size()));
  parallel_for(W.size(), threads, [&](int y) {
    std::vector<std::optional<LVector>> memo(static_cast<std::size_t>(W.size()));
    LVector lhs = M.zero();
    for (unsigned J = 1; J <= full; ++J) {
      const bool odd = __builtin_popcount(J) % 2 == 1;
      for (int x : reps[J]) {
        auto& m = memo[static_cast<std::size_t>(x)];
        if (!m) m = M.act(W.mul(y, W.inverse(x)), phix[static_cast<std::size_t>(x)]);
        if (odd)
          lhs += *m;
        else
          lhs -= *m;
      }
    }
    LVector tail = M.act(W.longest(), phix[static_cast<std::size_t>(W.mul(W.longest(), y))]);
    LVector rhs = phix[static_cast<std::size_t>(y)];
    if (n % 2 == 1)
      rhs += tail;
    else
      rhs -= tail;
    auto& e = out[static_cast<std::size_t>(y)];
    e.y = y;
    e.ok = lhs == rhs;
    e.lhs = std::move(lhs);
    e.rhs = std::move(rhs);
  });
  return out;
}

bool annihilated_by_family(const KModule& M, int m) {
  const BivarPoly P = annihilator_family(m);
  for (int b = 0; b < M.num_blocks(); ++b) {
    LMatrix e = evaluate(P, M.fulltwist_matrix(b));
    for (Eigen::Index i = 0; i < e.rows(); ++i)
      for (Eigen::Index j = 0; j < e.cols(); ++j)
        if (!e(i, j).is_zero()) return false;
  }
  return true;
}

SplitCertificate polyconj_split(const KModule& M, const KTuple& a, int m, int threads) {
  const WeylGroup& W = M.group();
  auto glue = check_gluing(M, a, threads);
  if (!glue.ok) {
    const auto* f = glue.first_failure();
    throw GluingViolation("gluing fails at s=" + std::to_string(f->s + 1) + " w=" + W.word_string(f->w));
  }
  SplitCertificate c;
  const BivarPoly pt = annihilator_family(m, true);
  auto split = split_at_one(pt);
  c.pv = split.pv;
  c.r = split.r;
  const BivarPoly rx = split.r * (BivarPoly::x() - BivarPoly(LaurentPoly(1)));
  c.a0 = zero_tuple(M);
  c.a1 = zero_tuple(M);
  parallel_for(W.size(), threads, [&](int w) {
    c.a0.c[static_cast<std::size_t>(w)] = M.poly(pt, a.c[static_cast<std::size_t>(w)]);
    c.a1.c[static_cast<std::size_t>(w)] = M.poly(rx, a.c[static_cast<std::size_t>(w)]);
  });
  c.sum_ok = add(c.a0, c.a1) == scale(c.pv, a);
  c.square_fixed = c.chain_ok = c.free_ok = true;
  const LaurentPoly q = v(4) - LaurentPoly(1);
  std::string witness;
  for (int s = 0; s < W.rank(); ++s)
    for (int w = 0; w < W.size(); ++w) {
      const LVector& x = c.a0.c[static_cast<std::size_t>(w)];
      if (M.gen(s, M.gen(s, x)) != x) {
        c.square_fixed = false;
        if (witness.empty()) witness = "square s=" + std::to_string(s + 1) + " w=" + W.word_string(w);
      }
      LVector d = c.a0.c[static_cast<std::size_t>(W.lmul(s, w))] - M.gen(s, x);
      LVector lhs = M.gen(s, M.gen(s, d)) - d;
      LVector rhs = d;
      for (Eigen::Index i = 0; i < rhs.size(); ++i) rhs[i] = q * rhs[i];
      if (lhs != rhs) {
        c.chain_ok = false;
        if (witness.empty()) witness = "chain s=" + std::to_string(s + 1) + " w=" + W.word_string(w);
      }
      if (!is_zero(d)) {
        c.free_ok = false;
        if (witness.empty()) witness = "free s=" + std::to_string(s + 1) + " w=" + W.word_string(w);
      }
    }
  c.annihilates = annihilated_by_family(M, m);
  c.ptilde_kills_a1 = true;
  for (const auto& x : c.a1.c)
    if (!is_zero(M.poly(pt, x))) c.ptilde_kills_a1 = false;
  if (c.annihilates && !c.all()) {
    if (witness.empty()) witness = !c.sum_ok ? "sum" : "ptilde on a1";
    throw IdentityFailure("split contract fails: " + witness);
  }
  return c;
}

DescentReport euclid_descent(const KModule& M, const KTuple& a, int r, int m) {
  const BivarPoly ptr = annihilator_family(m, true).pow(static_cast<unsigned>(r));
  for (std::size_t w = 0; w < a.c.size(); ++w) {
    LVector res = M.poly(ptr, a.c[w]);
    if (!is_zero(res)) {
      std::ostringstream os;
      os << "Ptilde^" << r << "(F) a nonzero at w=" << M.group().word_string(static_cast<int>(w)) << ": [";
      for (Eigen::Index i = 0; i < res.size(); ++i) os << (i ? ", " : "") << res[i].str();
      os << "]";
      throw PreconditionFailure(os.str());
    }
  }
  const BivarPoly xm1 = BivarPoly::x() - BivarPoly(LaurentPoly(1));
  auto [q, rem] = divmod_x(ptr, xm1);
  DescentReport d;
  d.pr = p_of_v(m).pow(static_cast<unsigned>(r));
  if (rem != BivarPoly(d.pr)) throw std::logic_error("remainder of Ptilde^r at x = 1 is not p^r");
  d.g = -q;
  const BivarPoly gx = d.g * xm1;
  d.verified = true;
  for (const auto& x : a.c) {
    LVector lhs = x;
    for (Eigen::Index i = 0; i < lhs.size(); ++i) lhs[i] = d.pr * lhs[i];
    if (lhs != M.poly(gx, x)) d.verified = false;
  }
  return d;
}

std::optional<FreeSpanResult> express_in_free_span(const KModule& M, const KTuple& a, int m, int threads) {
  const WeylGroup& W = M.group();
  const int g = W.size();
  std::vector<std::optional<RVector>> sols(static_cast<std::size_t>(M.num_blocks()));
  parallel_for(M.num_blocks(), threads, [&](int b) {
    const int n = M.block_dim(b);
    LVector rhs(g * n);
    for (int y = 0; y < g; ++y) rhs.segment(y * n, n) = M.slice(a.c[static_cast<std::size_t>(y)], b);
    sols[static_cast<std::size_t>(b)] = M.free_system(b).solve(rhs);
  });
  FreeSpanResult res;
  res.field_coeffs.assign(static_cast<std::size_t>(g), RVector::Constant(M.dim(), RationalFunction()));
  for (int b = 0; b < M.num_blocks(); ++b) {
    const auto& s = sols[static_cast<std::size_t>(b)];
    if (!s) return std::nullopt;
    const int n = M.block_dim(b);
    for (int w = 0; w < g; ++w)
      res.field_coeffs[static_cast<std::size_t>(w)].segment(M.block_offset(b), n) = s->segment(w * n, n);
  }
  RVector all(g * M.dim());
  for (int w = 0; w < g; ++w) all.segment(w * M.dim(), M.dim()) = res.field_coeffs[static_cast<std::size_t>(w)];
  res.denominator = clear_denominators(all).first;
  auto power = divides_p_power(res.denominator, m, 16);
  res.admissible = power.has_value();
  if (!res.admissible) return res;
  res.power = *power;
  std::map<int, int> den;
  for (int i = 1; i <= m && res.power > 0; ++i) den[i] = res.power;
  const LaurentPoly pr = p_of_v(m).pow(static_cast<unsigned>(res.power));
  for (int w = 0; w < g; ++w) {
    std::vector<LocalizedScalar> row;
    for (Eigen::Index i = 0; i < M.dim(); ++i) {
      const RationalFunction& f = res.field_coeffs[static_cast<std::size_t>(w)][i];
      auto q = divide_exact(pr, f.den());
      if (!q) throw std::logic_error("denominator does not divide p^r");
      row.push_back(localized_reduce(LocalizedScalar(f.num() * *q, den)));
    }
    res.coeffs.push_back(std::move(row));
  }
  return res;
}

LVector random_vector(const KModule& M, std::mt19937_64& rng, double density) {
  std::bernoulli_distribution on(density);
  LVector x = M.zero();
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (on(rng)) x[i] = random_poly(rng);
  return x;
}

KTuple random_free_sum(const KModule& M, std::mt19937_64& rng, int terms) {
  std::uniform_int_distribution<int> pick(0, M.group().size() - 1);
  KTuple t = zero_tuple(M);
  for (int i = 0; i < terms; ++i) {
    int w = pick(rng);
    t = add(t, make_free(M, w, random_vector(M, rng, 0.3)));
  }
  return t;
}

KTuple random_gluing_tuple(const KModule& M, std::mt19937_64& rng, bool use_kernel) {
  KTuple t = random_free_sum(M, rng);
  if (!use_kernel) return t;
  const int g = M.group().size();
  std::uniform_int_distribution<int> c(-2, 2);
  for (int b = 0; b < M.num_blocks(); ++b) {
    if (M.block_dim(b) > kKernelDimLimit) continue;
    const RMatrix& ker = M.gluing_kernel(b);
    const int n = M.block_dim(b);
    for (Eigen::Index j = 0; j < ker.cols(); ++j) {
      int k = c(rng);
      if (k == 0) continue;
      auto [d, y] = clear_denominators(RVector(ker.col(j)));
      for (int w = 0; w < g; ++w)
        for (int i = 0; i < n; ++i)
          if (!y[w * n + i].is_zero()) t.c[static_cast<std::size_t>(w)][M.block_offset(b) + i] += LaurentPoly(k) * y[w * n + i];
    }
  }
  return t;
}

std::string tuple_str(const KModule& M, const KTuple& t) {
  std::ostringstream os;
  os << "{";
  for (int w = 0; w < M.group().size(); ++w) {
    os << (w ? ", " : "") << M.group().word_string(w) << ": [";
    const auto& x = t.c[static_cast<std::size_t>(w)];
    for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i].str();
    os << "]";
  }
  os << "}";
  return os.str();
}

}  // namespace klwb
