#include "klwb/linalg.hpp"

#include <stdexcept>

namespace klwb {

RMatrix to_rational(const LMatrix& m) {
  RMatrix r(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) r(i, j) = RationalFunction(m(i, j));
  return r;
}

RVector to_rational(const LVector& v) {
  RVector r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r[i] = RationalFunction(v[i]);
  return r;
}

LMatrix zero_lmatrix(Eigen::Index rows, Eigen::Index cols) { return LMatrix::Constant(rows, cols, LaurentPoly()); }
LVector zero_lvector(Eigen::Index n) { return LVector::Constant(n, LaurentPoly()); }

LMatrix identity_lmatrix(Eigen::Index n) {
  LMatrix m = zero_lmatrix(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = LaurentPoly(1);
  return m;
}

LMatrix mul(const LMatrix& a, const LMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("dimension mismatch");
  LMatrix c = zero_lmatrix(a.rows(), b.cols());
  for (Eigen::Index k = 0; k < a.cols(); ++k)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      if (b(k, j).is_zero()) continue;
      for (Eigen::Index i = 0; i < a.rows(); ++i)
        if (!a(i, k).is_zero()) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

LVector mul(const LMatrix& a, const LVector& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("dimension mismatch");
  LVector y = zero_lvector(a.rows());
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    if (x[k].is_zero()) continue;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!a(i, k).is_zero()) y[i] += a(i, k) * x[k];
  }
  return y;
}

RVector mul(const RMatrix& a, const RVector& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("dimension mismatch");
  RVector y = RVector::Constant(a.rows(), RationalFunction());
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    if (x[k].is_zero()) continue;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!a(i, k).is_zero()) y[i] += a(i, k) * x[k];
  }
  return y;
}

bool is_zero(const LVector& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) return false;
  return true;
}

bool is_zero(const RVector& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) return false;
  return true;
}

std::pair<LaurentPoly, LVector> clear_denominators(const RVector& x) {
  LaurentPoly d(1);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const LaurentPoly& e = x[i].den();
    if (e.is_one()) continue;
    LaurentPoly g = gcd(d, e);
    d = *divide_exact(d * e, g);
  }
  LVector y(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    y[i] = x[i].is_zero() ? LaurentPoly() : *divide_exact(x[i].num() * d, x[i].den());
  return {d, y};
}

RowReduction::RowReduction(const RMatrix& a) : r_(a) {
  const Eigen::Index m = a.rows(), n = a.cols();
  e_ = RMatrix::Constant(m, m, RationalFunction());
  for (Eigen::Index i = 0; i < m; ++i) e_(i, i) = RationalFunction(1);
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < n && row < m; ++col) {
    Eigen::Index best = -1;
    int best_w = 0;
    for (Eigen::Index i = row; i < m; ++i) {
      if (r_(i, col).is_zero()) continue;
      int w = r_(i, col).weight();
      if (best < 0 || w < best_w) {
        best = i;
        best_w = w;
      }
    }
    if (best < 0) continue;
    if (best != row) {
      r_.row(best).swap(r_.row(row));
      e_.row(best).swap(e_.row(row));
    }
    const RationalFunction inv = r_(row, col).inverse();
    for (Eigen::Index j = col; j < n; ++j)
      if (!r_(row, j).is_zero()) r_(row, j) *= inv;
    for (Eigen::Index j = 0; j < m; ++j)
      if (!e_(row, j).is_zero()) e_(row, j) *= inv;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i == row || r_(i, col).is_zero()) continue;
      const RationalFunction f = r_(i, col);
      for (Eigen::Index j = col; j < n; ++j)
        if (!r_(row, j).is_zero()) r_(i, j) -= f * r_(row, j);
      for (Eigen::Index j = 0; j < m; ++j)
        if (!e_(row, j).is_zero()) e_(i, j) -= f * e_(row, j);
    }
    pivots_.push_back(static_cast<int>(col));
    ++row;
  }
  e_den_.reserve(static_cast<std::size_t>(m));
  e_num_ = zero_lmatrix(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    auto [d, y] = clear_denominators(RVector(e_.row(i).transpose()));
    e_den_.push_back(d);
    e_num_.row(i) = y.transpose();
  }
}

std::optional<RVector> RowReduction::solve(const LVector& b) const {
  if (b.size() != rows()) throw std::invalid_argument("dimension mismatch");
  auto entry = [&](Eigen::Index i) {
    LaurentPoly acc;
    for (Eigen::Index j = 0; j < b.size(); ++j)
      if (!b[j].is_zero() && !e_num_(i, j).is_zero()) acc += e_num_(i, j) * b[j];
    return acc;
  };
  for (Eigen::Index i = rank(); i < rows(); ++i)
    if (!entry(i).is_zero()) return std::nullopt;
  RVector x = RVector::Constant(cols(), RationalFunction());
  for (int k = 0; k < rank(); ++k) {
    LaurentPoly n = entry(k);
    if (!n.is_zero()) x[pivots_[static_cast<std::size_t>(k)]] = RationalFunction(n, e_den_[static_cast<std::size_t>(k)]);
  }
  return x;
}

std::optional<RVector> RowReduction::solve(const RVector& b) const {
  if (b.size() != rows()) throw std::invalid_argument("dimension mismatch");
  RVector c = mul(e_, b);
  for (Eigen::Index i = rank(); i < rows(); ++i)
    if (!c[i].is_zero()) return std::nullopt;
  RVector x = RVector::Constant(cols(), RationalFunction());
  for (int k = 0; k < rank(); ++k) x[pivots_[static_cast<std::size_t>(k)]] = c[k];
  return x;
}

RMatrix RowReduction::nullspace() const {
  std::vector<char> is_pivot(static_cast<std::size_t>(cols()), 0);
  for (int p : pivots_) is_pivot[static_cast<std::size_t>(p)] = 1;
  std::vector<int> free;
  for (int j = 0; j < cols(); ++j)
    if (!is_pivot[static_cast<std::size_t>(j)]) free.push_back(j);
  RMatrix k = RMatrix::Constant(cols(), static_cast<Eigen::Index>(free.size()), RationalFunction());
  for (std::size_t f = 0; f < free.size(); ++f) {
    const auto c = static_cast<Eigen::Index>(f);
    k(free[f], c) = RationalFunction(1);
    for (int i = 0; i < rank(); ++i) k(pivots_[static_cast<std::size_t>(i)], c) = -r_(i, free[f]);
  }
  return k;
}

namespace {

struct KrylovRow {
  RVector vec;
  std::vector<RationalFunction> combo;  // in terms of the powers seen so far
  Eigen::Index pivot;
};

// First linear dependency among the vectors produced by next(); returns the
// monic relation sum c_i x^i.
template <class Next>
BivarPoly first_dependency(Next next) {
  std::vector<KrylovRow> basis;
  for (int k = 0;; ++k) {
    RVector vec = next();
    std::vector<RationalFunction> combo(static_cast<std::size_t>(k + 1), RationalFunction());
    combo[static_cast<std::size_t>(k)] = RationalFunction(1);
    for (const KrylovRow& row : basis) {
      if (vec[row.pivot].is_zero()) continue;
      const RationalFunction f = vec[row.pivot];
      for (Eigen::Index i = 0; i < vec.size(); ++i)
        if (!row.vec[i].is_zero()) vec[i] -= f * row.vec[i];
      for (std::size_t i = 0; i < row.combo.size(); ++i)
        if (!row.combo[i].is_zero()) combo[i] -= f * row.combo[i];
    }
    Eigen::Index piv = -1;
    int best = 0;
    for (Eigen::Index i = 0; i < vec.size(); ++i)
      if (!vec[i].is_zero() && (piv < 0 || vec[i].weight() < best)) {
        piv = i;
        best = vec[i].weight();
      }
    if (piv < 0) {
      std::vector<LaurentPoly> coeffs;
      for (const RationalFunction& c : combo) {
        if (!c.is_polynomial()) throw std::logic_error("minimal polynomial has non-integral coefficients");
        coeffs.push_back(c.num());
      }
      return BivarPoly(coeffs);
    }
    const RationalFunction inv = vec[piv].inverse();
    for (Eigen::Index i = 0; i < vec.size(); ++i)
      if (!vec[i].is_zero()) vec[i] *= inv;
    for (auto& c : combo)
      if (!c.is_zero()) c *= inv;
    basis.push_back({std::move(vec), std::move(combo), piv});
  }
}

}  // namespace

BivarPoly minimal_polynomial(const LMatrix& m) { return minimal_polynomial(std::vector<LMatrix>{m}); }

BivarPoly minimal_polynomial(const std::vector<LMatrix>& blocks) {
  Eigen::Index total = 0;
  for (const auto& b : blocks) {
    if (b.rows() != b.cols()) throw std::invalid_argument("square matrix required");
    total += b.rows() * b.cols();
  }
  std::vector<LMatrix> powers;
  for (const auto& b : blocks) powers.push_back(identity_lmatrix(b.rows()));
  bool first = true;
  return first_dependency([&]() {
    if (!first)
      for (std::size_t i = 0; i < blocks.size(); ++i) powers[i] = mul(blocks[i], powers[i]);
    first = false;
    RVector flat(total);
    Eigen::Index k = 0;
    for (const auto& p : powers)
      for (Eigen::Index j = 0; j < p.cols(); ++j)
        for (Eigen::Index i = 0; i < p.rows(); ++i) flat[k++] = RationalFunction(p(i, j));
    return flat;
  });
}

LMatrix evaluate(const BivarPoly& p, const LMatrix& m) {
  LMatrix acc = zero_lmatrix(m.rows(), m.cols());
  for (int i = p.degree(); i >= 0; --i) {
    acc = mul(m, acc);
    for (Eigen::Index j = 0; j < m.rows(); ++j) acc(j, j) += p[i];
  }
  return acc;
}

}  // namespace klwb
