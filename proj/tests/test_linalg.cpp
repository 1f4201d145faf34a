#include <doctest.h>

#include <random>

#include "klwb/linalg.hpp"
#include "oracle.hpp"

using namespace klwb;

namespace {
LaurentPoly v(int e = 1) { return LaurentPoly::v(e); }
const LaurentPoly one(1);

LMatrix random_matrix(std::mt19937_64& rng, int r, int c) {
  LMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = oracle::random_poly(rng, -1, 1, 2);
  return m;
}

}  // namespace

TEST_CASE("row reduction solve and nullspace") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 20; ++it) {
    LMatrix a = random_matrix(rng, 4, 5);
    RMatrix ra = to_rational(a);
    RowReduction rr(ra);
    RMatrix k = rr.nullspace();
    CHECK(k.cols() == 5 - rr.rank());
    for (Eigen::Index c = 0; c < k.cols(); ++c) CHECK(is_zero(mul(ra, RVector(k.col(c)))));
    LVector x(5);
    for (int i = 0; i < 5; ++i) x[i] = oracle::random_poly(rng, -1, 1, 2);
    RVector b = to_rational(mul(a, x));
    auto sol = rr.solve(b);
    REQUIRE(sol);
    RVector diff = mul(ra, *sol);
    for (Eigen::Index i = 0; i < b.size(); ++i) CHECK(diff[i] == b[i]);
  }
  // inconsistent system
  LMatrix a(2, 1);
  a << one, one;
  RVector b(2);
  b << RationalFunction(1), RationalFunction(v(2));
  CHECK_FALSE(RowReduction(to_rational(a)).solve(b));
}

TEST_CASE("clear denominators") {
  RVector x(2);
  x << RationalFunction(one, one - v(2)), RationalFunction(v(), one - v(4));
  auto [d, y] = clear_denominators(x);
  CHECK(divide_exact(d, one - v(4)));
  CHECK(RationalFunction(y[0], d) == x[0]);
  CHECK(RationalFunction(y[1], d) == x[1]);
}

TEST_CASE("minimal polynomial") {
  LMatrix m(2, 2);
  m << LaurentPoly(), v(2), one, one - v(2);
  BivarPoly p = minimal_polynomial(m);
  CHECK(p.degree() == 2);
  CHECK(is_zero(LVector(evaluate(p, m).reshaped())));
  CHECK(minimal_polynomial(identity_lmatrix(3)).degree() == 1);

  // diagonal with repeated eigenvalues: degree counts distinct ones
  LMatrix d = zero_lmatrix(3, 3);
  d(0, 0) = one;
  d(1, 1) = v(2);
  d(2, 2) = one;
  CHECK(minimal_polynomial(d).degree() == 2);
  CHECK(minimal_polynomial(std::vector<LMatrix>{d, identity_lmatrix(1) * v(4)}).degree() == 3);

  std::mt19937_64 rng(37);
  for (int it = 0; it < 10; ++it) {
    LMatrix r = random_matrix(rng, 3, 3);
    BivarPoly mp = minimal_polynomial(r);
    CHECK(mp.leading() == one);
    CHECK(is_zero(LVector(evaluate(mp, r).reshaped())));
    // generic random matrices are cyclic
    CHECK(mp.degree() == 3);
  }
}
