#include <doctest.h>

#include <random>

#include "klwb/klalgebra.hpp"

using namespace klwb;

namespace {

LaurentPoly v(int e = 1) { return LaurentPoly::v(e); }
const LaurentPoly one(1);
BivarPoly lin(const LaurentPoly& root) { return BivarPoly(std::vector<LaurentPoly>{-root, one}); }

OrbitHeckeAlgebra single(const WeylGroup& W, const std::string& pt) {
  return OrbitHeckeAlgebra(W, orbit(W, CharacterPoint::parse(pt)));
}

OrbitHeckeElement random_element(const OrbitHeckeAlgebra& H, std::mt19937_64& rng, int terms) {
  std::uniform_int_distribution<int> w(0, H.group().size() - 1), p(0, H.num_points() - 1), c(-3, 3), e(-2, 2);
  OrbitHeckeElement x = H.zero();
  for (int k = 0; k < terms; ++k) x.add_term(p(rng), w(rng), LaurentPoly(c(rng)) * v(e(rng)));
  return x;
}

}  // namespace

TEST_CASE("A1 nontrivial point squares to the idempotent") {
  WeylGroup W(parse_cartan_type("A1"));
  auto H = single(W, "1/2");
  REQUIRE(H.num_points() == 1);
  CHECK_FALSE(H.in_wl(0, 0));
  auto x = H.pi_generator(0);
  CHECK(x.coeff(0, 1) == LaurentPoly(-1));
  CHECK(H.mul(x, x) == H.unit());
  CHECK(H.mul(H.T(1, 0), H.T(1, 0)) == H.idempotent(0));
}

TEST_CASE("trivial block is the regular left module") {
  for (const char* name : {"A2", "B2", "G2"}) {
    WeylGroup W(parse_cartan_type(name));
    HeckeAlgebra R(W);
    auto H = single(W, std::string(W.rank() == 2 ? "0,0" : "0"));
    for (int s = 0; s < W.rank(); ++s) {
      LMatrix m = H.block_matrix(H.pi_generator(s), 0);
      for (int u = 0; u < W.size(); ++u) {
        HeckeElement col = R.lmul_gen(s, R.T(u, Convention::ly));
        for (int x = 0; x < W.size(); ++x) CHECK(m(x, u) == col.coeff(x));
      }
    }
  }
}

TEST_CASE("idempotents route terms") {
  WeylGroup W(parse_cartan_type("A2"));
  auto H = single(W, "1/3,0");
  for (int i = 0; i < H.num_points(); ++i)
    for (int w = 0; w < W.size(); ++w)
      for (int j = 0; j < H.num_points(); ++j) {
        auto p = H.mul(H.idempotent(j), H.T(w, i));
        if (j == H.target(i, w))
          CHECK(p == H.T(w, i));
        else
          CHECK(p.is_zero());
        CHECK(H.mul(H.T(w, i), H.idempotent(j)) == (j == i ? H.T(w, i) : H.zero()));
      }
}

TEST_CASE("orbit algebra is associative with unit") {
  std::mt19937_64 rng(7);
  for (auto [name, pt] : {std::pair{"A2", "1/2,0"}, std::pair{"B2", "1/2,0"}, std::pair{"B2", "0,1/2"},
                          std::pair{"G2", "1/2,0"}}) {
    WeylGroup W(parse_cartan_type(name));
    auto H = single(W, pt);
    for (int trial = 0; trial < 10; ++trial) {
      auto a = random_element(H, rng, 3), b = random_element(H, rng, 3), c = random_element(H, rng, 3);
      CHECK(H.mul(H.mul(a, b), c) == H.mul(a, H.mul(b, c)));
      CHECK(H.mul(H.unit(), a) == a);
      CHECK(H.mul(a, H.unit()) == a);
    }
  }
}

TEST_CASE("generator inverse") {
  WeylGroup W(parse_cartan_type("B2"));
  KLAlgebra A(W, 4);
  for (int k = 0; k < A.num_orbits(); ++k) {
    const auto& H = A.orbit_algebra(k);
    for (int s = 0; s < 2; ++s) {
      CHECK(H.pi_word({s, ~s}) == H.unit());
      CHECK(H.pi_word({~s, s}) == H.unit());
    }
  }
}

TEST_CASE("orbit mismatch") {
  WeylGroup W(parse_cartan_type("A1"));
  auto H1 = single(W, "0");
  auto H2 = single(W, "1/2");
  CHECK_THROWS_AS(H1.mul(H1.unit(), H2.unit()), OrbitMismatch);
  CHECK_THROWS_AS(H1.unit() + H2.unit(), OrbitMismatch);
}

TEST_CASE("braid and cubic relations") {
  for (const char* name : {"A1", "A2", "B2", "G2"}) {
    WeylGroup W(parse_cartan_type(name));
    KLAlgebra A(W, 6);
    CHECK(all_pass(verify_braid(A)));
    CHECK(all_pass(verify_cubic(A)));
    CHECK(all_pass(operator_square_identity(A)));
  }
  WeylGroup W(parse_cartan_type("A3"));
  KLAlgebra A(W, 2);
  CHECK(all_pass(verify_braid(A)));
  CHECK(all_pass(verify_cubic(A)));
}

TEST_CASE("projection properties") {
  for (const char* name : {"A2", "B2", "G2"}) {
    WeylGroup W(parse_cartan_type(name));
    KLAlgebra A(W, 6);
    auto rs = verify_projection_properties(A, 50, 11);
    CHECK(rs.size() == static_cast<std::size_t>(3 * A.num_orbits()));
    CHECK(all_pass(rs));
  }
}

TEST_CASE("full twist squares the longest element per block") {
  for (const char* name : {"A1", "A2", "B2", "G2"}) {
    WeylGroup W(parse_cartan_type(name));
    KLAlgebra A(W, 6);
    for (int k = 0; k < A.num_orbits(); ++k)
      for (const auto& c : check_w0_identity(A.orbit_algebra(k))) CHECK(c.equal);
  }
}

TEST_CASE("full twist is central on every orbit") {
  WeylGroup W(parse_cartan_type("B2"));
  KLAlgebra A(W, 4);
  std::mt19937_64 rng(3);
  for (int k = 0; k < A.num_orbits(); ++k) {
    const auto& H = A.orbit_algebra(k);
    auto f = H.full_twist();
    for (int s = 0; s < 2; ++s) CHECK(H.mul(f, H.pi_generator(s)) == H.mul(H.pi_generator(s), f));
  }
}

TEST_CASE("block matrices agree with direct multiplication") {
  WeylGroup W(parse_cartan_type("A2"));
  KLAlgebra A(W, 6);
  auto blocks = distinct_blocks(A);
  CHECK(blocks.size() >= 3);
  const auto& H = A.orbit_algebra(0);
  CHECK(blocks[0].fulltwist == H.block_matrix(H.full_twist(), 0));
}

TEST_CASE("A1 full twist minimal polynomial") {
  WeylGroup W(parse_cartan_type("A1"));
  KLAlgebra A(W, 6);
  auto sp = fulltwist_minpoly(A);
  CHECK(sp.minpoly == lin(one) * lin(v(4)));
  CHECK(sp.split);
  CHECK(sp.eigen_exponents == std::vector<int>{0, 4});
  CHECK(sp.divides_safe);
  CHECK_FALSE(sp.divides_ell);
  auto rs = verify_minpoly(A, 1);
  CHECK(rs[1].status == Status::pass);
  CHECK(rs[2].status == Status::finding);
}

TEST_CASE("minimal polynomial divides the safe family") {
  for (const char* name : {"A2", "B2"}) {
    WeylGroup W(parse_cartan_type(name));
    KLAlgebra A(W, 6);
    auto sp = fulltwist_minpoly(A);
    CHECK(sp.divides_safe);
    CHECK(sp.split);
    for (int e : sp.eigen_exponents) CHECK(e % 2 == 0);
  }
}

TEST_CASE("kl elements reevaluate") {
  WeylGroup W(parse_cartan_type("A2"));
  KLAlgebra A(W, 3);
  auto x = A.element({0, ~1, 0});
  auto y = A.a(W.longest());
  auto z = A.mul(x, y);
  CHECK(A.reevaluates(z));
  CHECK(KLAlgebra::equal(A.mul(A.element({0}), A.element({~0})), A.element({})));
  CHECK_THROWS_AS(A.element({5}), std::out_of_range);
}
