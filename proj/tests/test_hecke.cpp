#include <doctest.h>

#include <random>
#include <set>

#include "klwb/hecke.hpp"

using namespace klwb;

namespace {

LaurentPoly v(int e = 1) { return LaurentPoly::v(e); }
const LaurentPoly one(1);
BivarPoly lin(const LaurentPoly& root) { return BivarPoly(std::vector<LaurentPoly>{-root, one}); }

HeckeElement word_product(const HeckeAlgebra& H, const std::vector<int>& word, Convention c) {
  HeckeElement r = H.one(c);
  for (int s : word) r = H.mul(r, H.T(H.group().from_word({s}), c));
  return r;
}

// preorder closure from full KL-basis expansions of C_s C_w and C_w C_s
std::vector<std::set<int>> brute_two_sided(const HeckeAlgebra& H) {
  const WeylGroup& W = H.group();
  const int n = W.size();
  std::vector<std::set<int>> below(static_cast<std::size_t>(n));
  for (int w = 0; w < n; ++w) {
    below[static_cast<std::size_t>(w)].insert(w);
    for (int s = 0; s < W.rank(); ++s) {
      const HeckeElement& cs = H.kl(W.from_word({s}));
      for (const auto& prod : {H.mul(cs, H.kl(w)), H.mul(H.kl(w), cs)})
        for (const auto& [x, c] : H.kl_expand(prod)) below[static_cast<std::size_t>(w)].insert(x);
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& b : below) {
      std::set<int> add;
      for (int x : b)
        for (int y : below[static_cast<std::size_t>(x)])
          if (!b.count(y)) add.insert(y);
      if (!add.empty()) {
        b.insert(add.begin(), add.end());
        changed = true;
      }
    }
  }
  std::vector<std::set<int>> cells;
  std::set<int> done;
  for (int w = 0; w < n; ++w) {
    if (done.count(w)) continue;
    std::set<int> c;
    for (int x = 0; x < n; ++x)
      if (below[static_cast<std::size_t>(w)].count(x) && below[static_cast<std::size_t>(x)].count(w)) c.insert(x);
    done.insert(c.begin(), c.end());
    cells.push_back(c);
  }
  return cells;
}

std::vector<std::string> words(const WeylGroup& W, const std::vector<int>& xs) {
  std::vector<std::string> out;
  for (int x : xs) out.push_back(W.word_string(x));
  return out;
}

}  // namespace

TEST_CASE("quadratic relations") {
  WeylGroup A1(parse_cartan_type("A1"));
  HeckeAlgebra H(A1);
  const int s = 1, e = 0;
  auto ts = H.T(s, Convention::standard);
  CHECK(H.mul(ts, ts) == H.one(Convention::standard) + (v(-1) - v(1)) * ts);
  auto tl = H.T(s, Convention::ly);
  CHECK(H.mul(tl, tl) == v(2) * H.one(Convention::ly) + (one - v(2)) * tl);
  CHECK(H.mul(H.T(e, Convention::ly), tl) == tl);
  CHECK_THROWS_AS(H.mul(ts, tl), ConventionMismatch);
  CHECK(H.mul(ts, ts).str() == "[(1, v^-1 - v), (e, 1)]");
}

TEST_CASE("braid relations in both conventions") {
  for (const char* name : {"A2", "B2", "G2", "A3"}) {
    WeylGroup W(parse_cartan_type(name));
    HeckeAlgebra H(W);
    for (Convention c : {Convention::standard, Convention::ly}) {
      for (int w = 0; w < W.size(); ++w) {
        // every reduced word gives T_w; compare canonical word with a
        // reduced word ending in a right descent
        CHECK(word_product(H, W.word(w), c) == H.T(w, c));
        for (int s = 0; s < W.rank(); ++s)
          if (W.right_descent(w, s)) {
            auto alt = W.word(W.rmul(w, s));
            alt.push_back(s);
            CHECK(word_product(H, alt, c) == H.T(w, c));
          }
      }
    }
  }
}

TEST_CASE("convention conversion") {
  WeylGroup A1(parse_cartan_type("A1"));
  HeckeAlgebra H1(A1);
  auto img = H1.convert(H1.T(1, Convention::ly), Convention::standard);
  CHECK(img == (one - v(2)) * H1.one(Convention::standard) - v(1) * H1.T(1, Convention::standard));
  CHECK(H1.convert(H1.one(Convention::standard), Convention::ly) == H1.one(Convention::ly));

  WeylGroup A2(parse_cartan_type("A2"));
  HeckeAlgebra H(A2);
  int w0 = A2.longest();
  HeckeElement prod = H.one(Convention::ly);
  for (int s : A2.word(w0)) prod = H.mul(prod, H.convert(H.T(A2.from_word({s}), Convention::standard), Convention::ly));
  CHECK(H.convert(H.T(w0, Convention::standard), Convention::ly) == prod);

  std::mt19937_64 rng(23);
  for (const char* name : {"A2", "B2", "A3"}) {
    WeylGroup W(parse_cartan_type(name));
    HeckeAlgebra G(W);
    for (int it = 0; it < 20; ++it) {
      HeckeElement a(&W, Convention::standard), b(&W, Convention::standard);
      for (int k = 0; k < 3; ++k) {
        a.add_term(static_cast<int>(rng() % static_cast<unsigned>(W.size())), v(static_cast<int>(rng() % 5) - 2));
        b.add_term(static_cast<int>(rng() % static_cast<unsigned>(W.size())), LaurentPoly(static_cast<int>(rng() % 7) - 3));
      }
      auto la = G.convert(a, Convention::ly), lb = G.convert(b, Convention::ly);
      CHECK(G.convert(G.mul(a, b), Convention::ly) == G.mul(la, lb));
      CHECK(G.convert(la, Convention::standard) == a);
    }
  }
}

TEST_CASE("kazhdan-lusztig basis") {
  WeylGroup A1(parse_cartan_type("A1"));
  HeckeAlgebra H1(A1);
  CHECK(H1.kl(0) == H1.one(Convention::standard));
  CHECK(H1.kl(1) == H1.T(1, Convention::standard) + v(1) * H1.one(Convention::standard));

  // dihedral groups: C_w = sum_{y <= w} v^{l(w)-l(y)} T_y
  for (const char* name : {"A2", "B2", "G2"}) {
    WeylGroup W(parse_cartan_type(name));
    HeckeAlgebra H(W);
    for (int w = 0; w < W.size(); ++w) {
      HeckeElement expect(&W, Convention::standard);
      for (int y = 0; y < W.size(); ++y)
        if (W.bruhat_leq(y, w)) expect.add_term(y, v(W.length(w) - W.length(y)));
      CHECK(H.kl(w) == expect);
    }
  }

  WeylGroup A3(parse_cartan_type("A3"));
  HeckeAlgebra H3(A3);
  int y = A3.from_word_string("2"), w = A3.from_word_string("2132");
  CHECK(H3.kl(w).coeff(y) == v(1) + v(3));
  CHECK(H3.mu(y, w) == 1);

  for (const char* name : {"A1", "A2", "B2", "G2", "A3", "B3"}) {
    WeylGroup W(parse_cartan_type(name));
    HeckeAlgebra H(W);
    for (int x = 0; x < W.size(); ++x) {
      CHECK(H.bar(H.kl(x)) == H.kl(x));
      for (const auto& [z, h] : H.kl(x).terms())
        if (z != x) CHECK(h.low() >= 1);
    }
  }
}

TEST_CASE("kl expansion round trip") {
  WeylGroup B2(parse_cartan_type("B2"));
  HeckeAlgebra H(B2);
  std::mt19937_64 rng(29);
  for (int it = 0; it < 20; ++it) {
    HeckeElement a(&B2, Convention::standard);
    for (int k = 0; k < 4; ++k) a.add_term(static_cast<int>(rng() % 8), v(static_cast<int>(rng() % 5) - 2));
    HeckeElement back(&B2, Convention::standard);
    for (const auto& [x, c] : H.kl_expand(a)) back += c * H.kl(x);
    CHECK(back == a);
  }
  CHECK(H.ic_e_coefficient(H.kl(0)) == one);
}

TEST_CASE("cells") {
  WeylGroup A1(parse_cartan_type("A1"));
  HeckeAlgebra H1(A1);
  CHECK(H1.cells().size() == 2);

  WeylGroup A2(parse_cartan_type("A2"));
  HeckeAlgebra H2(A2);
  const auto& c2 = H2.cells();
  REQUIRE(c2.size() == 3);
  CHECK(words(A2, c2.cells[0]) == std::vector<std::string>{"e"});
  CHECK(words(A2, c2.cells[1]) == std::vector<std::string>{"1", "2", "12", "21"});
  CHECK(words(A2, c2.cells[2]) == std::vector<std::string>{"121"});
  CHECK(c2.leq[2][1]);
  CHECK(c2.leq[1][0]);
  CHECK_FALSE(c2.leq[0][1]);
  CHECK(c2.left_cells.size() == 4);

  WeylGroup B2(parse_cartan_type("B2"));
  HeckeAlgebra HB(B2);
  REQUIRE(HB.cells().size() == 3);
  CHECK(HB.cells().cells[1].size() == 6);

  for (const char* name : {"A2", "B2", "G2", "A3"}) {
    WeylGroup W(parse_cartan_type(name));
    HeckeAlgebra H(W);
    auto brute = brute_two_sided(H);
    std::set<std::set<int>> expect(brute.begin(), brute.end()), got;
    for (const auto& c : H.cells().cells) got.insert(std::set<int>(c.begin(), c.end()));
    CHECK(got == expect);
    // every two-sided cell is a union of left cells
    for (const auto& lc : H.cells().left_cells) {
      std::set<int> owners;
      for (int x : lc) owners.insert(H.cells().cell_of[static_cast<std::size_t>(x)]);
      CHECK(owners.size() == 1);
    }
    CHECK(H.cells().cells.front() == std::vector<int>{W.identity()});
  }
}

TEST_CASE("full twist scalars on cells") {
  WeylGroup A1(parse_cartan_type("A1"));
  HeckeAlgebra H(A1);
  auto ft = H.full_twist(Convention::standard);
  auto e = H.cell_scalar(ft, 0), s = H.cell_scalar(ft, 1);
  REQUIRE(e);
  REQUIRE(s);
  CHECK(e->sign == 1);
  CHECK(e->exponent == 2);
  CHECK(s->exponent == -2);
  auto fl = H.full_twist(Convention::ly);
  CHECK(H.cell_scalar(fl, 0)->exponent == 0);
  CHECK(H.cell_scalar(fl, 1)->exponent == 4);
  CHECK(H.cell_scalar(H.one(Convention::standard), 1)->exponent == 0);

  WeylGroup A2(parse_cartan_type("A2"));
  HeckeAlgebra H2(A2);
  CHECK_THROWS_AS(H2.cell_scalar(H2.T(1, Convention::standard), 0), NotCentral);

  for (const char* name : {"A2", "A3", "B2", "G2"}) {
    WeylGroup W(parse_cartan_type(name));
    HeckeAlgebra G(W);
    auto z = G.full_twist(Convention::standard);
    for (int c = 0; c < G.cells().size(); ++c) {
      auto sc = G.cell_scalar(z, c);
      REQUIRE(sc);
      CHECK(sc->exponent % 2 == 0);
    }
  }
}

TEST_CASE("tilting class") {
  WeylGroup A1(parse_cartan_type("A1"));
  HeckeAlgebra H(A1);
  CHECK(H.tilting_class() == H.T(1, Convention::standard) + v(1) * H.one(Convention::standard));
  for (const char* name : {"A1", "A2", "B2"}) {
    WeylGroup W(parse_cartan_type(name));
    HeckeAlgebra G(W);
    CHECK(G.tilting_class() == G.kl(W.longest()));
    CHECK(G.ic_e_coefficient(G.tilting_class()).is_zero());
  }
}

TEST_CASE("hecke minimal polynomials") {
  WeylGroup A1(parse_cartan_type("A1"));
  HeckeAlgebra H(A1);
  CHECK(H.minpoly(H.one(Convention::ly)) == lin(one));
  CHECK(H.minpoly(H.T(1, Convention::ly)) == lin(one) * lin(-v(2)));
  CHECK(H.minpoly(H.full_twist(Convention::ly)) == lin(one) * lin(v(4)));
  CHECK(H.minpoly(H.T(1, Convention::standard)) == lin(-v(1)) * lin(v(-1)));
}
