#include <doctest.h>

#include <set>

#include "klwb/coxeter.hpp"

using namespace klwb;

namespace {

// subword criterion by brute force over all subwords of the canonical word
bool bruhat_oracle(const WeylGroup& W, int u, int w) {
  const auto& word = W.word(w);
  const int k = static_cast<int>(word.size());
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    std::vector<int> sub;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) sub.push_back(word[static_cast<std::size_t>(i)]);
    if (W.from_word(sub) == u) return true;
  }
  return false;
}

int count_negative(const WeylGroup& W, int w) {
  int c = 0;
  for (int r = 0; r < W.roots().num_positive(); ++r)
    if (!W.roots().is_positive(W.act(w, r))) ++c;
  return c;
}

}  // namespace

TEST_CASE("group orders and longest lengths") {
  struct Row {
    const char* t;
    int order, npos;
  };
  for (Row r : {Row{"A1", 2, 1}, Row{"A2", 6, 3}, Row{"A3", 24, 6}, Row{"B2", 8, 4}, Row{"C3", 48, 9},
                Row{"D4", 192, 12}, Row{"G2", 12, 6}, Row{"F4", 1152, 24}}) {
    WeylGroup W(parse_cartan_type(r.t));
    CAPTURE(r.t);
    CHECK(W.size() == r.order);
    CHECK(W.roots().num_positive() == r.npos);
    CHECK(W.length(W.longest()) == r.npos);
    CHECK(W.length(W.identity()) == 0);
  }
}

TEST_CASE("cartan matrices") {
  Eigen::MatrixXi a2(2, 2), b2(2, 2), g2(2, 2);
  a2 << 2, -1, -1, 2;
  b2 << 2, -2, -1, 2;
  g2 << 2, -1, -3, 2;
  CHECK(cartan_matrix(parse_cartan_type("A2")) == a2);
  CHECK(cartan_matrix(parse_cartan_type("B2")) == b2);
  CHECK(cartan_matrix(parse_cartan_type("G2")) == g2);
  CHECK(cartan_matrix(parse_cartan_type("C3")) == cartan_matrix(parse_cartan_type("B3")).transpose());
}

TEST_CASE("unsupported types") {
  CHECK_THROWS_AS(WeylGroup(parse_cartan_type("E6")), UnsupportedType);
  CHECK_THROWS_AS(parse_cartan_type("X3"), UnsupportedType);
  CHECK_THROWS_AS(parse_cartan_type("A0"), UnsupportedType);
  CHECK_THROWS_AS(parse_cartan_type("G3"), UnsupportedType);
  CHECK_THROWS_AS(parse_cartan_type("D3"), UnsupportedType);
}

TEST_CASE("words, lengths, multiplication") {
  WeylGroup A2(parse_cartan_type("A2"));
  CHECK(A2.word_string(A2.longest()) == "121");
  CHECK(A2.word_string(A2.identity()) == "e");
  int s = A2.from_word({0}), t = A2.from_word({1});
  CHECK(A2.mul(s, t) == A2.from_word_string("12"));
  CHECK(A2.mul(s, A2.mul(t, s)) == A2.mul(t, A2.mul(s, t)));

  WeylGroup B2(parse_cartan_type("B2"));
  CHECK_THROWS_AS(A2.element(s) * B2.element(1), MixedAmbient);
  CHECK((A2.element(s) * A2.element(s)).index == A2.identity());

  for (const char* name : {"A3", "B2", "G2", "C3"}) {
    WeylGroup W(parse_cartan_type(name));
    for (int w = 0; w < W.size(); ++w) {
      CHECK(W.from_word(W.word(w)) == w);
      CHECK(static_cast<int>(W.word(w).size()) == W.length(w));
      CHECK(count_negative(W, w) == W.length(w));
      CHECK(W.mul(w, W.inverse(w)) == W.identity());
      // lex-minimal among reduced words: first letter is the least left descent
      if (W.length(w) > 0) {
        int first = W.word(w).front();
        for (int r = 0; r < first; ++r) CHECK_FALSE(W.left_descent(r, w));
      }
    }
    // w0 * w has length N - l(w)
    for (int w = 0; w < W.size(); ++w) CHECK(W.length(W.mul(W.longest(), w)) == W.length(W.longest()) - W.length(w));
  }
}

TEST_CASE("w0 acts by -1 exactly when expected") {
  WeylGroup B2(parse_cartan_type("B2")), G2(parse_cartan_type("G2")), A2(parse_cartan_type("A2"));
  for (const WeylGroup* W : {&B2, &G2}) {
    for (int r = 0; r < W->roots().num_roots(); ++r) CHECK(W->act(W->longest(), r) == W->roots().negate(r));
  }
  CHECK(A2.act(A2.longest(), 0) == A2.roots().negate(1));
}

TEST_CASE("bruhat order against subword oracle") {
  for (const char* name : {"A3", "B2", "G2"}) {
    WeylGroup W(parse_cartan_type(name));
    for (int u = 0; u < W.size(); ++u)
      for (int w = 0; w < W.size(); ++w) CHECK(W.bruhat_leq(u, w) == bruhat_oracle(W, u, w));
  }
}

TEST_CASE("minimal coset representatives") {
  WeylGroup A2(parse_cartan_type("A2"));
  auto reps = A2.min_coset_reps(0b01);
  std::vector<std::string> words;
  for (int x : reps) words.push_back(A2.word_string(x));
  CHECK(words == std::vector<std::string>{"e", "2", "21"});
  CHECK(A2.min_coset_reps(0b11) == std::vector<int>{A2.identity()});
  CHECK(static_cast<int>(A2.min_coset_reps(0).size()) == A2.size());

  for (const char* name : {"A3", "B2", "G2"}) {
    WeylGroup W(parse_cartan_type(name));
    for (const auto& P : W.parabolics()) {
      auto xs = W.min_coset_reps(P.mask);
      CHECK(xs.size() * P.order == static_cast<std::size_t>(W.size()));
      // every element factors uniquely as u x with u in W_K, lengths adding
      std::set<int> hit;
      std::vector<int> WK;
      for (int u = 0; u < W.size(); ++u) {
        bool inK = true;
        for (int s : W.word(u))
          if (!(P.mask & (1u << s))) inK = false;
        if (inK) WK.push_back(u);
      }
      CHECK(WK.size() == P.order);
      for (int u : WK)
        for (int x : xs) {
          int ux = W.mul(u, x);
          CHECK(W.length(ux) == W.length(u) + W.length(x));
          hit.insert(ux);
        }
      CHECK(static_cast<int>(hit.size()) == W.size());
    }
  }
}

TEST_CASE("parabolic iteration order") {
  WeylGroup B2(parse_cartan_type("B2"));
  auto ps = B2.parabolics();
  REQUIRE(ps.size() == 4);
  CHECK(ps[0].generators.empty());
  CHECK(ps[1].generators == std::vector<int>{0});
  CHECK(ps[2].generators == std::vector<int>{1});
  CHECK(ps[3].order == 8);
  CHECK(ps[3].longest == B2.longest());
}

TEST_CASE("reflection subgroups") {
  WeylGroup A2(parse_cartan_type("A2"));
  const auto& R = A2.roots();
  Eigen::VectorXi hi(2);
  hi << 1, 1;
  int theta = R.index_of(hi);
  Subsystem sub = A2.reflection_subgroup({theta});
  CHECK(sub.type_label == "A1");
  CHECK(sub.order() == 2);
  CHECK(sub.longest == A2.longest());
  CHECK(sub.intrinsic_length(A2.longest()) == 1);

  Subsystem full = A2.reflection_subgroup({0, 1});
  CHECK(full.type_label == "A2");
  CHECK(full.order() == 6);
  CHECK(full.positive_roots.size() == 3);

  Subsystem none = A2.reflection_subgroup({});
  CHECK(none.order() == 1);
  CHECK(none.type_label == "trivial");

  WeylGroup B2(parse_cartan_type("B2"));
  // long roots of B2: alpha_1 and alpha_1 + 2 alpha_2
  std::vector<int> longs;
  for (int r = 0; r < B2.roots().num_positive(); ++r)
    if (B2.roots().root(r)[1] % 2 == 0) longs.push_back(r);
  Subsystem bl = B2.reflection_subgroup(longs);
  CHECK(bl.order() == 4);
  CHECK(bl.type_label == "A1xA1");

  WeylGroup G2(parse_cartan_type("G2"));
  std::vector<int> glong;
  for (int r = 0; r < G2.roots().num_positive(); ++r)
    if (G2.roots().root(r)[1] >= 1 && (G2.roots().root(r)[0] % 3) == 0) glong.push_back(r);
  Subsystem gl = G2.reflection_subgroup(glong);
  CHECK(gl.type_label == "A2");
  CHECK(gl.order() == 6);

  // intrinsic length equals number of subsystem positive roots made negative
  for (const Subsystem* S : {&sub, &full, &bl}) {
    const WeylGroup& W = S == &bl ? B2 : A2;
    for (int u = 0; u < static_cast<int>(S->order()); ++u) {
      int w = S->embed[static_cast<std::size_t>(u)];
      int c = 0;
      for (int r : S->positive_roots)
        if (!W.roots().is_positive(W.act(w, r))) ++c;
      CHECK(c == S->intrinsic_length(w));
    }
  }
}

TEST_CASE("classification labels") {
  for (const char* name : {"A3", "B3", "C3", "D4", "F4", "G2", "B2"}) {
    CHECK(classify_cartan(cartan_matrix(parse_cartan_type(name))) == name);
  }
}
