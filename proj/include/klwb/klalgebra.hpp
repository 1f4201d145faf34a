#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "klwb/charpoints.hpp"
#include "klwb/hecke.hpp"
#include "klwb/linalg.hpp"
#include "klwb/report.hpp"
#include "klwb/rings.hpp"

namespace klwb {

struct OrbitMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class OrbitHeckeAlgebra;

// sum of c * T_w 1_{L_i}, keyed by (point index i, w)
class OrbitHeckeElement {
 public:
  using Key = std::pair<int, int>;
  using Terms = std::map<Key, LaurentPoly>;

  OrbitHeckeElement() = default;
  explicit OrbitHeckeElement(const OrbitHeckeAlgebra* alg) : alg_(alg) {}

  const OrbitHeckeAlgebra* algebra() const { return alg_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  LaurentPoly coeff(int point, int w) const;
  void add_term(int point, int w, const LaurentPoly& c);
  // component x 1_{L_i}
  OrbitHeckeElement block(int point) const;

  OrbitHeckeElement& operator+=(const OrbitHeckeElement& o);
  OrbitHeckeElement& operator-=(const OrbitHeckeElement& o);
  friend OrbitHeckeElement operator+(OrbitHeckeElement a, const OrbitHeckeElement& b) { return a += b; }
  friend OrbitHeckeElement operator-(OrbitHeckeElement a, const OrbitHeckeElement& b) { return a -= b; }
  friend OrbitHeckeElement operator*(const LaurentPoly& k, const OrbitHeckeElement& a);
  friend bool operator==(const OrbitHeckeElement& a, const OrbitHeckeElement& b) {
    return a.alg_ == b.alg_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const OrbitHeckeElement& a, const OrbitHeckeElement& b) { return !(a == b); }

  // "[(1/2,0 | 21, -1), ...]"
  std::string str() const;

 private:
  const OrbitHeckeAlgebra* alg_ = nullptr;
  Terms terms_;
  void check(const OrbitHeckeElement& o) const;
};

// The monodromic Hecke algebra H_o of one W-orbit, ly convention.
class OrbitHeckeAlgebra {
 public:
  OrbitHeckeAlgebra(const WeylGroup& W, OrbitData o);

  const WeylGroup& group() const { return *W_; }
  const OrbitData& orbit() const { return orbit_; }
  int num_points() const { return orbit_.size(); }
  // simple reflection s lies in W_L for the point with index i
  bool in_wl(int s, int point) const { return (masks_[static_cast<std::size_t>(point)] >> s) & 1u; }
  // target idempotent of T_w 1_{L_i}
  int target(int point, int w) const { return orbit_.moved(w, point); }

  OrbitHeckeElement zero() const { return OrbitHeckeElement(this); }
  OrbitHeckeElement idempotent(int point) const { return T(W_->identity(), point); }
  OrbitHeckeElement unit() const;
  OrbitHeckeElement T(int w, int point) const;

  // T_s x and T_s^-1 x
  OrbitHeckeElement t_lmul(int s, const OrbitHeckeElement& x) const;
  OrbitHeckeElement t_lmul_inverse(int s, const OrbitHeckeElement& x) const;
  // pi(a_s) x and pi(a_s)^-1 x
  OrbitHeckeElement gen_lmul(int s, const OrbitHeckeElement& x, bool inverse = false) const;
  OrbitHeckeElement mul(const OrbitHeckeElement& a, const OrbitHeckeElement& b) const;

  OrbitHeckeElement pi_generator(int s) const { return gen_lmul(s, unit()); }
  // signed word: s >= 0 is a_s, ~s is a_s^-1; leftmost letter acts last
  OrbitHeckeElement pi_word(const std::vector<int>& word) const;
  OrbitHeckeElement apply_word(const std::vector<int>& word, OrbitHeckeElement x) const;
  OrbitHeckeElement full_twist() const;

  // matrix of left multiplication by z on H_o 1_{L_i}, basis T_u 1_{L_i}
  LMatrix block_matrix(const OrbitHeckeElement& z, int point) const;
  // which simple reflections lie in W_{uL} for each u; determines the block
  std::vector<unsigned> signature(int point) const;

 private:
  const WeylGroup* W_;
  OrbitData orbit_;
  std::vector<unsigned> masks_;
};

// Element of KL(v) held through its projections on every configured orbit.
struct KLElement {
  std::vector<int> word;  // signed generator word
  std::vector<OrbitHeckeElement> projections;
};

class KLAlgebra {
 public:
  KLAlgebra(const WeylGroup& W, int den, DenominatorMode mode = DenominatorMode::dividing);
  KLAlgebra(const WeylGroup& W, const std::vector<OrbitData>& orbits);
  KLAlgebra(const KLAlgebra&) = delete;
  KLAlgebra& operator=(const KLAlgebra&) = delete;

  const WeylGroup& group() const { return *W_; }
  int num_orbits() const { return static_cast<int>(algs_.size()); }
  const OrbitHeckeAlgebra& orbit_algebra(int k) const { return *algs_[static_cast<std::size_t>(k)]; }

  KLElement element(const std::vector<int>& signed_word) const;
  // a_w through the canonical reduced word
  KLElement a(int w) const { return element(W_->word(w)); }
  KLElement mul(const KLElement& x, const KLElement& y) const;
  bool reevaluates(const KLElement& x) const;
  static bool equal(const KLElement& x, const KLElement& y) { return x.projections == y.projections; }

 private:
  const WeylGroup* W_;
  std::vector<std::unique_ptr<OrbitHeckeAlgebra>> algs_;
};

// a_s a_t a_s ... = a_t a_s a_t ... on every orbit
std::vector<CheckResult> verify_braid(const KLAlgebra& A, int threads = 1);
// (a_s + v^2)(a_s^2 - 1) = 0
std::vector<CheckResult> verify_cubic(const KLAlgebra& A, int threads = 1);
// (a_s^2 - 1)^2 = (v^4 - 1)(a_s^2 - 1)
std::vector<CheckResult> operator_square_identity(const KLAlgebra& A, int threads = 1);
// the three projection properties on random word pairs
std::vector<CheckResult> verify_projection_properties(const KLAlgebra& A, int pairs, unsigned long seed, int threads = 1);

struct W0Comparison {
  int point = 0;
  bool equal = false;
  bool variant_equal = false;  // against v^{2l} T_{w0,L}^-2
  OrbitHeckeElement projected, expected, variant;
};
// projected full twist against T_{w0,L}^2 computed inside W_L, block by block
std::vector<W0Comparison> check_w0_identity(const OrbitHeckeAlgebra& H);
std::vector<CheckResult> verify_w0(const KLAlgebra& A, int threads = 1);

struct FullTwistSpectrum {
  BivarPoly minpoly;
  std::vector<int> eigen_exponents;  // x - v^e factors found, ascending
  bool split = false;                // minpoly is a product of those factors
  bool divides_ell = false;        // divides prod_{i<=l(w0)} (x - v^{2i})
  bool divides_safe = false;         // divides prod_{i<=2 l(w0)} (x - v^{2i})
  int blocks = 0;                    // distinct block signatures used
};
FullTwistSpectrum fulltwist_minpoly(const KLAlgebra& A);
std::vector<CheckResult> verify_minpoly(const KLAlgebra& A, int m);

// per-block matrices of pi(a_s) and the full twist for each distinct signature
struct BlockData {
  std::vector<unsigned> signature;
  std::vector<LMatrix> gens;  // pi(a_s) on H_o 1_L
  LMatrix fulltwist;
  std::string example;        // "orbit rep | point"
};
std::vector<BlockData> distinct_blocks(const KLAlgebra& A);

}  // namespace klwb
