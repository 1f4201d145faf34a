#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "klwb/coxeter.hpp"
#include "klwb/rings.hpp"

namespace klwb {

// Torsion point of (Q/Z)^rank in fundamental-weight coordinates,
// stored as numerators over a common denominator.
class CharacterPoint {
 public:
  CharacterPoint() = default;
  // entries reduced mod 1; denominator shrunk to the least common one
  CharacterPoint(std::vector<long> num, long den);
  static CharacterPoint zero(int rank) { return CharacterPoint(std::vector<long>(static_cast<std::size_t>(rank), 0), 1); }
  // "1/2,0"
  static CharacterPoint parse(const std::string& s);

  int rank() const { return static_cast<int>(num_.size()); }
  long denominator() const { return den_; }
  const std::vector<long>& numerators() const { return num_; }
  Rational coord(int i) const { return Rational(num_[static_cast<std::size_t>(i)], den_); }
  bool is_zero() const;
  std::string str() const;

  friend bool operator==(const CharacterPoint& a, const CharacterPoint& b) {
    return a.den_ == b.den_ && a.num_ == b.num_;
  }
  friend bool operator!=(const CharacterPoint& a, const CharacterPoint& b) { return !(a == b); }
  // lexicographic on coordinates as rationals
  friend bool operator<(const CharacterPoint& a, const CharacterPoint& b);

 private:
  std::vector<long> num_;
  long den_ = 1;
};

// sum_i c_i lambda_i mod 1, in [0, 1)
Rational pairing(const CharacterPoint& lam, const Eigen::VectorXi& coroot);
// pairing with the coroot of root r of W
Rational pairing(const WeylGroup& W, const CharacterPoint& lam, int root);

CharacterPoint simple_act(const WeylGroup& W, int s, const CharacterPoint& lam);
CharacterPoint act(const WeylGroup& W, int w, const CharacterPoint& lam);

// positive roots with integral pairing
std::vector<int> kernel_roots(const WeylGroup& W, const CharacterPoint& lam);
Subsystem wl_subsystem(const WeylGroup& W, const CharacterPoint& lam);

struct OrbitData {
  const WeylGroup* group = nullptr;
  std::vector<CharacterPoint> points;  // points[0] is the representative (least point)
  std::size_t stabilizer_order = 0;    // in W
  std::vector<std::shared_ptr<const Subsystem>> subsystems;  // W_L per point
  std::vector<int> move;               // move[w * size + i] = index of w L_i

  const CharacterPoint& representative() const { return points.front(); }
  int size() const { return static_cast<int>(points.size()); }
  int index_of(const CharacterPoint& p) const;  // -1 if absent
  int moved(int w, int i) const { return move[static_cast<std::size_t>(w) * points.size() + static_cast<std::size_t>(i)]; }
  const Subsystem& subsystem(int i) const { return *subsystems[static_cast<std::size_t>(i)]; }
  int w0L(int i) const { return subsystem(i).longest; }
  // simple reflections whose root lies in W_L of point i
  unsigned simple_mask(int i) const;
};

OrbitData orbit(const WeylGroup& W, const CharacterPoint& lam);

enum class DenominatorMode { dividing, at_most };

// All orbits of points with denominator dividing (or at most) nmax, ordered by
// (denominator of representative, representative).
std::vector<OrbitData> orbit_set(const WeylGroup& W, int nmax, DenominatorMode mode = DenominatorMode::dividing);

enum class SignConvention { negative_v2, positive_v2 };
const char* to_string(SignConvention c);

// sum over W_L of t^{intrinsic length}, t = -v^2 or +v^2
LaurentPoly poincare_q(const Subsystem& sub, SignConvention c);
LaurentPoly poincare_q(const WeylGroup& W, const CharacterPoint& lam, SignConvention c);

struct ChevalleyFactor {
  LaurentPoly factor;  // divides v^{2i} - 1
  int i = 0;
};

struct ChevalleyReport {
  bool success = false;
  std::vector<ChevalleyFactor> factors;
  LaurentPoly unit;      // +-v^k left over on success
  LaurentPoly residual;  // part not accounted for on failure
  std::string str() const;
};

ChevalleyReport chevalley_divisibility(const LaurentPoly& q, int m);

}  // namespace klwb
