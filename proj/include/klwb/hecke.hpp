#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "klwb/coxeter.hpp"
#include "klwb/linalg.hpp"
#include "klwb/rings.hpp"

namespace klwb {

struct ConventionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotCentral : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// std: (T_s + v)(T_s - v^-1) = 0
// ly:  (T_s - 1)(T_s + v^2) = 0
enum class Convention { standard, ly };
const char* to_string(Convention c);

class HeckeElement {
 public:
  using Terms = std::map<int, LaurentPoly>;

  HeckeElement() = default;
  HeckeElement(const WeylGroup* g, Convention c, Terms t = {});

  const WeylGroup* group() const { return group_; }
  Convention convention() const { return conv_; }
  const Terms& terms() const { return terms_; }
  LaurentPoly coeff(int w) const;
  bool is_zero() const { return terms_.empty(); }
  void add_term(int w, const LaurentPoly& c);

  HeckeElement& operator+=(const HeckeElement& o);
  HeckeElement& operator-=(const HeckeElement& o);
  friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
  friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) { return a -= b; }
  friend HeckeElement operator*(const LaurentPoly& k, const HeckeElement& a);
  friend bool operator==(const HeckeElement& a, const HeckeElement& b) {
    return a.group_ == b.group_ && a.conv_ == b.conv_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const HeckeElement& a, const HeckeElement& b) { return !(a == b); }

  // "[(121, 1 - v^2), (e, v)]"
  std::string str() const;

 private:
  const WeylGroup* group_ = nullptr;
  Convention conv_ = Convention::standard;
  Terms terms_;
  void check(const HeckeElement& o) const;
};

struct CellDecomposition {
  std::vector<std::vector<int>> cells;  // two-sided, listed compatibly with the order (c_e first)
  std::vector<std::vector<char>> leq;   // leq[a][b]: cells[a] <= cells[b]
  std::vector<std::vector<int>> left_cells, right_cells;
  std::vector<int> cell_of;             // element -> index into cells

  int size() const { return static_cast<int>(cells.size()); }
};

struct CellScalar {
  int sign = 1;
  int exponent = 0;
};

class HeckeAlgebra {
 public:
  explicit HeckeAlgebra(const WeylGroup& W);

  const WeylGroup& group() const { return *W_; }
  HeckeElement T(int w, Convention c) const;
  HeckeElement one(Convention c) const { return T(W_->identity(), c); }

  // T_s * a and a * T_s
  HeckeElement lmul_gen(int s, const HeckeElement& a) const;
  HeckeElement rmul_gen(const HeckeElement& a, int s) const;
  HeckeElement mul(const HeckeElement& a, const HeckeElement& b) const;

  HeckeElement convert(const HeckeElement& a, Convention to) const;
  // v -> v^-1, T_w -> T_{w^-1}^-1 (std)
  HeckeElement bar(const HeckeElement& a) const;

  // Kazhdan-Lusztig basis element C_w in the std convention, C_s = T_s + v
  const HeckeElement& kl(int w) const;
  // coefficient of v in the T_z coefficient of C_w
  Integer mu(int z, int w) const;
  // coefficients in the KL basis
  std::map<int, LaurentPoly> kl_expand(const HeckeElement& a) const;
  LaurentPoly ic_e_coefficient(const HeckeElement& a) const { return kl_expand(a)[W_->identity()]; }

  const CellDecomposition& cells() const;
  bool is_central(const HeckeElement& z) const;
  // scalar by which z acts on the subquotient of the cell; throws NotCentral
  std::optional<CellScalar> cell_scalar(const HeckeElement& z, int cell) const;

  // sum_w v^{l(w0) - l(w)} T_w (std); reversed uses v^{l(w) - l(w0)}
  HeckeElement tilting_class(bool reversed = false) const;
  // full twist T_{w0}^2 in the given convention
  HeckeElement full_twist(Convention c) const;

  // minimal polynomial of right multiplication by z on the regular module
  BivarPoly minpoly(const HeckeElement& z) const;

 private:
  const WeylGroup* W_;
  mutable std::vector<HeckeElement> kl_;
  mutable std::vector<HeckeElement> bar_t_;
  mutable std::optional<CellDecomposition> cells_;
  // image of T_w of one convention in the other
  mutable std::vector<HeckeElement> to_ly_, to_std_;
  mutable std::once_flag kl_once_, bar_once_, conv_once_, cells_once_;
  void check(const HeckeElement& a) const;
};

}  // namespace klwb
