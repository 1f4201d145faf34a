#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "klwb/rings.hpp"

namespace klwb {

using LMatrix = Eigen::Matrix<LaurentPoly, Eigen::Dynamic, Eigen::Dynamic>;
using LVector = Eigen::Matrix<LaurentPoly, Eigen::Dynamic, 1>;
using RMatrix = Eigen::Matrix<RationalFunction, Eigen::Dynamic, Eigen::Dynamic>;
using RVector = Eigen::Matrix<RationalFunction, Eigen::Dynamic, 1>;

RMatrix to_rational(const LMatrix& m);
RVector to_rational(const LVector& v);
LMatrix zero_lmatrix(Eigen::Index rows, Eigen::Index cols);
LVector zero_lvector(Eigen::Index n);
LMatrix identity_lmatrix(Eigen::Index n);

// plain loops; Eigen's product kernels are not tuned for these scalars
LMatrix mul(const LMatrix& a, const LMatrix& b);
LVector mul(const LMatrix& a, const LVector& x);
RVector mul(const RMatrix& a, const RVector& x);
bool is_zero(const LVector& x);
bool is_zero(const RVector& x);

// Clears denominators: returns (d, y) with y = d * x integral, d = lcm of denominators.
std::pair<LaurentPoly, LVector> clear_denominators(const RVector& x);

// Reduced row echelon form over Q(v), keeping the row transform so that
// further right-hand sides can be solved without redoing the elimination.
class RowReduction {
 public:
  explicit RowReduction(const RMatrix& a);

  Eigen::Index rows() const { return r_.rows(); }
  Eigen::Index cols() const { return r_.cols(); }
  int rank() const { return static_cast<int>(pivots_.size()); }
  const std::vector<int>& pivots() const { return pivots_; }
  const RMatrix& reduced() const { return r_; }

  // a particular solution of A x = b with free variables set to zero
  std::optional<RVector> solve(const RVector& b) const;
  // same, fraction-free for integral right-hand sides
  std::optional<RVector> solve(const LVector& b) const;
  // basis of ker A as columns
  RMatrix nullspace() const;

 private:
  RMatrix r_, e_;
  LMatrix e_num_;  // row i of e_ is e_num_.row(i) / e_den_[i]
  std::vector<LaurentPoly> e_den_;
  std::vector<int> pivots_;
};

// Minimal polynomial over Q(v) of a matrix with Laurent entries, or of the
// block-diagonal sum of several. Monic with Laurent coefficients.
BivarPoly minimal_polynomial(const LMatrix& m);
BivarPoly minimal_polynomial(const std::vector<LMatrix>& blocks);
// p(M) for a polynomial in x
LMatrix evaluate(const BivarPoly& p, const LMatrix& m);

}  // namespace klwb
