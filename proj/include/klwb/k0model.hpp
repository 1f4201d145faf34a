#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "klwb/klalgebra.hpp"
#include "klwb/linalg.hpp"
#include "klwb/rings.hpp"

namespace klwb {

struct GluingViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IdentityFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PreconditionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Column-sparse square matrix over Z[v, v^-1].
struct SparseLMatrix {
  int n = 0;
  std::vector<std::vector<std::pair<int, LaurentPoly>>> cols;

  static SparseLMatrix from_dense(const LMatrix& m);
  LMatrix dense() const;
  // y += A x on the slice [off, off + n)
  void apply_add(const LVector& x, LVector& y, Eigen::Index off) const;
};

// A module over KL(v): block-diagonal action of the generators.
class KModule {
 public:
  // the distinct blocks of the orbit Hecke algebras of A
  explicit KModule(const KLAlgebra& A);
  // explicit blocks: gens[b][s] acts on block b
  KModule(const WeylGroup& W, std::vector<std::vector<LMatrix>> gens);

  const WeylGroup& group() const { return *W_; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  int dim() const { return dim_; }
  int block_dim(int b) const { return blocks_[static_cast<std::size_t>(b)].n; }
  int block_offset(int b) const { return blocks_[static_cast<std::size_t>(b)].offset; }
  const LMatrix& generator(int b, int s) const { return blocks_[static_cast<std::size_t>(b)].dense[static_cast<std::size_t>(s)]; }

  LVector zero() const { return zero_lvector(dim_); }
  LVector gen(int s, const LVector& x) const;
  // Phi_w x via the canonical reduced word of w
  LVector act(int w, const LVector& x) const;
  LVector act_word(const std::vector<int>& word, const LVector& x) const;
  LVector fulltwist(const LVector& x) const;
  // p(F) x
  LVector poly(const BivarPoly& p, const LVector& x) const;
  LMatrix fulltwist_matrix(int b) const;

  // cached row reductions over Q(v)
  const RowReduction& square_minus_one(int b, int s) const;  // Phi_s^2 - 1 on block b
  const RowReduction& free_system(int b) const;              // Theta_b
  const RMatrix& gluing_kernel(int b) const;                 // columns span gluing tuples on block b

  LVector slice(const LVector& x, int b) const { return x.segment(block_offset(b), block_dim(b)); }

 private:
  struct Block {
    int n = 0, offset = 0;
    std::vector<LMatrix> dense;
    std::vector<SparseLMatrix> sparse;
    SparseLMatrix ft;
  };
  const WeylGroup* W_;
  std::vector<Block> blocks_;
  int dim_ = 0;
  std::vector<int> w0_word_;

  struct Cache {
    std::once_flag flag;
    std::unique_ptr<RowReduction> rr;
    RMatrix kernel;
  };
  mutable std::vector<std::unique_ptr<Cache>> sq_, theta_, glue_;
  void init();
};

struct KTuple {
  std::vector<LVector> c;  // indexed by group element
  friend bool operator==(const KTuple& a, const KTuple& b) { return a.c == b.c; }
  friend bool operator!=(const KTuple& a, const KTuple& b) { return !(a == b); }
};

KTuple zero_tuple(const KModule& M);
KTuple scale(const LaurentPoly& k, const KTuple& t);
KTuple add(const KTuple& a, const KTuple& b);
bool is_zero(const KTuple& t);

struct GluingEntry {
  int s = 0, w = 0;
  bool ok = false;
  RVector witness;  // x with (Phi_s^2 - 1) x = a_{sw} - Phi_s a_w
};
struct GluingReport {
  bool ok = true;
  std::vector<GluingEntry> entries;
  const GluingEntry* first_failure() const;
};
GluingReport check_gluing(const KModule& M, const KTuple& t, int threads = 1);

KTuple iota(const KModule& M, const KTuple& t);
// componentwise F
KTuple iota_sq(const KModule& M, const KTuple& t);

// (j_{w!} k)_y = Phi_{y w^-1} k
KTuple make_free(const KModule& M, int w, const LVector& k);

struct CanonicalEntry {
  int y = 0;
  bool ok = false;
  LVector lhs, rhs;
};
std::vector<CanonicalEntry> canonical_identity(const KModule& M, const LVector& k, int threads = 1);

struct SplitCertificate {
  KTuple a0, a1;
  LaurentPoly pv;
  BivarPoly r;
  bool sum_ok = false;          // a0 + a1 = p(v) a
  bool square_fixed = false;    // Phi_s^2 a0_w = a0_w
  bool chain_ok = false;        // (Phi_s^2 - 1) d = (v^4 - 1) d for d = a0_{sw} - Phi_s a0_w
  bool free_ok = false;         // a0_{sw} = Phi_s a0_w
  bool annihilates = false;     // P(F) = 0 on the module
  bool ptilde_kills_a1 = false; // Ptilde(F) a1 = 0
  bool all() const { return sum_ok && square_fixed && chain_ok && free_ok && annihilates && ptilde_kills_a1; }
};
// throws GluingViolation when a fails the gluing condition, IdentityFailure
// when a contract fails although P(F) = 0 holds
SplitCertificate polyconj_split(const KModule& M, const KTuple& a, int m, int threads = 1);
// P(F) = prod_{i<=m} (F - v^{2i}) vanishes on every block
bool annihilated_by_family(const KModule& M, int m);

struct DescentReport {
  BivarPoly g;  // p^r a = g(F) (F - 1) a
  LaurentPoly pr;
  bool verified = false;
};
// throws PreconditionFailure when Ptilde^r(F) a != 0
DescentReport euclid_descent(const KModule& M, const KTuple& a, int r, int m);

struct FreeSpanResult {
  std::vector<std::vector<LocalizedScalar>> coeffs;  // [w][basis index]
  std::vector<RVector> field_coeffs;                 // k_w over Q(v)
  LaurentPoly denominator;                           // lcm of denominators
  bool admissible = false;                           // denominator divides a power of p_m(v)
  int power = -1;                                    // least such power
};
std::optional<FreeSpanResult> express_in_free_span(const KModule& M, const KTuple& a, int m, int threads = 1);

LVector random_vector(const KModule& M, std::mt19937_64& rng, double density = 0.5);
KTuple random_free_sum(const KModule& M, std::mt19937_64& rng, int terms = 3);
// free sum plus random integral elements of the gluing kernel
KTuple random_gluing_tuple(const KModule& M, std::mt19937_64& rng, bool use_kernel = true);
// kernel sampling is skipped above this block dimension
constexpr int kKernelDimLimit = 12;

std::string tuple_str(const KModule& M, const KTuple& t);

}  // namespace klwb
