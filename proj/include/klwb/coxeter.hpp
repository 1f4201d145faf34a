#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

namespace klwb {

struct UnsupportedType : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct MixedAmbient : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kDefaultOrderCap = 1152;

struct CartanType {
  char family = 'A';
  int rank = 1;
  std::string name() const { return std::string(1, family) + std::to_string(rank); }
};

CartanType parse_cartan_type(const std::string& s);
// C(i,j) = <alpha_i, alpha_j^vee>
Eigen::MatrixXi cartan_matrix(const CartanType& t);
std::size_t weyl_order(const CartanType& t);

// Roots in simple-root coordinates, coroots in simple-coroot coordinates.
// Indices 0..N-1 are positive (sorted by height), N..2N-1 their negatives.
class RootSystem {
 public:
  explicit RootSystem(Eigen::MatrixXi cartan);

  int rank() const { return static_cast<int>(cartan_.rows()); }
  int num_positive() const { return npos_; }
  int num_roots() const { return 2 * npos_; }
  const Eigen::MatrixXi& cartan() const { return cartan_; }
  const Eigen::VectorXi& root(int r) const { return roots_[static_cast<std::size_t>(r)]; }
  const Eigen::VectorXi& coroot(int r) const { return coroots_[static_cast<std::size_t>(r)]; }
  bool is_positive(int r) const { return r < npos_; }
  int negate(int r) const { return r < npos_ ? r + npos_ : r - npos_; }
  int positive_of(int r) const { return r < npos_ ? r : r - npos_; }
  int index_of(const Eigen::VectorXi& root) const;  // -1 if absent
  // <root a, coroot of b>
  int pairing(int a, int b) const;
  // s_b(a)
  int reflect(int b, int a) const { return reflect_[static_cast<std::size_t>(b * num_roots() + a)]; }

 private:
  Eigen::MatrixXi cartan_;
  int npos_ = 0;
  std::vector<Eigen::VectorXi> roots_, coroots_;
  std::vector<int> reflect_;
  std::unordered_map<std::string, int> index_;
};

struct Parabolic {
  unsigned mask = 0;
  std::vector<int> generators;
  std::size_t order = 1;
  int longest = 0;
};

class WeylGroup;
struct WeylElement;

// Reflection subgroup generated by a set of ambient roots.
struct Subsystem {
  std::vector<int> positive_roots;  // ambient positive root indices
  std::vector<int> simple_roots;    // ambient positive root indices
  Eigen::MatrixXi cartan;           // intrinsic
  std::string type_label;
  std::shared_ptr<const WeylGroup> intrinsic;
  std::vector<int> embed;           // intrinsic element -> ambient element
  std::unordered_map<int, int> lift;  // ambient element -> intrinsic element
  int longest = 0;                  // ambient index of w_{0,L}
  bool closure_added = false;       // input was not closed

  bool contains(int w) const { return lift.count(w) > 0; }
  std::size_t order() const { return embed.size(); }
  int intrinsic_length(int w) const;
  bool has_root(int positive_root) const;
};

class WeylGroup {
 public:
  explicit WeylGroup(const CartanType& t, std::size_t cap = kDefaultOrderCap);
  WeylGroup(const Eigen::MatrixXi& cartan, std::string label, std::size_t cap = kDefaultOrderCap);

  const std::string& label() const { return label_; }
  const RootSystem& roots() const { return roots_; }
  int rank() const { return roots_.rank(); }
  int size() const { return static_cast<int>(len_.size()); }
  int identity() const { return 0; }
  int longest() const { return size() - 1; }
  int length(int w) const { return len_[static_cast<std::size_t>(w)]; }
  const std::vector<int>& word(int w) const { return words_[static_cast<std::size_t>(w)]; }
  std::string word_string(int w) const;
  int from_word(const std::vector<int>& word) const;
  int from_word_string(const std::string& s) const;

  int lmul(int s, int w) const { return lmul_[static_cast<std::size_t>(w * rank() + s)]; }
  int rmul(int w, int s) const { return rmul_[static_cast<std::size_t>(w * rank() + s)]; }
  int mul(int a, int b) const;
  int inverse(int w) const { return inv_[static_cast<std::size_t>(w)]; }
  bool left_descent(int s, int w) const { return length(lmul(s, w)) < length(w); }
  bool right_descent(int w, int s) const { return length(rmul(w, s)) < length(w); }
  unsigned left_descents(int w) const;
  // image of root r under w
  int act(int w, int r) const { return perm_[static_cast<std::size_t>(w * roots_.num_roots() + r)]; }
  int reflection(int root) const;  // element s_root

  bool bruhat_leq(int u, int w) const;
  // minimal length representatives of W_K \ W, sorted by (length, word)
  std::vector<int> min_coset_reps(unsigned K) const;
  // all subsets J of S ordered by (size, lex)
  std::vector<Parabolic> parabolics() const;
  Subsystem reflection_subgroup(const std::vector<int>& roots) const;
  WeylElement element(int w) const;

 private:
  void build(std::size_t cap);
  int lookup(const std::vector<std::uint16_t>& perm) const;

  std::string label_;
  RootSystem roots_;
  std::vector<int> len_, lmul_, rmul_, inv_, perm_;
  std::vector<std::vector<int>> words_;
  std::unordered_map<std::string, int> index_;
};

// Group element bound to its ambient group.
struct WeylElement {
  const WeylGroup* group = nullptr;
  int index = 0;

  int length() const;
  std::string word() const;
  WeylElement inverse() const;
  friend WeylElement operator*(const WeylElement& a, const WeylElement& b);
  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return a.group == b.group && a.index == b.index;
  }
};

// Coxeter type label of a (possibly reducible) Cartan matrix, e.g. "A1xA1"
std::string classify_cartan(const Eigen::MatrixXi& cartan);

}  // namespace klwb
