#include "klwb/coxeter.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace klwb {

namespace {

std::string key_of(const Eigen::VectorXi& v) {
  std::string k;
  for (int i = 0; i < v.size(); ++i) k += std::to_string(v[i]) + ",";
  return k;
}

std::string key_of(const std::vector<std::uint16_t>& p) {
  return std::string(reinterpret_cast<const char*>(p.data()), p.size() * sizeof(std::uint16_t));
}

Eigen::MatrixXi gram_matrix(const CartanType& t) {
  const int n = t.rank;
  Eigen::MatrixXi g = Eigen::MatrixXi::Zero(n, n);
  auto edge = [&](int i, int j, int x) { g(i, j) = g(j, i) = x; };
  switch (t.family) {
    case 'A':
      for (int i = 0; i < n; ++i) g(i, i) = 2;
      for (int i = 0; i + 1 < n; ++i) edge(i, i + 1, -1);
      break;
    case 'B':
      for (int i = 0; i < n; ++i) g(i, i) = i + 1 < n ? 4 : 2;
      for (int i = 0; i + 1 < n; ++i) edge(i, i + 1, -2);
      break;
    case 'C':
      for (int i = 0; i < n; ++i) g(i, i) = i + 1 < n ? 2 : 4;
      for (int i = 0; i + 1 < n; ++i) edge(i, i + 1, i + 2 < n ? -1 : -2);
      break;
    case 'D':
      for (int i = 0; i < n; ++i) g(i, i) = 2;
      for (int i = 0; i + 2 < n; ++i) edge(i, i + 1, -1);
      edge(n - 3, n - 1, -1);
      break;
    case 'E':
      for (int i = 0; i < n; ++i) g(i, i) = 2;
      edge(0, 2, -1);
      edge(1, 3, -1);
      for (int i = 2; i + 1 < n; ++i) edge(i, i + 1, -1);
      break;
    case 'F':
      g(0, 0) = g(1, 1) = 4;
      g(2, 2) = g(3, 3) = 2;
      edge(0, 1, -2);
      edge(1, 2, -2);
      edge(2, 3, -1);
      break;
    case 'G':
      g(0, 0) = 2;
      g(1, 1) = 6;
      edge(0, 1, -3);
      break;
    default:
      throw UnsupportedType("unknown family");
  }
  return g;
}

std::size_t factorial(int n) {
  std::size_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::size_t>(i);
  return r;
}

}  // namespace

CartanType parse_cartan_type(const std::string& s) {
  if (s.size() < 2) throw UnsupportedType("bad Cartan type '" + s + "'");
  CartanType t;
  t.family = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  try {
    std::size_t pos = 0;
    t.rank = std::stoi(s.substr(1), &pos);
    if (pos != s.size() - 1) throw UnsupportedType("bad Cartan type '" + s + "'");
  } catch (const std::logic_error&) {
    throw UnsupportedType("bad Cartan type '" + s + "'");
  }
  bool ok = false;
  switch (t.family) {
    case 'A': ok = t.rank >= 1; break;
    case 'B': ok = t.rank >= 2; break;
    case 'C': ok = t.rank >= 2; break;
    case 'D': ok = t.rank >= 4; break;
    case 'E': ok = t.rank >= 6 && t.rank <= 8; break;
    case 'F': ok = t.rank == 4; break;
    case 'G': ok = t.rank == 2; break;
    default: ok = false;
  }
  if (!ok) throw UnsupportedType("unsupported Cartan type '" + s + "'");
  return t;
}

Eigen::MatrixXi cartan_matrix(const CartanType& t) {
  Eigen::MatrixXi g = gram_matrix(t);
  Eigen::MatrixXi c(t.rank, t.rank);
  for (int i = 0; i < t.rank; ++i)
    for (int j = 0; j < t.rank; ++j) c(i, j) = 2 * g(i, j) / g(j, j);
  return c;
}

std::size_t weyl_order(const CartanType& t) {
  switch (t.family) {
    case 'A': return factorial(t.rank + 1);
    case 'B':
    case 'C': return (std::size_t{1} << t.rank) * factorial(t.rank);
    case 'D': return (std::size_t{1} << (t.rank - 1)) * factorial(t.rank);
    case 'E': return t.rank == 6 ? 51840 : t.rank == 7 ? 2903040 : 696729600;
    case 'F': return 1152;
    case 'G': return 12;
  }
  throw UnsupportedType("unknown family");
}

// ------------------------------------------------------------------ roots

RootSystem::RootSystem(Eigen::MatrixXi cartan) : cartan_(std::move(cartan)) {
  const int n = rank();
  std::vector<Eigen::VectorXi> pos, copos;
  std::unordered_map<std::string, int> seen;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXi e = Eigen::VectorXi::Unit(n, i);
    seen[key_of(e)] = static_cast<int>(pos.size());
    pos.push_back(e);
    copos.push_back(e);
  }
  for (std::size_t k = 0; k < pos.size(); ++k) {
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXi b = pos[k], bc = copos[k];
      int c = b.dot(cartan_.col(j));
      b[j] -= c;
      if ((b.array() < 0).any() || b.sum() == 0) continue;
      std::string key = key_of(b);
      if (seen.count(key)) continue;
      int cc = cartan_.row(j).dot(bc);
      bc[j] -= cc;
      seen[key] = static_cast<int>(pos.size());
      pos.push_back(b);
      copos.push_back(bc);
    }
  }
  std::vector<int> order(pos.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int ha = pos[static_cast<std::size_t>(a)].sum(), hb = pos[static_cast<std::size_t>(b)].sum();
    if (ha != hb) return ha < hb;
    const auto& x = pos[static_cast<std::size_t>(a)];
    const auto& y = pos[static_cast<std::size_t>(b)];
    return std::lexicographical_compare(y.data(), y.data() + y.size(), x.data(), x.data() + x.size());
  });
  npos_ = static_cast<int>(pos.size());
  for (int i : order) {
    roots_.push_back(pos[static_cast<std::size_t>(i)]);
    coroots_.push_back(copos[static_cast<std::size_t>(i)]);
  }
  for (int i = 0; i < npos_; ++i) {
    roots_.push_back(-roots_[static_cast<std::size_t>(i)]);
    coroots_.push_back(-coroots_[static_cast<std::size_t>(i)]);
  }
  for (int r = 0; r < num_roots(); ++r) index_[key_of(roots_[static_cast<std::size_t>(r)])] = r;
  const int R = num_roots();
  reflect_.assign(static_cast<std::size_t>(R * R), -1);
  for (int b = 0; b < R; ++b)
    for (int a = 0; a < R; ++a) {
      Eigen::VectorXi img = root(a) - pairing(a, b) * root(b);
      reflect_[static_cast<std::size_t>(b * R + a)] = index_of(img);
    }
}

int RootSystem::index_of(const Eigen::VectorXi& r) const {
  auto it = index_.find(key_of(r));
  return it == index_.end() ? -1 : it->second;
}

int RootSystem::pairing(int a, int b) const { return root(a).dot(cartan_ * coroot(b)); }

// ------------------------------------------------------------------ group

WeylGroup::WeylGroup(const CartanType& t, std::size_t cap) : label_(t.name()), roots_(cartan_matrix(t)) {
  if (weyl_order(t) > cap)
    throw UnsupportedType("group order of " + t.name() + " exceeds cap " + std::to_string(cap));
  build(cap);
}

WeylGroup::WeylGroup(const Eigen::MatrixXi& cartan, std::string label, std::size_t cap)
    : label_(std::move(label)), roots_(cartan) {
  build(cap);
}

void WeylGroup::build(std::size_t cap) {
  const int n = rank();
  const int R = roots_.num_roots();
  using Perm = std::vector<std::uint16_t>;
  std::vector<Perm> simple(static_cast<std::size_t>(n), Perm(static_cast<std::size_t>(R)));
  for (int s = 0; s < n; ++s)
    for (int r = 0; r < R; ++r) simple[static_cast<std::size_t>(s)][static_cast<std::size_t>(r)] = static_cast<std::uint16_t>(roots_.reflect(s, r));

  std::vector<Perm> elems;
  std::unordered_map<std::string, int> idx;
  Perm id(static_cast<std::size_t>(R));
  std::iota(id.begin(), id.end(), 0);
  elems.push_back(id);
  idx[key_of(id)] = 0;
  std::vector<int> lm;
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (int s = 0; s < n; ++s) {
      Perm p(static_cast<std::size_t>(R));
      for (int r = 0; r < R; ++r) p[static_cast<std::size_t>(r)] = simple[static_cast<std::size_t>(s)][elems[k][static_cast<std::size_t>(r)]];
      auto [it, fresh] = idx.emplace(key_of(p), static_cast<int>(elems.size()));
      if (fresh) {
        if (elems.size() >= cap) throw UnsupportedType("group order exceeds cap " + std::to_string(cap));
        elems.push_back(std::move(p));
      }
      lm.push_back(it->second);
    }
  }
  const int N = static_cast<int>(elems.size());
  std::vector<int> len(static_cast<std::size_t>(N));
  for (int w = 0; w < N; ++w) {
    int c = 0;
    for (int r = 0; r < roots_.num_positive(); ++r)
      if (!roots_.is_positive(elems[static_cast<std::size_t>(w)][static_cast<std::size_t>(r)])) ++c;
    len[static_cast<std::size_t>(w)] = c;
  }
  // BFS order is by nondecreasing length, so words can be filled in order
  std::vector<std::vector<int>> words(static_cast<std::size_t>(N));
  for (int w = 1; w < N; ++w) {
    for (int s = 0; s < n; ++s) {
      int sw = lm[static_cast<std::size_t>(w * n + s)];
      if (len[static_cast<std::size_t>(sw)] < len[static_cast<std::size_t>(w)]) {
        words[static_cast<std::size_t>(w)].push_back(s);
        const auto& tail = words[static_cast<std::size_t>(sw)];
        words[static_cast<std::size_t>(w)].insert(words[static_cast<std::size_t>(w)].end(), tail.begin(), tail.end());
        break;
      }
    }
  }
  std::vector<int> order(static_cast<std::size_t>(N));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (len[static_cast<std::size_t>(a)] != len[static_cast<std::size_t>(b)]) return len[static_cast<std::size_t>(a)] < len[static_cast<std::size_t>(b)];
    return words[static_cast<std::size_t>(a)] < words[static_cast<std::size_t>(b)];
  });
  std::vector<int> rank_of(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) rank_of[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

  len_.resize(static_cast<std::size_t>(N));
  words_.resize(static_cast<std::size_t>(N));
  lmul_.resize(static_cast<std::size_t>(N * n));
  perm_.resize(static_cast<std::size_t>(N * R));
  for (int i = 0; i < N; ++i) {
    int old = order[static_cast<std::size_t>(i)];
    len_[static_cast<std::size_t>(i)] = len[static_cast<std::size_t>(old)];
    words_[static_cast<std::size_t>(i)] = words[static_cast<std::size_t>(old)];
    for (int s = 0; s < n; ++s) lmul_[static_cast<std::size_t>(i * n + s)] = rank_of[static_cast<std::size_t>(lm[static_cast<std::size_t>(old * n + s)])];
    for (int r = 0; r < R; ++r) perm_[static_cast<std::size_t>(i * R + r)] = elems[static_cast<std::size_t>(old)][static_cast<std::size_t>(r)];
    index_[key_of(elems[static_cast<std::size_t>(old)])] = i;
  }
  rmul_.resize(static_cast<std::size_t>(N * n));
  inv_.resize(static_cast<std::size_t>(N));
  Perm p(static_cast<std::size_t>(R));
  for (int w = 0; w < N; ++w) {
    for (int s = 0; s < n; ++s) {
      for (int r = 0; r < R; ++r) p[static_cast<std::size_t>(r)] = static_cast<std::uint16_t>(act(w, roots_.reflect(s, r)));
      rmul_[static_cast<std::size_t>(w * n + s)] = lookup(p);
    }
    for (int r = 0; r < R; ++r) p[static_cast<std::size_t>(act(w, r))] = static_cast<std::uint16_t>(r);
    inv_[static_cast<std::size_t>(w)] = lookup(p);
  }
}

int WeylGroup::lookup(const std::vector<std::uint16_t>& perm) const {
  auto it = index_.find(key_of(perm));
  if (it == index_.end()) throw std::logic_error("permutation is not a group element");
  return it->second;
}

std::string WeylGroup::word_string(int w) const {
  if (length(w) == 0) return "e";
  std::string s;
  for (int i : word(w)) s += std::to_string(i + 1);
  return s;
}

int WeylGroup::from_word(const std::vector<int>& word) const {
  int w = identity();
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it < 0 || *it >= rank()) throw std::out_of_range("simple reflection index out of range");
    w = lmul(*it, w);
  }
  return w;
}

int WeylGroup::from_word_string(const std::string& s) const {
  if (s == "e" || s.empty()) return identity();
  std::vector<int> word;
  for (char c : s) {
    if (c < '1' || c > '9') throw std::invalid_argument("bad word '" + s + "'");
    word.push_back(c - '1');
  }
  return from_word(word);
}

int WeylGroup::mul(int a, int b) const {
  const auto& w = word(a);
  for (auto it = w.rbegin(); it != w.rend(); ++it) b = lmul(*it, b);
  return b;
}

unsigned WeylGroup::left_descents(int w) const {
  unsigned m = 0;
  for (int s = 0; s < rank(); ++s)
    if (left_descent(s, w)) m |= 1u << s;
  return m;
}

int WeylGroup::reflection(int root) const {
  const int R = roots_.num_roots();
  std::vector<std::uint16_t> p(static_cast<std::size_t>(R));
  for (int r = 0; r < R; ++r) p[static_cast<std::size_t>(r)] = static_cast<std::uint16_t>(roots_.reflect(root, r));
  return lookup(p);
}

bool WeylGroup::bruhat_leq(int u, int w) const {
  for (;;) {
    if (u == w) return true;
    if (length(u) >= length(w)) return false;
    int s = word(w).front();
    if (left_descent(s, u)) u = lmul(s, u);
    w = lmul(s, w);
  }
}

std::vector<int> WeylGroup::min_coset_reps(unsigned K) const {
  std::vector<int> r;
  for (int x = 0; x < size(); ++x)
    if ((left_descents(x) & K) == 0) r.push_back(x);
  return r;
}

std::vector<Parabolic> WeylGroup::parabolics() const {
  std::vector<Parabolic> out;
  const unsigned full = (1u << rank()) - 1u;
  for (unsigned mask = 0; mask <= full; ++mask) {
    Parabolic p;
    p.mask = mask;
    for (int s = 0; s < rank(); ++s)
      if (mask & (1u << s)) p.generators.push_back(s);
    std::vector<char> seen(static_cast<std::size_t>(size()), 0);
    std::deque<int> q{identity()};
    seen[0] = 1;
    int best = identity();
    std::size_t count = 0;
    while (!q.empty()) {
      int w = q.front();
      q.pop_front();
      ++count;
      if (length(w) > length(best)) best = w;
      for (int s : p.generators) {
        int sw = lmul(s, w);
        if (!seen[static_cast<std::size_t>(sw)]) {
          seen[static_cast<std::size_t>(sw)] = 1;
          q.push_back(sw);
        }
      }
    }
    p.order = count;
    p.longest = best;
    out.push_back(std::move(p));
  }
  std::stable_sort(out.begin(), out.end(), [](const Parabolic& a, const Parabolic& b) {
    if (a.generators.size() != b.generators.size()) return a.generators.size() < b.generators.size();
    return a.generators < b.generators;
  });
  return out;
}

Subsystem WeylGroup::reflection_subgroup(const std::vector<int>& input) const {
  const RootSystem& rs = roots_;
  std::vector<char> in(static_cast<std::size_t>(rs.num_positive()), 0);
  std::vector<int> pos;
  for (int r : input) {
    if (r < 0 || r >= rs.num_roots()) throw std::out_of_range("root index out of range");
    int p = rs.positive_of(r);
    if (!in[static_cast<std::size_t>(p)]) {
      in[static_cast<std::size_t>(p)] = 1;
      pos.push_back(p);
    }
  }
  const std::size_t given = pos.size();
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      for (auto [b, a] : {std::pair{pos[i], pos[j]}, std::pair{pos[j], pos[i]}}) {
        int img = rs.positive_of(rs.reflect(b, a));
        if (!in[static_cast<std::size_t>(img)]) {
          in[static_cast<std::size_t>(img)] = 1;
          pos.push_back(img);
        }
      }
    }
  std::sort(pos.begin(), pos.end());
  Subsystem sub;
  sub.positive_roots = pos;
  sub.closure_added = pos.size() != given;
  for (int a : pos) {
    bool decomposable = false;
    for (int b : pos) {
      int c = rs.index_of(rs.root(a) - rs.root(b));
      if (c >= 0 && rs.is_positive(c) && in[static_cast<std::size_t>(c)]) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) sub.simple_roots.push_back(a);
  }
  const int k = static_cast<int>(sub.simple_roots.size());
  sub.cartan.resize(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) sub.cartan(i, j) = rs.pairing(sub.simple_roots[static_cast<std::size_t>(i)], sub.simple_roots[static_cast<std::size_t>(j)]);
  sub.type_label = classify_cartan(sub.cartan);
  auto intr = std::make_shared<WeylGroup>(sub.cartan, sub.type_label, static_cast<std::size_t>(size()));
  std::vector<int> gens;
  for (int b : sub.simple_roots) gens.push_back(reflection(b));
  sub.embed.resize(static_cast<std::size_t>(intr->size()));
  sub.embed[0] = identity();
  for (int u = 1; u < intr->size(); ++u) {
    int s = intr->word(u).front();
    sub.embed[static_cast<std::size_t>(u)] = mul(gens[static_cast<std::size_t>(s)], sub.embed[static_cast<std::size_t>(intr->lmul(s, u))]);
  }
  for (int u = 0; u < intr->size(); ++u) sub.lift[sub.embed[static_cast<std::size_t>(u)]] = u;
  if (static_cast<int>(sub.lift.size()) != intr->size()) throw std::logic_error("subsystem embedding is not injective");
  sub.longest = sub.embed.back();
  sub.intrinsic = std::move(intr);
  return sub;
}

int Subsystem::intrinsic_length(int w) const {
  auto it = lift.find(w);
  if (it == lift.end()) throw std::out_of_range("element not in subsystem");
  return intrinsic->length(it->second);
}

bool Subsystem::has_root(int r) const { return std::binary_search(positive_roots.begin(), positive_roots.end(), r); }

WeylElement WeylGroup::element(int w) const { return WeylElement{this, w}; }

int WeylElement::length() const { return group->length(index); }
std::string WeylElement::word() const { return group->word_string(index); }
WeylElement WeylElement::inverse() const { return WeylElement{group, group->inverse(index)}; }

WeylElement operator*(const WeylElement& a, const WeylElement& b) {
  if (a.group != b.group) throw MixedAmbient("elements of different Weyl groups");
  return WeylElement{a.group, a.group->mul(a.index, b.index)};
}

// ------------------------------------------------------------ classification

std::string classify_cartan(const Eigen::MatrixXi& c) {
  const int n = static_cast<int>(c.rows());
  if (n == 0) return "trivial";
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> comps;
  for (int i = 0; i < n; ++i) {
    if (comp[static_cast<std::size_t>(i)] >= 0) continue;
    comps.emplace_back();
    std::deque<int> q{i};
    comp[static_cast<std::size_t>(i)] = static_cast<int>(comps.size()) - 1;
    while (!q.empty()) {
      int a = q.front();
      q.pop_front();
      comps.back().push_back(a);
      for (int b = 0; b < n; ++b)
        if (b != a && c(a, b) != 0 && comp[static_cast<std::size_t>(b)] < 0) {
          comp[static_cast<std::size_t>(b)] = comp[static_cast<std::size_t>(i)];
          q.push_back(b);
        }
    }
  }
  std::vector<std::string> labels;
  for (auto& nodes : comps) {
    const int k = static_cast<int>(nodes.size());
    int maxmult = 0;
    std::vector<int> deg(static_cast<std::size_t>(k), 0);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        if (a == b) continue;
        int m = c(nodes[static_cast<std::size_t>(a)], nodes[static_cast<std::size_t>(b)]) * c(nodes[static_cast<std::size_t>(b)], nodes[static_cast<std::size_t>(a)]);
        if (m) ++deg[static_cast<std::size_t>(a)];
        maxmult = std::max(maxmult, m);
      }
    std::string lab;
    if (k == 1) {
      lab = "A1";
    } else if (maxmult == 3) {
      lab = "G2";
    } else if (maxmult == 2) {
      // relative squared lengths by propagation along edges
      std::vector<double> len(static_cast<std::size_t>(k), 0.0);
      len[0] = 1.0;
      bool again = true;
      while (again) {
        again = false;
        for (int a = 0; a < k; ++a)
          for (int b = 0; b < k; ++b) {
            int x = c(nodes[static_cast<std::size_t>(a)], nodes[static_cast<std::size_t>(b)]);
            int y = c(nodes[static_cast<std::size_t>(b)], nodes[static_cast<std::size_t>(a)]);
            if (a == b || x == 0 || len[static_cast<std::size_t>(a)] == 0.0 || len[static_cast<std::size_t>(b)] != 0.0) continue;
            len[static_cast<std::size_t>(b)] = len[static_cast<std::size_t>(a)] * y / x;
            again = true;
          }
      }
      double mn = *std::min_element(len.begin(), len.end());
      int shorts = static_cast<int>(std::count_if(len.begin(), len.end(), [&](double l) { return l < mn * 1.5; }));
      if (k == 2)
        lab = "B2";
      else if (k == 4 && shorts == 2)
        lab = "F4";
      else
        lab = std::string(shorts == 1 ? "B" : "C") + std::to_string(k);
    } else {
      int branch = -1;
      for (int a = 0; a < k; ++a)
        if (deg[static_cast<std::size_t>(a)] == 3) branch = a;
      if (branch < 0) {
        lab = "A" + std::to_string(k);
      } else {
        std::vector<int> arms;
        for (int b = 0; b < k; ++b) {
          if (b == branch || c(nodes[static_cast<std::size_t>(branch)], nodes[static_cast<std::size_t>(b)]) == 0) continue;
          int len = 1, prev = branch, cur = b;
          for (;;) {
            int next = -1;
            for (int d = 0; d < k; ++d)
              if (d != prev && d != cur && c(nodes[static_cast<std::size_t>(cur)], nodes[static_cast<std::size_t>(d)]) != 0) next = d;
            if (next < 0) break;
            prev = cur;
            cur = next;
            ++len;
          }
          arms.push_back(len);
        }
        std::sort(arms.begin(), arms.end());
        if (arms[0] == 1 && arms[1] == 1)
          lab = "D" + std::to_string(k);
        else
          lab = "E" + std::to_string(k);
      }
    }
    labels.push_back(lab);
  }
  std::sort(labels.begin(), labels.end());
  std::string out;
  for (const auto& l : labels) out += (out.empty() ? "" : "x") + l;
  return out;
}

}  // namespace klwb
