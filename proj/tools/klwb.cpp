// klwb: verification suites and tables for the Kazhdan-Laumon workbench.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "klwb/charpoints.hpp"
#include "klwb/coxeter.hpp"
#include "klwb/hecke.hpp"
#include "klwb/k0model.hpp"
#include "klwb/klalgebra.hpp"
#include "klwb/report.hpp"

using namespace klwb;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string type = "A1";
  int den = 6;
  std::string m_arg = "safe";
  int m = 0;
  unsigned long seed = 1;
  bool json = false;
  int threads = 0;
  int ell = 0;
};

struct Output {
  std::string command;
  std::vector<CheckResult> results;
  json data;
  std::vector<std::string> table;  // text rendering of data
};

int parse_m(const std::string& s, int ell) {
  if (s == "paper") return ell;
  if (s == "safe") return 2 * ell;
  try {
    std::size_t pos = 0;
    int m = std::stoi(s, &pos);
    if (pos == s.size() && m >= 1) return m;
  } catch (const std::exception&) {
  }
  throw UsageError("--m must be paper, safe or a positive integer");
}

CheckResult make(const std::string& check, const Config& c, Status st, std::string detail, std::string witness = {},
                 std::string orbit = {}) {
  return CheckResult{check, c.type, std::move(orbit), st, std::move(detail), st == Status::fail ? std::move(witness) : ""};
}

std::string words(const WeylGroup& W, const std::vector<int>& elts) {
  std::string s = "{";
  for (std::size_t i = 0; i < elts.size(); ++i) s += (i ? "," : "") + W.word_string(elts[i]);
  return s + "}";
}

json word_array(const WeylGroup& W, const std::vector<int>& elts) {
  json a = json::array();
  for (int w : elts) a.push_back(W.word_string(w));
  return a;
}

std::string vec_str(const LVector& x) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < x.size(); ++i) s += (i ? ", " : "") + x[i].str();
  return s + "]";
}

// outcome fingerprint used by the stabilization monitor
std::string outcome(const std::vector<CheckResult>& rs) {
  std::string s;
  for (const auto& r : rs) s += r.check + ":" + to_string(r.status) + ";";
  return s;
}

void push_all(Output& out, const std::vector<CheckResult>& rs) { out.results.insert(out.results.end(), rs.begin(), rs.end()); }

// ---- verify suites ----

void suite_braid(const WeylGroup& W, const Config& c, Output& out) {
  KLAlgebra A(W, c.den, DenominatorMode::at_most);
  push_all(out, verify_braid(A, c.threads));
}

void suite_cubic(const WeylGroup& W, const Config& c, Output& out) {
  KLAlgebra A(W, c.den, DenominatorMode::at_most);
  push_all(out, verify_cubic(A, c.threads));
  push_all(out, operator_square_identity(A, c.threads));
}

void suite_w0(const WeylGroup& W, const Config& c, Output& out) {
  KLAlgebra A(W, c.den, DenominatorMode::at_most);
  auto rs = verify_w0(A, c.threads);
  push_all(out, rs);
  int variant = 0, total = 0;
  for (int k = 0; k < A.num_orbits(); ++k)
    for (const auto& cmp : check_w0_identity(A.orbit_algebra(k))) {
      ++total;
      variant += cmp.variant_equal;
    }
  out.results.push_back(make("w0_variant", c, variant == total ? Status::pass : Status::finding,
                             "v^{2l} T_{w0,L}^-2 matches on " + std::to_string(variant) + "/" + std::to_string(total) +
                                 " blocks"));
  KLAlgebra B(W, c.den + 2, DenominatorMode::at_most);
  bool same = outcome(verify_w0(B, c.threads)).find("fail") == std::string::npos &&
              outcome(verify_w0(B, c.threads)).find("finding") == std::string::npos;
  bool before = all_pass(rs);
  for (const auto& r : rs) before = before && r.status == Status::pass;
  out.results.push_back(make("stabilization", c, same == before ? Status::pass : Status::finding,
                             "w0 outcome at den " + std::to_string(c.den + 2) + (same == before ? " unchanged" : " changed")));
}

void suite_minpoly(const WeylGroup& W, const Config& c, Output& out) {
  KLAlgebra A(W, c.den, DenominatorMode::at_most);
  push_all(out, verify_minpoly(A, c.m));
  KLAlgebra B(W, c.den + 2, DenominatorMode::at_most);
  auto a = fulltwist_minpoly(A), b = fulltwist_minpoly(B);
  bool same = a.minpoly == b.minpoly;
  out.results.push_back(make("stabilization", c, same ? Status::pass : Status::finding,
                             "minimal polynomial at den " + std::to_string(c.den + 2) + (same ? " unchanged" : ": " + b.minpoly.str())));
}

void suite_canonical(const WeylGroup& W, const Config& c, Output& out) {
  KLAlgebra A(W, c.den, DenominatorMode::at_most);
  KModule M(A);
  std::mt19937_64 rng(c.seed);
  const int vectors = 20;
  CheckResult r = make("canonical", c, Status::pass,
                       std::to_string(vectors) + " vectors x " + std::to_string(W.size()) + " elements, module dim " +
                           std::to_string(M.dim()));
  for (int t = 0; t < vectors && r.status == Status::pass; ++t) {
    auto k = random_vector(M, rng);
    for (const auto& e : canonical_identity(M, k, c.threads))
      if (!e.ok) {
        r = make("canonical", c, Status::fail, "vector " + std::to_string(t) + " y=" + W.word_string(e.y),
                 vec_str(e.lhs - e.rhs));
        break;
      }
  }
  out.results.push_back(r);
}

std::vector<KTuple> sample_tuples(const KModule& M, unsigned long seed, int n) {
  std::mt19937_64 rng(seed);
  std::vector<KTuple> ts;
  for (int i = 0; i < n; ++i) ts.push_back(random_gluing_tuple(M, rng));
  return ts;
}

void suite_gluing(const WeylGroup& W, const Config& c, Output& out) {
  KLAlgebra A(W, c.den, DenominatorMode::at_most);
  KModule M(A);
  auto ts = sample_tuples(M, c.seed, 20);
  std::vector<GluingReport> reps(ts.size());
  parallel_for(static_cast<int>(ts.size()), c.threads, [&](int i) { reps[static_cast<std::size_t>(i)] = check_gluing(M, ts[static_cast<std::size_t>(i)]); });
  CheckResult r = make("gluing", c, Status::pass, std::to_string(ts.size()) + " random gluing tuples");
  for (std::size_t i = 0; i < reps.size(); ++i)
    if (!reps[i].ok) {
      const auto* f = reps[i].first_failure();
      r = make("gluing", c, Status::fail, "tuple " + std::to_string(i) + " s=" + std::to_string(f->s + 1) + " w=" + W.word_string(f->w),
               tuple_str(M, ts[i]));
      break;
    }
  out.results.push_back(r);
  // free tuples and iota
  std::mt19937_64 rng(c.seed + 1);
  bool free_ok = true, iota_ok = true;
  for (int w = 0; w < W.size(); ++w) {
    auto t = make_free(M, w, random_vector(M, rng));
    free_ok = free_ok && check_gluing(M, t, c.threads).ok;
    iota_ok = iota_ok && iota(M, iota(M, t)) == iota_sq(M, t);
  }
  out.results.push_back(make("gluing_free", c, free_ok ? Status::pass : Status::fail, "j_{w!} k for every w"));
  out.results.push_back(make("iota_square", c, iota_ok ? Status::pass : Status::fail, "double iota equals componentwise F"));
}

void suite_polyconj(const WeylGroup& W, const Config& c, Output& out) {
  KLAlgebra A(W, c.den, DenominatorMode::at_most);
  KModule M(A);
  const int n = 50;
  auto ts = sample_tuples(M, c.seed, n);
  const bool ann = annihilated_by_family(M, c.m);
  out.results.push_back(make("annihilator", c, ann ? Status::pass : Status::finding,
                             "P(F) with m=" + std::to_string(c.m) + (ann ? " vanishes" : " does not vanish on the module")));
  struct Row {
    bool split = false, split_annihilates = false, span = false, descent = true;
    int power = -1;
    std::string error;
  };
  std::vector<Row> rows(static_cast<std::size_t>(n));
  parallel_for(n, c.threads, [&](int i) {
    Row& row = rows[static_cast<std::size_t>(i)];
    const KTuple& a = ts[static_cast<std::size_t>(i)];
    try {
      auto cert = polyconj_split(M, a, c.m);
      row.split = cert.sum_ok && cert.square_fixed && cert.chain_ok && cert.free_ok;
      row.split_annihilates = cert.all();
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    // coefficients for p^k a are p^k times those for a
    if (auto f = express_in_free_span(M, a, c.m); f && f->admissible && f->power <= 3) {
      row.span = true;
      row.power = f->power;
    }
    if (ann) {
      KTuple d = a;
      for (auto& x : d.c) x = M.fulltwist(x) - x;
      try {
        for (int r = 1; r <= 2; ++r) row.descent = row.descent && euclid_descent(M, d, r, c.m).verified;
      } catch (const std::exception& e) {
        row.descent = false;
        if (row.error.empty()) row.error = e.what();
      }
    }
  });
  int split = 0, full = 0, span = 0, descent = 0, maxpow = 0;
  std::string witness;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    split += rows[i].split;
    full += rows[i].split_annihilates;
    span += rows[i].span;
    descent += rows[i].descent;
    maxpow = std::max(maxpow, rows[i].power);
    if (witness.empty() && !rows[i].error.empty()) witness = "tuple " + std::to_string(i) + ": " + rows[i].error;
  }
  const std::string of = "/" + std::to_string(n);
  Status st = split == n ? (full == n ? Status::pass : Status::finding) : Status::fail;
  out.results.push_back(make("polyconj_split", c, st,
                             "contracts (i)-(iii) and chain " + std::to_string(split) + of + "; with (iv) " + std::to_string(full) + of,
                             witness));
  out.results.push_back(make("free_span", c, span == n ? Status::pass : Status::fail,
                             std::to_string(span) + of + " tuples integral after p(v)^k with k <= " + std::to_string(maxpow),
                             witness));
  if (ann)
    out.results.push_back(make("euclid_descent", c, descent == n ? Status::pass : Status::fail,
                               std::to_string(descent) + of + " tuples, r = 1, 2", witness));
}

void suite_tilting(const WeylGroup& W, const Config& c, Output& out) {
  HeckeAlgebra H(W);
  const auto zero = CharacterPoint::zero(W.rank());
  const LaurentPoly qn = poincare_q(W, zero, SignConvention::negative_v2);
  const LaurentPoly qp = poincare_q(W, zero, SignConvention::positive_v2);
  auto report = [&](const std::string& name, const LaurentPoly& coeff, bool primary) {
    std::vector<std::string> match;
    if (coeff == qn) match.push_back("-v^2");
    if (coeff == qp) match.push_back("+v^2");
    std::string detail = "C_e coefficient " + coeff.str() + "; q(-v^2) = " + qn.str() + ", q(+v^2) = " + qp.str() + "; matches: " +
                         (match.empty() ? std::string("none") : match.front());
    Status st = match.size() == 1 ? Status::pass : (primary ? Status::fail : Status::finding);
    out.results.push_back(make(name, c, st, detail, "no sign convention matches"));
  };
  report("tilting", H.ic_e_coefficient(H.tilting_class()), true);
  report("tilting_reversed", H.ic_e_coefficient(H.tilting_class(true)), false);
}

void suite_chevalley(const WeylGroup& W, const Config& c, Output& out) {
  auto orbits = orbit_set(W, c.den, DenominatorMode::at_most);
  const int ell = c.ell;
  int pos = 0, neg = 0;
  std::string pos_w, neg_w;
  for (const auto& o : orbits) {
    const auto& sub = o.subsystem(0);
    auto rp = chevalley_divisibility(poincare_q(sub, SignConvention::positive_v2), ell);
    auto rn = chevalley_divisibility(poincare_q(sub, SignConvention::negative_v2), ell);
    pos += rp.success;
    neg += rn.success;
    if (!rp.success && pos_w.empty()) pos_w = o.representative().str() + ": " + rp.str();
    if (!rn.success && neg_w.empty()) neg_w = o.representative().str() + ": " + rn.str();
  }
  const int n = static_cast<int>(orbits.size());
  const std::string tail = "/" + std::to_string(n) + " orbits factor with i <= " + std::to_string(ell);
  out.results.push_back(make("chevalley_positive", c, pos == n ? Status::pass : Status::fail, std::to_string(pos) + tail, pos_w));
  CheckResult r = make("chevalley_negative", c, neg == n ? Status::pass : Status::finding,
                       std::to_string(neg) + tail + (neg_w.empty() ? "" : "; first failure " + neg_w));
  out.results.push_back(r);
}

void suite_cells(const WeylGroup& W, const Config& c, Output& out) {
  HeckeAlgebra H(W);
  const auto& cd = H.cells();
  std::string parts;
  for (const auto& cell : cd.cells) parts += (parts.empty() ? "" : " ") + words(W, cell);
  bool top = !cd.cells.empty() && cd.cell_of[static_cast<std::size_t>(W.identity())] == 0;
  for (int b = 0; b < cd.size() && top; ++b) top = cd.leq[static_cast<std::size_t>(b)][0];
  out.results.push_back(make("cells", c, top ? Status::pass : Status::fail,
                             std::to_string(cd.size()) + " two-sided cells " + parts + (top ? "; c_e maximal" : "; c_e not maximal")));
  const auto ft = H.full_twist(Convention::ly);
  bool scalar = true, in_range = true;
  std::string ds, wit;
  for (int b = 0; b < cd.size(); ++b) {
    auto s = H.cell_scalar(ft, b);
    if (!s || s->exponent % 2 != 0) {
      scalar = false;
      if (wit.empty()) wit = words(W, cd.cells[static_cast<std::size_t>(b)]);
      continue;
    }
    ds += (ds.empty() ? "" : ",") + std::string(s->sign < 0 ? "-" : "") + std::to_string(s->exponent);
    in_range = in_range && s->sign > 0 && s->exponent >= 0 && s->exponent <= 2 * c.ell;
  }
  out.results.push_back(make("fulltwist_scalar", c, scalar ? Status::pass : Status::fail, "d per cell {" + ds + "}", wit));
  out.results.push_back(make("d_range", c, in_range ? Status::pass : Status::finding,
                             "d per cell {" + ds + "} against [0, " + std::to_string(2 * c.ell) + "]"));
}

// ---- dumps ----

void dump_cells(const WeylGroup& W, const Config&, Output& out) {
  HeckeAlgebra H(W);
  const auto& cd = H.cells();
  json cells = json::array(), order = json::array();
  for (int a = 0; a < cd.size(); ++a) {
    cells.push_back(word_array(W, cd.cells[static_cast<std::size_t>(a)]));
    out.table.push_back("cell " + std::to_string(a) + ": " + words(W, cd.cells[static_cast<std::size_t>(a)]));
  }
  for (int a = 0; a < cd.size(); ++a)
    for (int b = 0; b < cd.size(); ++b)
      if (a != b && cd.leq[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) {
        order.push_back({a, b});
        out.table.push_back("cell " + std::to_string(a) + " <= cell " + std::to_string(b));
      }
  out.data = {{"cells", cells}, {"order", order}};
}

void dump_scalars(const WeylGroup& W, const Config&, Output& out) {
  HeckeAlgebra H(W);
  const auto& cd = H.cells();
  json rows = json::array();
  for (int b = 0; b < cd.size(); ++b) {
    json row = {{"cell", word_array(W, cd.cells[static_cast<std::size_t>(b)])}};
    std::string line = words(W, cd.cells[static_cast<std::size_t>(b)]);
    for (auto conv : {Convention::ly, Convention::standard}) {
      auto s = H.cell_scalar(H.full_twist(conv), b);
      std::string key = to_string(conv);
      if (s) {
        row[key] = {{"sign", s->sign}, {"d", s->exponent}};
        line += " " + key + ": " + (s->sign < 0 ? "-" : "+") + "v^" + std::to_string(s->exponent);
      } else {
        row[key] = nullptr;
        line += " " + key + ": not scalar";
      }
    }
    rows.push_back(row);
    out.table.push_back(line);
  }
  out.data = rows;
}

void dump_qpoly(const WeylGroup& W, const Config& c, Output& out) {
  json rows = json::array();
  for (const auto& o : orbit_set(W, c.den, DenominatorMode::at_most)) {
    const auto& sub = o.subsystem(0);
    auto qn = poincare_q(sub, SignConvention::negative_v2).str();
    auto qp = poincare_q(sub, SignConvention::positive_v2).str();
    rows.push_back({{"orbit", o.representative().str()}, {"wl", sub.type_label}, {"q_neg", qn}, {"q_pos", qp}});
    out.table.push_back(o.representative().str() + " | " + sub.type_label + " | -v^2: " + qn + " | +v^2: " + qp);
  }
  out.data = rows;
}

void dump_orbits(const WeylGroup& W, const Config& c, Output& out) {
  json rows = json::array();
  for (const auto& o : orbit_set(W, c.den, DenominatorMode::at_most)) {
    const auto& sub = o.subsystem(0);
    rows.push_back({{"orbit", o.representative().str()},
                    {"size", o.size()},
                    {"stabilizer", o.stabilizer_order},
                    {"wl", sub.type_label},
                    {"wl_order", sub.order()}});
    out.table.push_back(o.representative().str() + " | size " + std::to_string(o.size()) + " | stabilizer " +
                        std::to_string(o.stabilizer_order) + " | W_L " + sub.type_label + " of order " +
                        std::to_string(sub.order()));
  }
  out.data = rows;
}

void specialize(const Config& c, long q, Output& out) {
  const LaurentPoly p = p_of_v(c.m);
  auto val = specialize_sqrt_q(p, q);
  out.data = {{"q", q}, {"m", c.m}, {"p", p.str()}, {"value", val.str()}, {"nonzero", val.nonzero()}};
  out.table.push_back("p(v) = " + p.str());
  out.table.push_back("p(q^(1/2)) at q=" + std::to_string(q) + ": " + val.str());
  out.results.push_back(make("specialize", c, val.nonzero() ? Status::pass : Status::fail,
                             "q=" + std::to_string(q) + " m=" + std::to_string(c.m) + " value " + val.str(), val.str()));
}

json config_json(const Config& c) {
  return {{"type", c.type}, {"den", c.den}, {"m", c.m_arg}, {"m_value", c.m}, {"seed", c.seed}};
}

int emit(const Config& c, const Output& out) {
  if (c.json) {
    json j = {{"command", out.command}, {"config", config_json(c)}};
    json rs = json::array();
    for (const auto& r : out.results) {
      json e = {{"check", r.check}, {"type", r.type}};
      if (!r.orbit.empty()) e["orbit"] = r.orbit;
      e["status"] = to_string(r.status);
      e["detail"] = r.detail;
      if (!r.witness.empty()) e["witness"] = r.witness;
      rs.push_back(e);
    }
    j["results"] = rs;
    if (!out.data.is_null()) j["data"] = out.data;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << out.command << " type=" << c.type << " den=" << c.den << " m=" << c.m_arg << "(" << c.m << ") seed=" << c.seed
              << "\n";
    for (const auto& line : out.table) std::cout << "  " << line << "\n";
    bool witness_shown = false;
    for (const auto& r : out.results) {
      std::cout << "[" << to_string(r.status) << "] " << r.check;
      if (!r.orbit.empty()) std::cout << " orbit " << r.orbit;
      std::cout << ": " << r.detail << "\n";
      if (r.status == Status::fail && !r.witness.empty() && !witness_shown) {
        std::cout << "  witness: " << r.witness << "\n";
        witness_shown = true;
      }
    }
  }
  return all_pass(out.results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kazhdan-Laumon workbench"};
  app.require_subcommand(1);
  Config cfg;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--type", cfg.type, "Cartan type, e.g. A2, B2, G2");
    sub->add_option("--den", cfg.den, "orbit denominator bound");
    sub->add_option("--m", cfg.m_arg, "exponent bound: paper, safe or an integer");
    sub->add_option("--seed", cfg.seed, "seed for random tuples and vectors");
    sub->add_flag("--json", cfg.json, "JSON output");
    sub->add_option("--threads", cfg.threads, "worker threads (default KLWB_THREADS or 1)");
  };
  std::string suite, what;
  long q = 0;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite)
      ->required()
      ->check(CLI::IsMember({"braid", "cubic", "w0", "minpoly", "canonical", "gluing", "polyconj", "tilting", "chevalley", "cells"}));
  add_common(verify);
  auto* dump = app.add_subcommand("dump", "print a table");
  dump->add_option("what", what)->required()->check(CLI::IsMember({"cells", "fulltwist_scalars", "qpoly", "orbit_table"}));
  add_common(dump);
  auto* spz = app.add_subcommand("specialize", "evaluate p(v) at v = q^(1/2)");
  spz->add_option("q", q)->required();
  add_common(spz);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::unique_ptr<WeylGroup> W;
  try {
    if (cfg.den < 1) throw UsageError("--den must be positive");
    if (cfg.threads < 0) throw UsageError("--threads must be positive");
    if (cfg.threads == 0) cfg.threads = default_threads();
    W = std::make_unique<WeylGroup>(parse_cartan_type(cfg.type));
    cfg.type = W->label();
    cfg.ell = W->length(W->longest());
    cfg.m = parse_m(cfg.m_arg, cfg.ell);
    if (spz->parsed() && q < 2) throw UsageError("q must be at least 2");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  Output out;
  try {
    if (verify->parsed()) {
      out.command = "verify " + suite;
      if (suite == "braid") suite_braid(*W, cfg, out);
      else if (suite == "cubic") suite_cubic(*W, cfg, out);
      else if (suite == "w0") suite_w0(*W, cfg, out);
      else if (suite == "minpoly") suite_minpoly(*W, cfg, out);
      else if (suite == "canonical") suite_canonical(*W, cfg, out);
      else if (suite == "gluing") suite_gluing(*W, cfg, out);
      else if (suite == "polyconj") suite_polyconj(*W, cfg, out);
      else if (suite == "tilting") suite_tilting(*W, cfg, out);
      else if (suite == "chevalley") suite_chevalley(*W, cfg, out);
      else suite_cells(*W, cfg, out);
    } else if (dump->parsed()) {
      out.command = "dump " + what;
      if (what == "cells") dump_cells(*W, cfg, out);
      else if (what == "fulltwist_scalars") dump_scalars(*W, cfg, out);
      else if (what == "qpoly") dump_qpoly(*W, cfg, out);
      else dump_orbits(*W, cfg, out);
    } else {
      out.command = "specialize";
      specialize(cfg, q, out);
    }
  } catch (const std::exception& e) {
    out.results.push_back(make("error", cfg, Status::fail, e.what(), e.what()));
  }
  return emit(cfg, out);
}
