#pragma once

// Fixtures shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ossynth/ossynth.hpp"

namespace ossynth::fixtures {

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(OSSYNTH_TEST_DATA) + "/" + name, std::ios::binary);
  if (!in) throw Error("missing test fixture " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline OSTRS toyama() { return parse_module(read_data("toyama.maude")); }
inline OSTRS toyama_merged() { return parse_module(read_data("toyama_merged.maude")); }
inline OSTRS overloaded() { return parse_module(read_data("overloaded.maude")); }

inline PipelineOptions forced_dummies() {
  PipelineOptions opt;
  opt.structural.force_dummies = true;
  return opt;
}

/// Reference ToyamaOS parameter values: A(S2) = {0}, f = x+y+z, g = x+y+1.
inline std::map<std::string, Rational> reference_values() {
  return {
      {"C.S.1", 1},   {"C.S.2", 1},   {"C.S1.1", 1}, {"C.S1.2", 1}, {"C.S2.1", 1}, {"C.S2.2", -1},
      {"b.S.1", 0},   {"b.S.2", 0},   {"b.S1.1", 0}, {"b.S1.2", 0}, {"b.S2.1", 0}, {"b.S2.2", 0},
      {"f.1", 1},     {"f.2", 1},     {"f.3", 1},    {"f.0", 0},    {"g.1", 1},    {"g.2", 1},
      {"g.0", 1},     {"[0].0", 0},   {"[1].0", 1},  {"k.S", 0},    {"k.S1", 0},   {"alpha.S", 0},
      {"alpha.S1", 0}, {"delta", 1},
  };
}

/// Frozen output of tests/oracles/toyama_lambda_oracle.py.
inline const std::map<std::string, std::vector<Rational>>& oracle_lambdas() {
  static const std::map<std::string, std::vector<Rational>> table = {
      {"bounded(S)", {0, 1}},
      {"bounded(S1)", {0, 1}},
      {"subsort(S2<S1).1", {1, 0}},
      {"subsort(S2<S1).2", {1, 0}},
      {"alg(f).1", {0, 1, 0, 1, 0, 1}},
      {"alg(f).2", {0, 1, 0, 1, 0, 1}},
      {"alg(g).1", {0, 1, 0, 1}},
      {"alg(g).2", {0, 1, 0, 1}},
      {"T[S]", {0, 0, 0, 0, 0, 0, 1, 1}},
      {"T[S1]", {0, 0, 0, 0, 0, 0, 1, 1}},
      {"C(f,1)", {0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {"C(f,2)", {0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {"C(f,3)", {0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {"C(g,1)", {0, 0, 0, 0, 0, 0, 1}},
      {"C(g,2)", {0, 0, 0, 0, 0, 0, 1}},
      {"Re(1)", {0, 2}},
      {"Re(2)", {0, 0, 0, 1}},
      {"Re(3)", {0, 1, 0, 0}},
  };
  return table;
}

struct ReferenceCheck {
  Assignment assignment;
  std::vector<std::string> missing;  // implications with premises but no oracle entry
};

/// Reference values plus oracle multipliers, keyed by the system's registry.
inline ReferenceCheck reference_assignment(const ConstraintSystem& sys) {
  ReferenceCheck out;
  for (const auto& [name, v] : reference_values()) {
    if (auto p = sys.reg.find(name)) out.assignment[*p] = v;
  }
  for (std::size_t i = 0; i < sys.impls.size(); ++i) {
    const auto& lambdas = sys.certs[i].lambdas;
    if (lambdas.empty()) continue;
    auto it = oracle_lambdas().find(sys.impls[i].tag);
    if (it == oracle_lambdas().end() || it->second.size() != lambdas.size()) {
      out.missing.push_back(sys.impls[i].tag);
      continue;
    }
    for (std::size_t j = 0; j < lambdas.size(); ++j) out.assignment[lambdas[j]] = it->second[j];
  }
  return out;
}

inline Rational floor_rational(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

// Numeric affine implications for Farkas property tests.
struct NumericImplication {
  AffineImplication im;
  std::vector<Rational> feasible;  // a point satisfying every premise
};

/// Random implication with integer data in [-3,3]; the premises always admit
/// `feasible`. When `planted` the conclusion is a nonnegative grid combination
/// of the premises minus a slack, so a certificate exists.
inline NumericImplication random_implication(std::mt19937_64& rng, bool planted) {
  std::uniform_int_distribution<int> nvars(1, 4), nprem(1, 6), coef(-3, 3), grid(0, 3), slack(0, 2);
  const int n = nvars(rng);
  const int k = nprem(rng);
  NumericImplication out;
  auto& im = out.im;
  for (int j = 0; j < n; ++j) {
    im.vars.push_back("x" + std::to_string(j + 1));
    out.feasible.emplace_back(coef(rng));
  }
  std::vector<std::vector<int>> A(k, std::vector<int>(n));
  std::vector<int> b(k);
  for (int i = 0; i < k; ++i) {
    int ax = 0;
    do {
      ax = 0;
      for (int j = 0; j < n; ++j) {
        A[i][j] = coef(rng);
        ax += A[i][j] * static_cast<int>(out.feasible[j].get_num().get_si());
      }
    } while (ax < -3);
    b[i] = std::min(3, std::max(-3, ax - slack(rng)));
    LinAtom p;
    for (int j = 0; j < n; ++j) {
      if (A[i][j]) p.coeffs[im.vars[j]] = Polynomial(A[i][j]);
    }
    p.rhs = Polynomial(b[i]);
    im.premises.push_back(p);
  }
  static const Rational kGrid[] = {0, Rational(1, 2), 1, 2};
  std::vector<Rational> c(n);
  Rational beta;
  if (planted) {
    // Redraw until the planted conclusion stays inside [-3,3].
    bool in_range = false;
    while (!in_range) {
      std::fill(c.begin(), c.end(), Rational(0));
      beta = 0;
      for (int i = 0; i < k; ++i) {
        Rational l = kGrid[grid(rng)];
        for (int j = 0; j < n; ++j) c[j] += l * A[i][j];
        beta += l * b[i];
      }
      beta -= slack(rng);
      beta = floor_rational(beta);
      in_range = beta >= -3 && beta <= 3 &&
                 std::all_of(c.begin(), c.end(), [](const Rational& v) { return is_integer(v) && abs(v) <= 3; });
    }
  } else {
    for (int j = 0; j < n; ++j) c[j] = coef(rng);
    beta = coef(rng);
  }
  for (int j = 0; j < n; ++j) {
    if (c[j] != 0) im.conclusion.coeffs[im.vars[j]] = Polynomial(c[j]);
  }
  im.conclusion.rhs = Polynomial(beta);
  im.tag = planted ? "planted" : "random";
  return out;
}

/// First multiplier vector over {0,1/2,1,2}^k that certifies `im`.
inline std::optional<std::vector<Rational>> brute_force_lambda(const AffineImplication& im) {
  static const Rational kGrid[] = {0, Rational(1, 2), 1, 2};
  const std::size_t k = im.premises.size();
  std::vector<std::size_t> idx(k, 0);
  std::vector<Rational> lam(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) lam[i] = kGrid[idx[i]];
    if (certify(im, lam, {})) return lam;
    std::size_t j = 0;
    while (j < k && ++idx[j] == 4) idx[j++] = 0;
    if (j == k) return std::nullopt;
  }
}

inline Rational eval_lin(const LinAtom& a, const std::vector<std::string>& vars, const std::vector<Rational>& x) {
  Rational s = 0;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    auto it = a.coeffs.find(vars[j]);
    if (it != a.coeffs.end()) s += it->second.constant() * x[j];
  }
  return s;
}

struct SampleStats {
  std::size_t accepted = 0;
  std::size_t violations = 0;
};

/// Hit-and-run walk from the feasible witness: each step moves along a random
/// integer direction to a random point of the chord left inside the premise
/// polyhedron and a box of radius 6 around the witness, so every visited point
/// satisfies the premises even when the polyhedron is thin. The walk restarts
/// every 32 steps. Counts conclusion violations.
inline SampleStats sample_premises(const NumericImplication& ni, std::size_t want, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dir(-2, 2), frac(0, 16);
  SampleStats st;
  const auto& im = ni.im;
  const std::size_t n = im.vars.size();
  const Rational kBox = 6;
  std::vector<Rational> x = ni.feasible, d(n);
  auto satisfies = [&](const std::vector<Rational>& y) {
    return std::all_of(im.premises.begin(), im.premises.end(),
                       [&](const LinAtom& p) { return eval_lin(p, im.vars, y) >= p.rhs.constant(); });
  };
  if (!satisfies(x)) return st;
  while (st.accepted < want) {
    if (st.accepted % 32 == 0) x = ni.feasible;  // keeps denominators small
    bool zero = true;
    for (auto& dj : d) {
      dj = dir(rng);
      zero = zero && dj == 0;
    }
    if (zero) continue;
    Rational lo = -8, hi = 8;
    for (std::size_t j = 0; j < n; ++j) {
      if (d[j] == 0) continue;
      Rational a = (ni.feasible[j] - kBox - x[j]) / d[j], b = (ni.feasible[j] + kBox - x[j]) / d[j];
      lo = std::max(lo, std::min(a, b));
      hi = std::min(hi, std::max(a, b));
    }
    for (const auto& p : im.premises) {
      Rational slack = eval_lin(p, im.vars, x) - p.rhs.constant();
      Rational rate = eval_lin(p, im.vars, d);
      if (rate > 0) lo = std::max(lo, Rational(-slack / rate));
      if (rate < 0) hi = std::min(hi, Rational(slack / -rate));
    }
    Rational share(frac(rng), 16);
    share.canonicalize();
    Rational t = lo + (hi - lo) * share;
    for (std::size_t j = 0; j < n; ++j) x[j] += t * d[j];
    if (!satisfies(x)) return st;  // walk left the polyhedron: reported as a shortfall
    ++st.accepted;
    if (eval_lin(im.conclusion, im.vars, x) < im.conclusion.rhs.constant()) ++st.violations;
  }
  return st;
}

}  // namespace ossynth::fixtures
