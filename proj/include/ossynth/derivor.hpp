#pragma once

// Translation of theory sentences into parametric affine implications over
// the semantic variables.

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ossynth/affine.hpp"
#include "ossynth/interp.hpp"
#include "ossynth/os_core.hpp"
#include "ossynth/theory.hpp"

namespace ossynth {

/// Homomorphic extension of the parametric interpretation to terms.
inline LinExprP eval_term(const Term& t, const ParamInterp& pi) {
  if (t.is_var()) return LinExprP::var(t.name);
  if (t.rank >= pi.funcs.size()) throw MissingInterp("no interpretation for '" + t.name + "'");
  std::vector<LinExprP> args;
  args.reserve(t.args.size());
  for (const auto& a : t.args) args.push_back(eval_term(a, pi));
  if (args.size() != pi.funcs[t.rank].coeffs.size()) {
    throw MissingInterp("interpretation of '" + t.name + "' has the wrong arity");
  }
  return apply_interp(pi.funcs[t.rank], args);
}

/// l >= r for GEQ predicates, l >= r + delta for GT_DELTA ones.
inline LinAtom derive_atom(const Atom& a, const ParamInterp& pi) {
  if (a.rank >= pi.preds.size() || a.args.size() != 2) {
    throw UnsupportedFormula("atom over '" + a.pred + "' has no binary numeric interpretation");
  }
  Polynomial margin = pi.preds[a.rank] == PredKind::GtDelta ? Polynomial::param(pi.delta) : Polynomial();
  return LinAtom::geq(eval_term(a.args[0], pi), eval_term(a.args[1], pi), margin);
}

inline std::vector<AffineImplication> derive_sentence(const Sentence& s, const ParamInterp& pi,
                                                      const std::string& tag = "", std::ptrdiff_t index = -1) {
  AffineImplication im;
  im.tag = tag;
  im.sentence = index;
  for (const auto& [x, sort] : s.vars) {
    im.vars.push_back(x);
    for (auto& a : domain_atoms(pi, sort, x)) im.premises.push_back(std::move(a));
  }
  for (const auto& p : s.premises) im.premises.push_back(derive_atom(p, pi));
  im.conclusion = derive_atom(s.conclusion, pi);
  return {im};
}

inline std::vector<AffineImplication> derive_theory(const Theory& th, const ParamInterp& pi) {
  std::vector<AffineImplication> out;
  for (std::size_t i = 0; i < th.sentences.size(); ++i) {
    const auto& ts = th.sentences[i];
    for (auto& im : derive_sentence(ts.sentence, pi, ts.tag, static_cast<std::ptrdiff_t>(i))) {
      out.push_back(std::move(im));
    }
  }
  return out;
}

inline unsigned max_degree(const std::vector<AffineImplication>& impls) {
  unsigned d = 0;
  auto atom_deg = [](const LinAtom& a) {
    unsigned m = a.rhs.degree();
    for (const auto& [x, c] : a.coeffs) m = std::max(m, c.degree());
    return m;
  };
  for (const auto& im : impls) {
    d = std::max(d, atom_deg(im.conclusion));
    for (const auto& p : im.premises) d = std::max(d, atom_deg(p));
  }
  return d;
}

namespace detail {

inline AffineImplication canonical_renaming(const AffineImplication& im) {
  std::map<std::string, std::string> ren;
  for (std::size_t i = 0; i < im.vars.size(); ++i) ren[im.vars[i]] = "_" + std::to_string(i);
  auto atom = [&](const LinAtom& a) {
    LinAtom out{{}, a.rhs};
    for (const auto& [x, c] : a.coeffs) out.coeffs[ren.count(x) ? ren[x] : x] = c;
    return out;
  };
  AffineImplication out;
  for (const auto& x : im.vars) out.vars.push_back(ren[x]);
  for (const auto& p : im.premises) out.premises.push_back(atom(p));
  out.conclusion = atom(im.conclusion);
  return out;
}

inline bool is_tautology(const AffineImplication& im) {
  return im.conclusion.coeffs.empty() && im.conclusion.rhs.is_constant() && im.conclusion.rhs.constant() <= 0;
}

// A 0/1 sum of premises that rebuilds the conclusion exactly, leaving a slack
// m*delta with m >= 0. Such implications hold for every delta >= 0.
inline bool is_trivially_certified(const AffineImplication& im, ParamId delta) {
  const std::size_t k = im.premises.size();
  if (k > 16) return false;
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    std::map<std::string, Polynomial> sum;
    Polynomial b;
    for (std::size_t i = 0; i < k; ++i) {
      if (!(mask >> i & 1)) continue;
      for (const auto& [x, c] : im.premises[i].coeffs) sum[x] += c;
      b += im.premises[i].rhs;
    }
    std::erase_if(sum, [](const auto& kv) { return kv.second.is_zero(); });
    if (sum != im.conclusion.coeffs) continue;
    Polynomial slack = b - im.conclusion.rhs;
    Polynomial rest = slack;
    Rational m = 0;
    for (const auto& [mono, c] : slack.terms()) {
      if (mono.size() == 1 && mono[0] == std::make_pair(delta, 1u)) m = c;
    }
    rest -= Polynomial(m) * Polynomial::param(delta);
    if (m >= 0 && rest.is_constant() && rest.constant() >= 0) return true;
  }
  return false;
}

}  // namespace detail

struct SimplifyOptions {
  bool prune_trivial = false;
};

/// Drops tautological conclusions and duplicates modulo variable renaming;
/// with prune_trivial also drops implications certified by a plain sum of
/// premises.
inline std::vector<AffineImplication> simplify(const std::vector<AffineImplication>& impls,
                                               const SimplifyOptions& opt = {}, ParamId delta = 0) {
  std::vector<AffineImplication> out;
  std::vector<AffineImplication> seen;
  for (const auto& im : impls) {
    if (detail::is_tautology(im)) continue;
    if (opt.prune_trivial && detail::is_trivially_certified(im, delta)) continue;
    auto canon = detail::canonical_renaming(im);
    if (std::find(seen.begin(), seen.end(), canon) != seen.end()) continue;
    seen.push_back(std::move(canon));
    out.push_back(im);
  }
  return out;
}

}  // namespace ossynth
