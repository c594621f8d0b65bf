#pragma once

// Parametric convex domains for sorts (one dimension, two rows) and
// parametric linear interpretations for ranked symbols, plus the structural
// constraints a model has to satisfy.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <string>
#include <vector>

#include "ossynth/affine.hpp"
#include "ossynth/maude.hpp"
#include "ossynth/os_core.hpp"
#include "ossynth/polynomial.hpp"

namespace ossynth {

inline constexpr std::size_t kRows = 2;

/// D(C, b) = { x | C_1 x >= b_1, C_2 x >= b_2 }.
struct ParamDomain {
  SortId sort = 0;
  std::array<ParamId, kRows> C{};
  std::array<ParamId, kRows> b{};
};

/// F_1 x_1 + ... + F_k x_k + F_0 for one rank.
struct ParamLinInterp {
  std::size_t rank = 0;
  std::vector<ParamId> coeffs;
  ParamId constant = 0;
};

enum class PredKind { Geq, GtDelta };

struct ParamInterp {
  ParamRegistry reg;
  std::vector<ParamDomain> domains;    // by SortId
  std::vector<ParamLinInterp> funcs;   // by rank index
  std::vector<PredKind> preds;         // by predicate rank index
  ParamId delta = 0;
};

inline ParamInterp make_param_interp(const SortedSignature& sig) {
  ParamInterp pi;
  for (SortId s = 0; s < sig.poset.size(); ++s) {
    const std::string& n = sig.poset.name(s);
    ParamDomain d;
    d.sort = s;
    for (std::size_t i = 0; i < kRows; ++i) {
      d.C[i] = pi.reg.add("C." + n + "." + std::to_string(i + 1), ParamKind::DomainRow);
    }
    for (std::size_t i = 0; i < kRows; ++i) {
      d.b[i] = pi.reg.add("b." + n + "." + std::to_string(i + 1), ParamKind::DomainBound);
    }
    pi.domains.push_back(d);
  }
  for (std::size_t r = 0; r < sig.funcs.size(); ++r) {
    // Symbols such as `0` would give names that read like numbers.
    std::string label = rank_label(sig, r);
    if (!std::isalpha(static_cast<unsigned char>(label[0])) && label[0] != '_') label = "[" + label + "]";
    ParamLinInterp li;
    li.rank = r;
    for (std::size_t i = 0; i < sig.funcs[r].args.size(); ++i) {
      li.coeffs.push_back(pi.reg.add(label + "." + std::to_string(i + 1), ParamKind::Coeff));
    }
    li.constant = pi.reg.add(label + ".0", ParamKind::Const);
    pi.funcs.push_back(li);
  }
  for (const auto& p : sig.preds) {
    if (p.symbol == kStepPred) {
      pi.preds.push_back(PredKind::GtDelta);
    } else if (p.symbol == kStarPred) {
      pi.preds.push_back(PredKind::Geq);
    } else {
      throw UnsupportedFormula("no numeric interpretation for predicate '" + p.symbol + "'");
    }
  }
  pi.delta = pi.reg.add("delta", ParamKind::Delta);
  return pi;
}

/// The two row atoms C_i x >= b_i of `x` ranging over sort `s`.
inline std::vector<LinAtom> domain_atoms(const ParamInterp& pi, SortId s, const std::string& x) {
  std::vector<LinAtom> out;
  const auto& d = pi.domains.at(s);
  for (std::size_t i = 0; i < kRows; ++i) {
    out.push_back(LinAtom{{{x, Polynomial::param(d.C[i])}}, Polynomial::param(d.b[i])});
  }
  return out;
}

/// Sorts whose component top carries a strict (GT_DELTA) predicate.
inline std::vector<bool> strict_components(const SortedSignature& sig, const ParamInterp& pi) {
  std::vector<bool> comp(sig.poset.components().size(), false);
  for (std::size_t r = 0; r < sig.preds.size(); ++r) {
    if (pi.preds[r] != PredKind::GtDelta) continue;
    for (SortId s : sig.preds[r].args) comp[sig.poset.component(s)] = true;
  }
  return comp;
}

/// Sorts with a ground term of that sort (least fixpoint over the ranks).
inline std::vector<bool> ground_inhabited(const SortedSignature& sig) {
  const auto& P = sig.poset;
  std::vector<bool> inh(P.size(), false);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : sig.funcs) {
      bool args_ok = std::all_of(r.args.begin(), r.args.end(), [&](SortId a) { return inh[a]; });
      if (!args_ok) continue;
      for (SortId s = 0; s < P.size(); ++s) {
        if (!inh[s] && P.leq(r.result, s)) {
          inh[s] = true;
          changed = true;
        }
      }
    }
  }
  return inh;
}

struct StructuralOptions {
  bool force_dummies = false;    // non-emptiness even for ground-inhabited sorts
  bool bound_all_sorts = false;  // bounded-below for every sort, not only tops
};

/// Dummy element k_s with C_i k_s >= b_i, for the tops of components that
/// carry a strict predicate.
inline std::vector<AffineImplication> non_emptiness_constraints(ParamInterp& pi, const SortedSignature& sig,
                                                                const StructuralOptions& opt = {}) {
  std::vector<AffineImplication> out;
  auto strict = strict_components(sig, pi);
  auto inh = ground_inhabited(sig);
  for (std::size_t c = 0; c < sig.poset.components().size(); ++c) {
    auto top = sig.poset.top_of_component(c);
    if (!top || !strict[c] || (inh[*top] && !opt.force_dummies)) continue;
    const std::string& n = sig.poset.name(*top);
    ParamId k = pi.reg.add("k." + n, ParamKind::Dummy);
    const auto& d = pi.domains[*top];
    for (std::size_t i = 0; i < kRows; ++i) {
      AffineImplication im;
      im.tag = "nonempty(" + n + ")." + std::to_string(i + 1);
      im.conclusion = LinAtom{{}, Polynomial::param(d.b[i]) - Polynomial::param(d.C[i]) * Polynomial::param(k)};
      out.push_back(im);
    }
  }
  return out;
}

inline std::vector<AffineImplication> bounded_below_constraints(ParamInterp& pi, const SortedSignature& sig,
                                                                const StructuralOptions& opt = {}) {
  std::vector<AffineImplication> out;
  auto strict = strict_components(sig, pi);
  for (std::size_t c = 0; c < sig.poset.components().size(); ++c) {
    if (!strict[c]) continue;
    std::vector<SortId> sorts;
    if (opt.bound_all_sorts) {
      sorts = sig.poset.components()[c];
    } else if (auto top = sig.poset.top_of_component(c)) {
      sorts.push_back(*top);
    }
    for (SortId s : sorts) {
      const std::string& n = sig.poset.name(s);
      ParamId alpha = pi.reg.add("alpha." + n, ParamKind::LowerBound);
      AffineImplication im;
      im.tag = "bounded(" + n + ")";
      im.vars = {"x"};
      im.premises = domain_atoms(pi, s, "x");
      im.conclusion = LinAtom{{{"x", Polynomial(1)}}, Polynomial::param(alpha)};
      out.push_back(im);
    }
  }
  return out;
}

/// One implication per covering pair s < s' and row of s'.
inline std::vector<AffineImplication> subsort_constraints(const ParamInterp& pi, const SubsortPoset& poset) {
  std::vector<AffineImplication> out;
  for (const auto& [lo, hi] : poset.covering_pairs()) {
    auto upper = domain_atoms(pi, hi, "x");
    for (std::size_t i = 0; i < kRows; ++i) {
      AffineImplication im;
      im.tag = "subsort(" + poset.name(lo) + "<" + poset.name(hi) + ")." + std::to_string(i + 1);
      im.vars = {"x"};
      im.premises = domain_atoms(pi, lo, "x");
      im.conclusion = upper[i];
      out.push_back(im);
    }
  }
  return out;
}

/// Semantic variable names for a k-ary symbol: x, y, z or x1..xk.
inline std::vector<std::string> arg_names(std::size_t k) {
  static const char* small[] = {"x", "y", "z"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(k <= 3 ? small[i] : "x" + std::to_string(i + 1));
  return out;
}

/// [f](x_1..x_k) = F_1 x_1 + ... + F_k x_k + F_0.
inline LinExprP apply_interp(const ParamLinInterp& li, const std::vector<LinExprP>& args) {
  LinExprP e = LinExprP::constant_of(Polynomial::param(li.constant));
  for (std::size_t i = 0; i < args.size(); ++i) e += Polynomial::param(li.coeffs.at(i)) * args[i];
  return e;
}

/// Result rows of every rank hold whenever the arguments lie in their domains.
inline std::vector<AffineImplication> algebraicity_constraints(const ParamInterp& pi, const SortedSignature& sig) {
  std::vector<AffineImplication> out;
  for (std::size_t r = 0; r < sig.funcs.size(); ++r) {
    const auto& rank = sig.funcs[r];
    auto xs = arg_names(rank.args.size());
    std::vector<LinAtom> premises;
    std::vector<LinExprP> args;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (auto& a : domain_atoms(pi, rank.args[i], xs[i])) premises.push_back(std::move(a));
      args.push_back(LinExprP::var(xs[i]));
    }
    LinExprP value = apply_interp(pi.funcs[r], args);
    const auto& d = pi.domains[rank.result];
    for (std::size_t j = 0; j < kRows; ++j) {
      AffineImplication im;
      im.tag = "alg(" + rank_label(sig, r) + ")." + std::to_string(j + 1);
      im.vars = xs;
      im.premises = premises;
      im.conclusion = LinAtom::geq(Polynomial::param(d.C[j]) * value, LinExprP::constant_of(Polynomial::param(d.b[j])));
      out.push_back(im);
    }
  }
  return out;
}

/// Overloads f : w -> s and f : w' -> s' with w < w' must agree on the
/// domains of w; the equality is split into two inequalities.
inline std::vector<AffineImplication> overload_constraints(const ParamInterp& pi, const SortedSignature& sig) {
  std::vector<AffineImplication> out;
  for (std::size_t r = 0; r < sig.funcs.size(); ++r) {
    for (std::size_t q = 0; q < sig.funcs.size(); ++q) {
      const auto& a = sig.funcs[r];
      const auto& b = sig.funcs[q];
      if (r == q || a.symbol != b.symbol || a.args.size() != b.args.size()) continue;
      if (!leq_string(a.args, b.args, sig.poset)) continue;
      auto xs = arg_names(a.args.size());
      std::vector<LinAtom> premises;
      std::vector<LinExprP> args;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        for (auto& at : domain_atoms(pi, a.args[i], xs[i])) premises.push_back(std::move(at));
        args.push_back(LinExprP::var(xs[i]));
      }
      LinExprP fa = apply_interp(pi.funcs[r], args);
      LinExprP fb = apply_interp(pi.funcs[q], args);
      std::string base = "overload(" + rank_label(sig, r) + "," + rank_label(sig, q) + ")";
      AffineImplication ge{base + ".ge", xs, premises, LinAtom::geq(fa, fb)};
      AffineImplication le{base + ".le", xs, premises, LinAtom::geq(fb, fa)};
      out.push_back(ge);
      out.push_back(le);
    }
  }
  return out;
}

}  // namespace ossynth
