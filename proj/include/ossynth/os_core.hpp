#pragma once

// Order-sorted signatures, terms and the universally quantified implicational
// formula fragment.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ossynth/error.hpp"

namespace ossynth {

using SortId = std::size_t;

/// A finite poset of sorts, closed under reflexivity and transitivity, with
/// its connected components and their top sorts.
class SubsortPoset {
 public:
  SubsortPoset() = default;

  /// Builds the reflexive-transitive closure of `subsorts` (pairs `a < b`).
  static SubsortPoset build(std::vector<std::string> sorts,
                            const std::vector<std::pair<std::string, std::string>>& subsorts) {
    SubsortPoset p;
    p.names_ = std::move(sorts);
    const std::size_t n = p.names_.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (p.names_[i] == p.names_[j]) throw Error("duplicate sort '" + p.names_[i] + "'");
      }
    }
    p.leq_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) p.leq_[i * n + i] = 1;
    for (const auto& [lo, hi] : subsorts) {
      p.leq_[p.id(lo) * n + p.id(hi)] = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!p.leq_[i * n + k]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (p.leq_[k * n + j]) p.leq_[i * n + j] = 1;
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (p.leq_[i * n + j] && p.leq_[j * n + i]) {
          throw CycleError("subsort cycle between '" + p.names_[i] + "' and '" + p.names_[j] + "'");
        }
      }
    }

    // Union-find over the order relation.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (p.leq_[i * n + j]) parent[find(i)] = find(j);
      }
    }
    p.component_of_.assign(n, 0);
    std::map<std::size_t, std::size_t> root_to_component;
    for (std::size_t i = 0; i < n; ++i) {
      auto [it, fresh] = root_to_component.emplace(find(i), p.components_.size());
      if (fresh) p.components_.emplace_back();
      p.components_[it->second].push_back(i);
      p.component_of_[i] = it->second;
    }
    for (const auto& members : p.components_) {
      std::optional<SortId> top;
      for (SortId t : members) {
        bool above_all = std::all_of(members.begin(), members.end(),
                                     [&](SortId s) { return p.leq(s, t); });
        if (above_all) top = t;
      }
      p.tops_.push_back(top);
    }
    return p;
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(SortId s) const { return names_.at(s); }

  std::optional<SortId> find(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<SortId>(it - names_.begin());
  }

  SortId id(const std::string& name) const {
    if (auto s = find(name)) return *s;
    throw UnknownSort("unknown sort '" + name + "'");
  }

  bool leq(SortId a, SortId b) const { return leq_[a * size() + b] != 0; }
  bool less(SortId a, SortId b) const { return a != b && leq(a, b); }

  std::size_t component(SortId s) const { return component_of_.at(s); }
  bool same_component(SortId a, SortId b) const { return component(a) == component(b); }
  const std::vector<std::vector<SortId>>& components() const { return components_; }
  std::optional<SortId> top_of_component(std::size_t c) const { return tops_.at(c); }
  std::optional<SortId> top(SortId s) const { return tops_.at(component(s)); }

  /// Covering pairs (a, b): a < b with nothing strictly between them.
  std::vector<std::pair<SortId, SortId>> covering_pairs() const {
    std::vector<std::pair<SortId, SortId>> out;
    for (SortId a = 0; a < size(); ++a) {
      for (SortId b = 0; b < size(); ++b) {
        if (!less(a, b)) continue;
        bool covered = true;
        for (SortId c = 0; c < size() && covered; ++c) {
          if (less(a, c) && less(c, b)) covered = false;
        }
        if (covered) out.emplace_back(a, b);
      }
    }
    return out;
  }

  /// All strict pairs a < b of the closure.
  std::vector<std::pair<SortId, SortId>> strict_pairs() const {
    std::vector<std::pair<SortId, SortId>> out;
    for (SortId a = 0; a < size(); ++a) {
      for (SortId b = 0; b < size(); ++b) {
        if (less(a, b)) out.emplace_back(a, b);
      }
    }
    return out;
  }

  bool operator==(const SubsortPoset&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<char> leq_;
  std::vector<std::size_t> component_of_;
  std::vector<std::vector<SortId>> components_;
  std::vector<std::optional<SortId>> tops_;
};

/// Pointwise extension of the subsort order to equal-length strings.
inline bool leq_string(std::span<const SortId> w1, std::span<const SortId> w2,
                       const SubsortPoset& poset) {
  if (w1.size() != w2.size()) {
    throw LengthMismatch("sort strings of length " + std::to_string(w1.size()) + " and " +
                         std::to_string(w2.size()));
  }
  for (std::size_t i = 0; i < w1.size(); ++i) {
    if (!poset.leq(w1[i], w2[i])) return false;
  }
  return true;
}

struct RankDecl {
  std::string symbol;
  std::vector<SortId> args;
  SortId result = 0;

  bool operator==(const RankDecl&) const = default;
};

struct PredRank {
  std::string symbol;
  std::vector<SortId> args;

  bool operator==(const PredRank&) const = default;
};

struct SortedSignature {
  SubsortPoset poset;
  std::vector<RankDecl> funcs;
  std::vector<PredRank> preds;
  std::map<std::string, SortId> vars;

  /// Indices into `funcs` of every rank of `symbol` with the given arity.
  std::vector<std::size_t> ranks_of(const std::string& symbol, std::size_t arity) const {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < funcs.size(); ++r) {
      if (funcs[r].symbol == symbol && funcs[r].args.size() == arity) out.push_back(r);
    }
    return out;
  }

  std::vector<std::size_t> pred_ranks_of(const std::string& symbol, std::size_t arity) const {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < preds.size(); ++r) {
      if (preds[r].symbol == symbol && preds[r].args.size() == arity) out.push_back(r);
    }
    return out;
  }

  bool is_overloaded(std::size_t rank) const {
    const auto& r = funcs.at(rank);
    return ranks_of(r.symbol, r.args.size()).size() > 1;
  }

  /// The equality predicate is only admitted at component tops. It is never
  /// installed or interpreted by this library.
  bool admits_equality(SortId s) const { return poset.top(s) == s; }
};

/// Human-readable rank label: the bare symbol, or `h[S2]` style when the
/// symbol is overloaded.
inline std::string rank_label(const SortedSignature& sig, std::size_t rank) {
  const auto& r = sig.funcs.at(rank);
  if (!sig.is_overloaded(rank)) return r.symbol;
  std::string out = r.symbol + "[";
  for (std::size_t i = 0; i < r.args.size(); ++i) {
    if (i) out += ",";
    out += sig.poset.name(r.args[i]);
  }
  return out + "]";
}

struct SignatureDiagnostics {
  bool monotonic = true;
  bool sensible = true;
  bool regular = true;
  bool coherent = true;
  bool constants_single_rank = true;
  bool predicate_regular = true;
  std::vector<std::string> failures;

  bool ok() const {
    return monotonic && sensible && regular && coherent && constants_single_rank &&
           predicate_regular;
  }
};

namespace detail {

// Regularity for one overload family given as (argument string, optional
// result) pairs: every w0 below some member must have a least member above
// it. Enumerates w0 position by position, keeping only sorts that lie below
// some remaining candidate.
inline bool family_is_regular(const SubsortPoset& poset,
                              const std::vector<std::pair<std::vector<SortId>, std::optional<SortId>>>& fam,
                              std::string* witness) {
  if (fam.empty()) return true;
  const std::size_t k = fam.front().first.size();
  std::vector<SortId> w0(k);
  auto below = [&](const auto& a, const auto& b) {
    if (!leq_string(a.first, b.first, poset)) return false;
    return !a.second || poset.leq(*a.second, *b.second);
  };
  std::function<bool(std::size_t, const std::vector<std::size_t>&)> rec =
      [&](std::size_t pos, const std::vector<std::size_t>& cands) -> bool {
    if (pos == k) {
      for (std::size_t c : cands) {
        bool least = std::all_of(cands.begin(), cands.end(),
                                 [&](std::size_t o) { return below(fam[c], fam[o]); });
        if (least) return true;
      }
      if (witness) {
        *witness = "(";
        for (std::size_t i = 0; i < k; ++i) *witness += (i ? " " : "") + poset.name(w0[i]);
        *witness += ")";
      }
      return false;
    }
    for (SortId s = 0; s < poset.size(); ++s) {
      std::vector<std::size_t> next;
      for (std::size_t c : cands) {
        if (poset.leq(s, fam[c].first[pos])) next.push_back(c);
      }
      if (next.empty()) continue;
      w0[pos] = s;
      if (!rec(pos + 1, next)) return false;
    }
    return true;
  };
  std::vector<std::size_t> all(fam.size());
  std::iota(all.begin(), all.end(), 0);
  return rec(0, all);
}

}  // namespace detail

/// Runs every well-formedness check; never throws.
inline SignatureDiagnostics check_signature(const SortedSignature& sig) {
  SignatureDiagnostics d;
  const auto& P = sig.poset;
  const auto& F = sig.funcs;

  for (std::size_t i = 0; i < F.size(); ++i) {
    if (F[i].args.empty()) {
      for (std::size_t j = 0; j < F.size(); ++j) {
        if (j != i && F[j].symbol == F[i].symbol) {
          d.constants_single_rank = false;
          d.failures.push_back("constant '" + F[i].symbol + "' has more than one rank");
          break;
        }
      }
    }
    for (std::size_t j = 0; j < F.size(); ++j) {
      if (i == j || F[i].symbol != F[j].symbol || F[i].args.size() != F[j].args.size()) continue;
      if (leq_string(F[i].args, F[j].args, P) && !P.leq(F[i].result, F[j].result)) {
        d.monotonic = false;
        d.failures.push_back("'" + F[i].symbol + "' violates monotonicity");
      }
      bool same_components = true;
      for (std::size_t a = 0; a < F[i].args.size(); ++a) {
        same_components = same_components && P.same_component(F[i].args[a], F[j].args[a]);
      }
      if (same_components && !P.same_component(F[i].result, F[j].result)) {
        d.sensible = false;
        d.failures.push_back("'" + F[i].symbol + "' is not sensible");
      }
    }
  }

  std::map<std::pair<std::string, std::size_t>,
           std::vector<std::pair<std::vector<SortId>, std::optional<SortId>>>>
      families;
  for (const auto& r : F) families[{r.symbol, r.args.size()}].push_back({r.args, r.result});
  for (const auto& [key, fam] : families) {
    std::string w;
    if (!detail::family_is_regular(P, fam, &w)) {
      d.regular = false;
      d.failures.push_back("'" + key.first + "' has no least rank for arguments " + w);
    }
  }

  std::map<std::pair<std::string, std::size_t>,
           std::vector<std::pair<std::vector<SortId>, std::optional<SortId>>>>
      pfamilies;
  for (const auto& p : sig.preds) pfamilies[{p.symbol, p.args.size()}].push_back({p.args, std::nullopt});
  for (const auto& [key, fam] : pfamilies) {
    std::string w;
    if (!detail::family_is_regular(P, fam, &w)) {
      d.predicate_regular = false;
      d.failures.push_back("predicate '" + key.first + "' has no least rank for " + w);
    }
  }

  d.coherent = d.regular;
  for (std::size_t c = 0; c < P.components().size(); ++c) {
    if (!P.top_of_component(c)) {
      d.coherent = false;
      d.failures.push_back("component of '" + P.name(P.components()[c].front()) + "' has no top sort");
    }
  }
  return d;
}

/// A sorted term. Applications record the rank they were resolved against.
struct Term {
  enum class Kind { Var, App };

  Kind kind = Kind::Var;
  std::string name;  // variable name or function symbol
  SortId sort = 0;   // declared sort of a variable, result sort of the rank
  std::size_t rank = 0;
  std::vector<Term> args;

  bool is_var() const { return kind == Kind::Var; }
  bool operator==(const Term&) const = default;
};

inline Term make_var(std::string name, SortId sort) {
  Term t;
  t.kind = Term::Kind::Var;
  t.name = std::move(name);
  t.sort = sort;
  return t;
}

/// Application at an explicitly chosen rank, no resolution.
inline Term make_app_at(const SortedSignature& sig, std::size_t rank, std::vector<Term> args) {
  Term t;
  t.kind = Term::Kind::App;
  t.name = sig.funcs.at(rank).symbol;
  t.sort = sig.funcs[rank].result;
  t.rank = rank;
  t.args = std::move(args);
  return t;
}

SortId least_sort(const Term& t, const SortedSignature& sig);

namespace detail {

inline std::size_t least_rank(const SortedSignature& sig, const std::string& symbol,
                              const std::vector<SortId>& arg_sorts) {
  std::vector<std::size_t> cands;
  for (std::size_t r : sig.ranks_of(symbol, arg_sorts.size())) {
    if (leq_string(arg_sorts, sig.funcs[r].args, sig.poset)) cands.push_back(r);
  }
  for (std::size_t c : cands) {
    bool least = std::all_of(cands.begin(), cands.end(), [&](std::size_t o) {
      return leq_string(sig.funcs[c].args, sig.funcs[o].args, sig.poset) &&
             sig.poset.leq(sig.funcs[c].result, sig.funcs[o].result);
    });
    if (least) return c;
  }
  std::string shape = symbol + "(";
  for (std::size_t i = 0; i < arg_sorts.size(); ++i) {
    shape += (i ? "," : "") + sig.poset.name(arg_sorts[i]);
  }
  shape += ")";
  if (cands.empty()) throw IllTyped("no rank of '" + symbol + "' accepts " + shape);
  throw IllTyped("no least rank of '" + symbol + "' for " + shape);
}

}  // namespace detail

/// Application resolved to the least rank accepting the arguments' least sorts.
inline Term make_app(const SortedSignature& sig, const std::string& symbol, std::vector<Term> args) {
  std::vector<SortId> sorts;
  sorts.reserve(args.size());
  for (const auto& a : args) sorts.push_back(least_sort(a, sig));
  return make_app_at(sig, detail::least_rank(sig, symbol, sorts), std::move(args));
}

inline SortId least_sort(const Term& t, const SortedSignature& sig) {
  if (t.is_var()) return t.sort;
  std::vector<SortId> sorts;
  sorts.reserve(t.args.size());
  for (const auto& a : t.args) sorts.push_back(least_sort(a, sig));
  return sig.funcs[detail::least_rank(sig, t.name, sorts)].result;
}

/// Whether `t` belongs to the terms of sort `s` (checking each application
/// against its recorded rank).
inline bool well_formed_at(const Term& t, SortId s, const SortedSignature& sig) {
  if (t.is_var()) return sig.poset.leq(t.sort, s);
  const auto& r = sig.funcs.at(t.rank);
  if (r.args.size() != t.args.size() || !sig.poset.leq(r.result, s)) return false;
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (!well_formed_at(t.args[i], r.args[i], sig)) return false;
  }
  return true;
}

inline void collect_vars(const Term& t, std::vector<std::pair<std::string, SortId>>& out) {
  if (t.is_var()) {
    auto seen = std::find_if(out.begin(), out.end(), [&](const auto& v) { return v.first == t.name; });
    if (seen == out.end()) out.emplace_back(t.name, t.sort);
    return;
  }
  for (const auto& a : t.args) collect_vars(a, out);
}

inline std::size_t depth(const Term& t) {
  std::size_t d = 0;
  for (const auto& a : t.args) d = std::max(d, depth(a));
  return t.is_var() ? 0 : d + 1;
}

inline std::string to_string(const Term& t) {
  if (t.is_var() || t.args.empty()) return t.name;
  std::string out = t.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) out += (i ? "," : "") + to_string(t.args[i]);
  return out + ")";
}

struct Atom {
  std::string pred;
  std::size_t rank = 0;  // index into SortedSignature::preds
  std::vector<Term> args;

  bool operator==(const Atom&) const = default;
};

/// Atom over the least predicate rank covering the arguments' least sorts.
inline Atom make_atom(const SortedSignature& sig, const std::string& pred, std::vector<Term> args) {
  std::vector<SortId> sorts;
  for (const auto& a : args) sorts.push_back(least_sort(a, sig));
  std::vector<std::size_t> cands;
  for (std::size_t r : sig.pred_ranks_of(pred, args.size())) {
    if (leq_string(sorts, sig.preds[r].args, sig.poset)) cands.push_back(r);
  }
  for (std::size_t c : cands) {
    bool least = std::all_of(cands.begin(), cands.end(), [&](std::size_t o) {
      return leq_string(sig.preds[c].args, sig.preds[o].args, sig.poset);
    });
    if (least) return Atom{pred, c, std::move(args)};
  }
  throw IllTyped("no least rank of predicate '" + pred + "' for the given arguments");
}

/// Universally quantified implication: forall vars (premises => conclusion).
struct Sentence {
  std::vector<std::pair<std::string, SortId>> vars;
  std::vector<Atom> premises;
  Atom conclusion;

  bool operator==(const Sentence&) const = default;
};

/// Throws if an atom mentions a variable missing from the quantifier list.
inline void check_closed(const Sentence& s) {
  std::vector<std::pair<std::string, SortId>> used;
  for (const auto& a : s.premises) {
    for (const auto& t : a.args) collect_vars(t, used);
  }
  for (const auto& t : s.conclusion.args) collect_vars(t, used);
  for (const auto& [name, sort] : used) {
    auto q = std::find_if(s.vars.begin(), s.vars.end(), [&](const auto& v) { return v.first == name; });
    if (q == s.vars.end()) throw Error("variable '" + name + "' is not quantified");
    if (q->second != sort) throw Error("variable '" + name + "' used at a different sort");
  }
}

}  // namespace ossynth
