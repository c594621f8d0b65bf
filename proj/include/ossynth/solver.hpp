#pragma once

// Finite-domain search for parameter values satisfying a constraint system.
//
// Non-multiplier parameters are enumerated depth first. Every implication's
// constraints form one "check" over the parameters it mentions; once those
// are bound, the check is linear in its own multipliers and is decided by a
// bounded search over the multiplier grid. Results are memoized per tuple of
// parameter values, and checks with a single unbound parameter prune that
// parameter's domain (forward checking).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ossynth/farkas.hpp"
#include "ossynth/polynomial.hpp"

namespace ossynth {

inline std::vector<Rational> int_range(long lo, long hi) {
  std::vector<Rational> out;
  for (long v = lo; v <= hi; ++v) out.emplace_back(v);
  return out;
}

enum class VarOrder { Greedy, Declaration };

struct SolveConfig {
  std::map<ParamKind, std::vector<Rational>> domains;
  std::map<std::string, std::vector<Rational>> overrides;  // by parameter name
  VarOrder order = VarOrder::Greedy;
  double timeout_seconds = 0;  // 0 = no limit

  static SolveConfig defaults() {
    SolveConfig c;
    c.domains[ParamKind::DomainRow] = int_range(-1, 1);
    c.domains[ParamKind::DomainBound] = int_range(-2, 2);
    c.domains[ParamKind::Coeff] = int_range(0, 2);
    c.domains[ParamKind::Const] = int_range(0, 2);
    c.domains[ParamKind::Dummy] = int_range(-2, 2);
    c.domains[ParamKind::LowerBound] = int_range(-2, 2);
    c.domains[ParamKind::Delta] = int_range(1, 1);
    c.domains[ParamKind::Lambda] = {Rational(0), Rational(1, 2), Rational(1), Rational(2)};
    return c;
  }

  const std::vector<Rational>& domain_of(const ParamRegistry& reg, ParamId p) const {
    if (auto it = overrides.find(reg.name(p)); it != overrides.end()) return it->second;
    auto it = domains.find(reg.kind(p));
    if (it == domains.end()) throw Error(std::string("no search domain for parameter kind ") + kind_name(reg.kind(p)));
    return it->second;
  }
};

using Assignment = std::map<ParamId, Rational>;

enum class SolveStatus { Sat, NoSolution, Timeout };

inline const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat: return "sat";
    case SolveStatus::NoSolution: return "no-solution";
    case SolveStatus::Timeout: return "timeout";
  }
  return "?";
}

struct SolveStats {
  std::uint64_t nodes = 0;
  std::uint64_t check_evals = 0;
  std::uint64_t lambda_nodes = 0;
  double seconds = 0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::NoSolution;
  Assignment assignment;
  SolveStats stats;
};

/// Exact evaluation of every constraint.
inline bool check_assignment(const ConstraintSystem& sys, const Assignment& a) {
  bool ok = true;
  for (const auto& c : sys.constraints) ok = c.holds(a, &sys.reg) && ok;
  return ok;
}

/// Index of the first violated constraint, if any.
inline std::optional<std::size_t> first_violation(const ConstraintSystem& sys, const Assignment& a) {
  for (std::size_t i = 0; i < sys.constraints.size(); ++i) {
    if (!sys.constraints[i].holds(a, &sys.reg)) return i;
  }
  return std::nullopt;
}

/// Simplest values first: by magnitude, positive before negative, then by
/// denominator.
inline std::vector<std::size_t> simplest_first(const std::vector<Rational>& dom) {
  std::vector<std::size_t> idx(dom.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    Rational ma = abs(dom[a]), mb = abs(dom[b]);
    if (ma != mb) return ma < mb;
    if ((dom[a] < 0) != (dom[b] < 0)) return dom[a] >= 0;
    return dom[a].get_den() < dom[b].get_den();
  });
  return idx;
}

namespace detail {

// Polynomial compiled against a local parameter numbering.
struct CompiledPoly {
  struct Term {
    Rational coef;
    std::vector<std::pair<std::size_t, unsigned>> factors;
  };
  std::vector<Term> terms;

  Rational eval(const std::vector<const Rational*>& vals) const {
    Rational sum = 0;
    Rational t;
    for (const auto& term : terms) {
      t = term.coef;
      for (const auto& [i, e] : term.factors) {
        for (unsigned k = 0; k < e; ++k) t *= *vals[i];
      }
      sum += t;
    }
    return sum;
  }
};

// lhs - rhs = sum_j lam[j] * lambda_j + c0, compared with 0.
struct CompiledRow {
  Rel rel = Rel::Geq;
  std::vector<CompiledPoly> lam;  // per local multiplier; empty terms when absent
  CompiledPoly c0;
};

struct Check {
  std::vector<ParamId> params;   // non-multiplier parameters, ascending
  std::vector<ParamId> lambdas;  // local multiplier order
  std::vector<CompiledRow> rows;
  std::ptrdiff_t block = -1;
};

class Search {
 public:
  Search(const ConstraintSystem& sys, const SolveConfig& cfg) : sys_(sys), cfg_(cfg) {}

  SolveResult run() {
    start_ = std::chrono::steady_clock::now();
    build_checks();
    SolveResult res;
    bool sat = prepare() && dfs(0);
    res.stats = stats_;
    res.stats.seconds = elapsed();
    if (timed_out_) {
      res.status = SolveStatus::Timeout;
    } else if (sat) {
      res.status = SolveStatus::Sat;
      res.assignment = solution_;
    } else {
      res.status = SolveStatus::NoSolution;
    }
    return res;
  }

 private:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  void build_checks() {
    const auto& reg = sys_.reg;
    const std::size_t n = reg.size();
    lambda_block_.assign(n, -1);
    for (std::size_t b = 0; b < sys_.certs.size(); ++b) {
      for (ParamId l : sys_.certs[b].lambdas) lambda_block_[l] = static_cast<std::ptrdiff_t>(b);
    }
    std::map<std::ptrdiff_t, std::size_t> block_check;
    for (std::size_t ci = 0; ci < sys_.constraints.size(); ++ci) {
      const auto& c = sys_.constraints[ci];
      Polynomial diff = c.lhs - c.rhs;
      std::ptrdiff_t blk = -1;
      for (ParamId p : diff.params()) {
        if (reg.kind(p) != ParamKind::Lambda) continue;
        if (blk >= 0 && lambda_block_[p] != blk) throw NotAffine("constraint mixes multiplier blocks");
        blk = lambda_block_[p];
      }
      if (blk < 0) blk = sys_.block[ci];
      std::size_t chk;
      if (blk >= 0 && block_check.count(blk)) {
        chk = block_check[blk];
      } else {
        chk = checks_.size();
        checks_.emplace_back();
        checks_.back().block = blk;
        if (blk >= 0) {
          block_check[blk] = chk;
          checks_.back().lambdas = sys_.certs[static_cast<std::size_t>(blk)].lambdas;
        }
      }
      pending_.emplace_back(chk, std::move(diff), c.rel);
    }
    for (const auto& [chk, diff, rel] : pending_) {
      for (ParamId p : diff.params()) {
        if (reg.kind(p) == ParamKind::Lambda) {
          auto& ls = checks_[chk].lambdas;
          if (std::find(ls.begin(), ls.end(), p) == ls.end()) ls.push_back(p);
        } else {
          checks_[chk].params.push_back(p);
        }
      }
    }
    for (auto& ch : checks_) {
      std::sort(ch.params.begin(), ch.params.end());
      ch.params.erase(std::unique(ch.params.begin(), ch.params.end()), ch.params.end());
    }
    for (const auto& [chk, diff, rel] : pending_) checks_[chk].rows.push_back(compile_row(checks_[chk], diff, rel));
    pending_.clear();

    // Domains and per-parameter check lists.
    domain_.resize(n);
    order_vals_.resize(n);
    for (ParamId p = 0; p < n; ++p) {
      domain_[p] = cfg_.domain_of(reg, p);
      if (domain_[p].empty()) throw Error("empty search domain for '" + reg.name(p) + "'");
      order_vals_[p] = simplest_first(domain_[p]);
    }
    lambda_grid_ = cfg_.domains.count(ParamKind::Lambda) ? cfg_.domains.at(ParamKind::Lambda)
                                                          : std::vector<Rational>{};
    std::sort(lambda_grid_.begin(), lambda_grid_.end());
    if (!lambda_grid_.empty() && lambda_grid_.front() < 0) throw Error("multiplier grid must be nonnegative");
    checks_of_.assign(n, {});
    for (std::size_t c = 0; c < checks_.size(); ++c) {
      for (ParamId p : checks_[c].params) checks_of_[p].push_back(c);
    }
    for (ParamId p = 0; p < n; ++p) {
      if (reg.kind(p) != ParamKind::Lambda && !checks_of_[p].empty()) vars_.push_back(p);
    }
    compute_order();
    memo_.resize(checks_.size());
  }

  CompiledPoly compile_poly(const Check& ch, const Polynomial& p) const {
    CompiledPoly out;
    for (const auto& [m, c] : p.terms()) {
      CompiledPoly::Term t{c, {}};
      for (const auto& [q, e] : m) {
        auto it = std::lower_bound(ch.params.begin(), ch.params.end(), q);
        t.factors.emplace_back(static_cast<std::size_t>(it - ch.params.begin()), e);
      }
      out.terms.push_back(std::move(t));
    }
    return out;
  }

  CompiledRow compile_row(const Check& ch, const Polynomial& diff, Rel rel) const {
    std::vector<Polynomial> lam(ch.lambdas.size());
    Polynomial c0;
    for (const auto& [m, c] : diff.terms()) {
      Monomial rest;
      std::optional<std::size_t> slot;
      for (const auto& [q, e] : m) {
        if (sys_.reg.kind(q) == ParamKind::Lambda) {
          if (slot || e != 1) throw NotAffine("constraint is not linear in the multipliers");
          slot = static_cast<std::size_t>(std::find(ch.lambdas.begin(), ch.lambdas.end(), q) - ch.lambdas.begin());
        } else {
          rest.emplace_back(q, e);
        }
      }
      Polynomial term = Polynomial(c);
      for (const auto& [q, e] : rest) {
        for (unsigned k = 0; k < e; ++k) term = term * Polynomial::param(q);
      }
      if (slot) {
        lam[*slot] += term;
      } else {
        c0 += term;
      }
    }
    CompiledRow row;
    row.rel = rel;
    for (const auto& l : lam) row.lam.push_back(compile_poly(ch, l));
    row.c0 = compile_poly(ch, c0);
    return row;
  }

  // Greedy static order: the parameter completing the most checks, then the
  // one most urgently needed by partially bound checks, then the smaller
  // domain, then the lower id.
  void compute_order() {
    std::vector<std::size_t> unbound(checks_.size());
    for (std::size_t c = 0; c < checks_.size(); ++c) unbound[c] = checks_[c].params.size();
    std::vector<bool> placed(sys_.reg.size(), false);
    if (cfg_.order == VarOrder::Declaration) {
      order_ = vars_;
    } else {
      for (std::size_t step = 0; step < vars_.size(); ++step) {
        std::optional<ParamId> best;
        std::tuple<std::size_t, double, std::size_t> best_key{};
        for (ParamId p : vars_) {
          if (placed[p]) continue;
          std::size_t completes = 0;
          double urgency = 0;
          for (std::size_t c : checks_of_[p]) {
            if (unbound[c] == 1) ++completes;
            urgency += 1.0 / static_cast<double>(unbound[c]);
          }
          auto key = std::make_tuple(completes, urgency, std::size_t(1000000) - domain_[p].size());
          if (!best || key > best_key) {
            best = p;
            best_key = key;
          }
        }
        placed[*best] = true;
        order_.push_back(*best);
        for (std::size_t c : checks_of_[*best]) --unbound[c];
      }
    }
    position_.assign(sys_.reg.size(), 0);
    for (std::size_t i = 0; i < order_.size(); ++i) position_[order_[i]] = i;
  }

  bool prepare() {
    const std::size_t n = sys_.reg.size();
    value_.assign(n, -1);
    alive_.assign(n, {});
    alive_count_.assign(n, 0);
    for (ParamId p = 0; p < n; ++p) {
      alive_[p].assign(domain_[p].size(), 1);
      alive_count_[p] = domain_[p].size();
    }
    unbound_.assign(checks_.size(), 0);
    for (std::size_t c = 0; c < checks_.size(); ++c) {
      unbound_[c] = checks_[c].params.size();
      if (unbound_[c] == 0 && !eval_check(c)) return false;
    }
    for (std::size_t c = 0; c < checks_.size(); ++c) {
      if (unbound_[c] == 1 && !filter(c)) return false;
    }
    trail_.clear();
    return true;
  }

  bool dfs(std::size_t depth) {
    if (++stats_.nodes % 1024 == 0 && cfg_.timeout_seconds > 0 && elapsed() > cfg_.timeout_seconds) {
      timed_out_ = true;
    }
    if (timed_out_) return false;
    if (depth == order_.size()) {
      record_solution();
      return true;
    }
    ParamId p = order_[depth];
    for (std::size_t vi : order_vals_[p]) {
      if (!alive_[p][vi]) continue;
      std::size_t mark = trail_.size();
      value_[p] = static_cast<long>(vi);
      bool ok = true;
      for (std::size_t c : checks_of_[p]) --unbound_[c];
      for (std::size_t c : checks_of_[p]) {
        if (unbound_[c] == 0 && !eval_check(c)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        for (std::size_t c : checks_of_[p]) {
          if (unbound_[c] == 1 && !filter(c)) {
            ok = false;
            break;
          }
        }
      }
      if (ok && dfs(depth + 1)) return true;
      for (std::size_t c : checks_of_[p]) ++unbound_[c];
      value_[p] = -1;
      undo(mark);
      if (timed_out_) return false;
    }
    return false;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [q, vi] = trail_.back();
      trail_.pop_back();
      alive_[q][vi] = 1;
      ++alive_count_[q];
    }
  }

  // Removes the values of the single unbound parameter of check c that fail.
  bool filter(std::size_t c) {
    const auto& ch = checks_[c];
    ParamId q = 0;
    for (ParamId p : ch.params) {
      if (value_[p] < 0) q = p;
    }
    for (std::size_t vi = 0; vi < domain_[q].size(); ++vi) {
      if (!alive_[q][vi]) continue;
      value_[q] = static_cast<long>(vi);
      bool ok = eval_check(c);
      value_[q] = -1;
      if (!ok) {
        alive_[q][vi] = 0;
        --alive_count_[q];
        trail_.emplace_back(q, vi);
      }
    }
    return alive_count_[q] > 0;
  }

  std::string key_of(const Check& ch) const {
    std::string key;
    key.reserve(ch.params.size() * 2);
    for (ParamId p : ch.params) {
      auto v = static_cast<std::uint16_t>(value_[p]);
      key.push_back(static_cast<char>(v & 0xff));
      key.push_back(static_cast<char>(v >> 8));
    }
    return key;
  }

  // -2 unknown, -1 infeasible, else index of the witness in lambda_pool_.
  bool eval_check(std::size_t c) {
    const auto& ch = checks_[c];
    std::string key = key_of(ch);
    auto& memo = memo_[c];
    if (auto it = memo.find(key); it != memo.end()) return it->second >= 0;
    ++stats_.check_evals;
    std::vector<const Rational*> vals;
    vals.reserve(ch.params.size());
    for (ParamId p : ch.params) vals.push_back(&domain_[p][static_cast<std::size_t>(value_[p])]);
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> c0;
    std::vector<Rel> rel;
    for (const auto& row : ch.rows) {
      std::vector<Rational> coeffs;
      for (const auto& l : row.lam) coeffs.push_back(l.eval(vals));
      a.push_back(std::move(coeffs));
      c0.push_back(row.c0.eval(vals));
      rel.push_back(row.rel);
    }
    long result = -1;
    std::vector<Rational> lam(ch.lambdas.size());
    if (solve_lambda(a, c0, rel, lam)) {
      result = static_cast<long>(lambda_pool_.size());
      lambda_pool_.push_back(lam);
    }
    memo.emplace(std::move(key), result);
    return result >= 0;
  }

  // Depth-first search over the multiplier grid with interval pruning.
  bool solve_lambda(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& c0,
                    const std::vector<Rel>& rel, std::vector<Rational>& lam) {
    const std::size_t k = lam.size();
    const std::size_t m = a.size();
    if (k > 0 && lambda_grid_.empty()) return false;
    // suffix_lo[r][i], suffix_hi[r][i]: range of sum_{j>=i} a[r][j]*lambda_j.
    std::vector<std::vector<Rational>> lo(m, std::vector<Rational>(k + 1)), hi(m, std::vector<Rational>(k + 1));
    const Rational gmin = k ? lambda_grid_.front() : Rational(0);
    const Rational gmax = k ? lambda_grid_.back() : Rational(0);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t i = k; i-- > 0;) {
        Rational x = a[r][i] * gmin, y = a[r][i] * gmax;
        lo[r][i] = lo[r][i + 1] + (x < y ? x : y);
        hi[r][i] = hi[r][i + 1] + (x < y ? y : x);
      }
    }
    std::vector<Rational> partial(c0);
    auto feasible = [&](std::size_t i) {
      for (std::size_t r = 0; r < m; ++r) {
        Rational top = partial[r] + hi[r][i];
        if (top < 0) return false;
        if (rel[r] == Rel::Eq && partial[r] + lo[r][i] > 0) return false;
      }
      return true;
    };
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
      ++stats_.lambda_nodes;
      if (!feasible(i)) return false;
      if (i == k) return true;
      for (const auto& g : lambda_grid_) {
        lam[i] = g;
        for (std::size_t r = 0; r < m; ++r) partial[r] += a[r][i] * g;
        bool ok = rec(i + 1);
        for (std::size_t r = 0; r < m; ++r) partial[r] -= a[r][i] * g;
        if (ok) return true;
      }
      return false;
    };
    return rec(0);
  }

  void record_solution() {
    solution_.clear();
    for (ParamId p = 0; p < sys_.reg.size(); ++p) {
      if (sys_.reg.kind(p) == ParamKind::Lambda) continue;
      // Parameters outside every check are free; take their simplest value.
      std::size_t vi = value_[p] >= 0 ? static_cast<std::size_t>(value_[p]) : order_vals_[p].front();
      solution_[p] = domain_[p][vi];
    }
    for (std::size_t c = 0; c < checks_.size(); ++c) {
      const auto& ch = checks_[c];
      if (ch.lambdas.empty()) continue;
      long w = memo_[c].at(key_of(ch));
      for (std::size_t j = 0; j < ch.lambdas.size(); ++j) {
        solution_[ch.lambdas[j]] = lambda_pool_[static_cast<std::size_t>(w)][j];
      }
    }
    for (const auto& cert : sys_.certs) {
      for (ParamId l : cert.lambdas) solution_.emplace(l, Rational(0));
    }
  }

  const ConstraintSystem& sys_;
  const SolveConfig& cfg_;
  std::chrono::steady_clock::time_point start_;
  bool timed_out_ = false;
  SolveStats stats_;

  std::vector<std::tuple<std::size_t, Polynomial, Rel>> pending_;
  std::vector<Check> checks_;
  std::vector<std::ptrdiff_t> lambda_block_;
  std::vector<std::vector<Rational>> domain_;
  std::vector<std::vector<std::size_t>> order_vals_;
  std::vector<Rational> lambda_grid_;
  std::vector<std::vector<std::size_t>> checks_of_;
  std::vector<ParamId> vars_;
  std::vector<ParamId> order_;
  std::vector<std::size_t> position_;

  std::vector<long> value_;
  std::vector<std::vector<char>> alive_;
  std::vector<std::size_t> alive_count_;
  std::vector<std::size_t> unbound_;
  std::vector<std::pair<ParamId, std::size_t>> trail_;
  std::vector<std::unordered_map<std::string, long>> memo_;
  std::vector<std::vector<Rational>> lambda_pool_;
  Assignment solution_;
};

}  // namespace detail

inline SolveResult solve(const ConstraintSystem& sys, const SolveConfig& cfg = SolveConfig::defaults()) {
  return detail::Search(sys, cfg).run();
}

}  // namespace ossynth
