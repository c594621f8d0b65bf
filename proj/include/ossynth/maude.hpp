#pragma once

// Parser for a strict subset of Maude system modules:
//
//   mod NAME is
//     sorts A B C .            subsorts A B < C .
//     op f : A B -> C .        ops a b : -> A .
//     vars x y : A .
//     rl [label] : LHS => RHS .
//   endm
//
// Tokens are whitespace separated, except that '(' ')' ',' '[' ']' always
// stand alone. Comments start with '---' or '***' and run to end of line.

#include <cctype>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ossynth/error.hpp"
#include "ossynth/os_core.hpp"

namespace ossynth {

inline constexpr const char* kStepPred = "->";
inline constexpr const char* kStarPred = "->*";

struct Rule {
  std::string label;
  Term lhs;
  Term rhs;

  bool operator==(const Rule&) const = default;
};

/// An order-sorted term rewriting system with its signature.
struct OSTRS {
  std::string name;
  SortedSignature sig;
  std::vector<Rule> rules;
};

/// Installs `->` and `->*` at (top, top) for every connected component.
inline void install_rewrite_predicates(SortedSignature& sig) {
  for (std::size_t c = 0; c < sig.poset.components().size(); ++c) {
    auto top = sig.poset.top_of_component(c);
    if (!top) continue;
    sig.preds.push_back(PredRank{kStepPred, {*top, *top}});
    sig.preds.push_back(PredRank{kStarPred, {*top, *top}});
  }
}

/// Enforces the OSTRS invariants on a rule, throwing IllTypedRule.
inline void check_rule(const SortedSignature& sig, const Rule& r) {
  SortId l = 0;
  SortId rs = 0;
  try {
    l = least_sort(r.lhs, sig);
    rs = least_sort(r.rhs, sig);
  } catch (const IllTyped& e) {
    throw IllTypedRule(std::string("rule ") + r.label + ": " + e.what());
  }
  if (!sig.poset.same_component(l, rs)) {
    throw IllTypedRule("rule " + r.label + ": sides have sorts '" + sig.poset.name(l) + "' and '" +
                       sig.poset.name(rs) + "' in different components");
  }
}

namespace detail {

struct Token {
  std::string text;
  std::size_t line = 1;
  std::size_t col = 1;
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto is_special = [](char c) { return c == '(' || c == ')' || c == ',' || c == '[' || c == ']'; };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (src.substr(i, 3) == "---" || src.substr(i, 3) == "***") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t{std::string(), line, col};
    if (is_special(c)) {
      t.text = c;
      advance(1);
    } else {
      std::size_t j = i;
      while (j < src.size() && !std::isspace(static_cast<unsigned char>(src[j])) && !is_special(src[j])) ++j;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    }
    out.push_back(std::move(t));
  }
  return out;
}

struct RawTerm {
  std::string name;
  std::vector<RawTerm> args;
  bool applied = false;
  std::size_t line = 0;
  std::size_t col = 0;
};

struct RawRule {
  std::string label;
  RawTerm lhs;
  RawTerm rhs;
};

struct RawOp {
  std::string name;
  std::vector<std::string> args;
  std::string result;
  std::size_t line = 0;
  std::size_t col = 0;
};

class ModuleParser {
 public:
  explicit ModuleParser(std::string_view text) : toks_(tokenize(text)) {}

  OSTRS parse() {
    expect("mod");
    std::string name = take_name("module name");
    expect("is");
    while (!at("endm")) {
      if (pos_ >= toks_.size()) fail("missing 'endm'");
      statement();
    }
    expect("endm");
    if (pos_ != toks_.size()) fail("unexpected text after 'endm'");
    return build(std::move(name));
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    if (pos_ < toks_.size()) throw SyntaxError(what, toks_[pos_].line, toks_[pos_].col);
    std::size_t line = toks_.empty() ? 1 : toks_.back().line;
    std::size_t col = toks_.empty() ? 1 : toks_.back().col + toks_.back().text.size();
    throw SyntaxError(what, line, col);
  }

  bool at(std::string_view t) const { return pos_ < toks_.size() && toks_[pos_].text == t; }

  void expect(std::string_view t) {
    if (!at(t)) fail("expected '" + std::string(t) + "'");
    ++pos_;
  }

  static bool reserved(const std::string& s) {
    return s == "." || s == ":" || s == "->" || s == "=>" || s == "<" || s == "(" || s == ")" ||
           s == "," || s == "[" || s == "]";
  }

  std::string take_name(const char* what) {
    if (pos_ >= toks_.size() || reserved(toks_[pos_].text)) fail(std::string("expected ") + what);
    return toks_[pos_++].text;
  }

  void statement() {
    const Token& kw = toks_[pos_];
    if (kw.text == "sort" || kw.text == "sorts") {
      ++pos_;
      do {
        sorts_.push_back(take_name("sort name"));
      } while (!at("."));
      expect(".");
    } else if (kw.text == "subsort" || kw.text == "subsorts") {
      ++pos_;
      std::vector<std::string> lower;
      do {
        lower.push_back(take_name("sort name"));
      } while (!at("<") && !at("."));
      if (!at("<")) fail("expected '<'");
      while (at("<")) {
        ++pos_;
        std::vector<std::string> upper;
        do {
          upper.push_back(take_name("sort name"));
        } while (!at("<") && !at("."));
        for (const auto& lo : lower) {
          for (const auto& hi : upper) subsorts_.push_back({lo, hi, kw.line, kw.col});
        }
        lower = std::move(upper);
      }
      expect(".");
    } else if (kw.text == "op" || kw.text == "ops") {
      ++pos_;
      std::vector<std::string> names;
      do {
        names.push_back(take_name("operator name"));
      } while (kw.text == "ops" && !at(":"));
      expect(":");
      std::vector<std::string> args;
      while (!at("->")) args.push_back(take_name("sort name"));
      expect("->");
      std::string result = take_name("result sort");
      if (at("[")) fail("operator attributes are not supported");
      expect(".");
      for (auto& n : names) ops_.push_back(RawOp{n, args, result, kw.line, kw.col});
    } else if (kw.text == "var" || kw.text == "vars") {
      ++pos_;
      std::vector<std::string> names;
      do {
        names.push_back(take_name("variable name"));
      } while (!at(":"));
      expect(":");
      std::string sort = take_name("sort name");
      expect(".");
      for (auto& n : names) vars_.push_back({n, sort, kw.line, kw.col});
    } else if (kw.text == "rl") {
      ++pos_;
      RawRule r;
      if (at("[")) {
        ++pos_;
        r.label = take_name("rule label");
        expect("]");
        expect(":");
      } else {
        r.label = std::to_string(rules_.size() + 1);
      }
      r.lhs = term();
      expect("=>");
      r.rhs = term();
      expect(".");
      rules_.push_back(std::move(r));
    } else {
      fail("unsupported statement '" + kw.text + "'");
    }
  }

  RawTerm term() {
    RawTerm t;
    if (pos_ < toks_.size()) {
      t.line = toks_[pos_].line;
      t.col = toks_[pos_].col;
    }
    t.name = take_name("term");
    if (at("(")) {
      ++pos_;
      t.applied = true;
      t.args.push_back(term());
      while (at(",")) {
        ++pos_;
        t.args.push_back(term());
      }
      expect(")");
    }
    return t;
  }

  struct RawSubsort {
    std::string lo, hi;
    std::size_t line, col;
  };
  struct RawVar {
    std::string name, sort;
    std::size_t line, col;
  };

  SortId sort_id(const SubsortPoset& p, const std::string& s, std::size_t line, std::size_t col) const {
    if (auto id = p.find(s)) return *id;
    throw UnknownSort(std::to_string(line) + ":" + std::to_string(col) + ": unknown sort '" + s + "'");
  }

  Term resolve(const SortedSignature& sig, const RawTerm& raw, const std::string& rule) const {
    auto where = std::to_string(raw.line) + ":" + std::to_string(raw.col) + ": ";
    if (!raw.applied) {
      if (auto v = sig.vars.find(raw.name); v != sig.vars.end()) return make_var(raw.name, v->second);
      if (!sig.ranks_of(raw.name, 0).empty()) return make_app(sig, raw.name, {});
      throw UndeclaredVariable(where + "'" + raw.name + "' is neither a declared variable nor a constant");
    }
    std::vector<Term> args;
    for (const auto& a : raw.args) args.push_back(resolve(sig, a, rule));
    if (sig.ranks_of(raw.name, args.size()).empty()) {
      throw IllTypedRule(where + "rule " + rule + ": no operator '" + raw.name + "' with " +
                         std::to_string(args.size()) + " arguments");
    }
    try {
      return make_app(sig, raw.name, std::move(args));
    } catch (const IllTyped& e) {
      throw IllTypedRule(where + "rule " + rule + ": " + e.what());
    }
  }

  OSTRS build(std::string name) const {
    std::vector<std::pair<std::string, std::string>> decls;
    for (const auto& s : subsorts_) {
      for (const auto& n : {s.lo, s.hi}) {
        if (std::find(sorts_.begin(), sorts_.end(), n) == sorts_.end()) {
          throw UnknownSort(std::to_string(s.line) + ":" + std::to_string(s.col) + ": unknown sort '" + n + "'");
        }
      }
      decls.emplace_back(s.lo, s.hi);
    }
    OSTRS trs;
    trs.name = std::move(name);
    SortedSignature& sig = trs.sig;
    sig.poset = SubsortPoset::build(sorts_, decls);
    for (const auto& op : ops_) {
      RankDecl r{op.name, {}, sort_id(sig.poset, op.result, op.line, op.col)};
      for (const auto& a : op.args) r.args.push_back(sort_id(sig.poset, a, op.line, op.col));
      if (std::find(sig.funcs.begin(), sig.funcs.end(), r) == sig.funcs.end()) sig.funcs.push_back(r);
    }
    for (const auto& v : vars_) {
      SortId s = sort_id(sig.poset, v.sort, v.line, v.col);
      auto [it, fresh] = sig.vars.emplace(v.name, s);
      if (!fresh && it->second != s) {
        throw SyntaxError("variable '" + v.name + "' declared at two sorts", v.line, v.col);
      }
    }
    install_rewrite_predicates(sig);
    auto diag = check_signature(sig);
    if (!diag.ok()) {
      std::string msg = "signature check failed:";
      for (const auto& f : diag.failures) msg += " " + f + ";";
      throw SignatureCheckFailure(msg);
    }
    for (const auto& raw : rules_) {
      Rule r{raw.label, resolve(sig, raw.lhs, raw.label), resolve(sig, raw.rhs, raw.label)};
      check_rule(sig, r);
      trs.rules.push_back(std::move(r));
    }
    return trs;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> sorts_;
  std::vector<RawSubsort> subsorts_;
  std::vector<RawOp> ops_;
  std::vector<RawVar> vars_;
  std::vector<RawRule> rules_;
};

}  // namespace detail

/// Parses a module; the signature is checked and `->`, `->*` are installed
/// at every component top.
inline OSTRS parse_module(std::string_view text) { return detail::ModuleParser(text).parse(); }

}  // namespace ossynth
