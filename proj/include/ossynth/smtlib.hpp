#pragma once

// SMT-LIB 2.6 emission of a constraint system and parsing of get-model
// answers.

#include <cctype>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ossynth/farkas.hpp"
#include "ossynth/solver.hpp"

namespace ossynth {

namespace detail {

inline std::string smt_symbol(const std::string& name) { return "|" + name + "|"; }

inline std::string smt_integer(const mpz_class& z, bool real) {
  std::string digits = mpz_class(abs(z)).get_str();
  if (real) digits += ".0";
  return z < 0 ? "(- " + digits + ")" : digits;
}

inline std::string smt_number(const Rational& q, bool real) {
  if (q.get_den() == 1) return smt_integer(q.get_num(), real);
  return "(/ " + smt_integer(q.get_num(), true) + " " + smt_integer(q.get_den(), true) + ")";
}

inline std::string smt_poly(const Polynomial& p, const ParamRegistry& reg, bool real) {
  if (p.is_zero()) return smt_number(0, real);
  std::vector<std::string> terms;
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::string> factors;
    if (m.empty() || c != 1) factors.push_back(smt_number(c, real));
    for (const auto& [q, e] : m) {
      for (unsigned k = 0; k < e; ++k) factors.push_back(smt_symbol(reg.name(q)));
    }
    if (factors.size() == 1) {
      terms.push_back(factors[0]);
    } else {
      std::string t = "(*";
      for (const auto& f : factors) t += " " + f;
      terms.push_back(t + ")");
    }
  }
  if (terms.size() == 1) return terms[0];
  std::string out = "(+";
  for (const auto& t : terms) out += " " + t;
  return out + ")";
}

}  // namespace detail

/// Integer logic iff every search domain, the multiplier grid included, is
/// integral.
inline bool smt_is_integral(const ConstraintSystem& sys, const SolveConfig& cfg) {
  for (ParamId p = 0; p < sys.reg.size(); ++p) {
    for (const auto& v : cfg.domain_of(sys.reg, p)) {
      if (!is_integer(v)) return false;
    }
  }
  return true;
}

/// Finite domains become disjunctions; multipliers are only constrained to be
/// nonnegative, so a solver may pick any real (or integer) certificate.
inline std::string emit_smtlib(const ConstraintSystem& sys, const SolveConfig& cfg) {
  const bool integral = smt_is_integral(sys, cfg);
  const bool real = !integral;
  const char* sort = integral ? "Int" : "Real";
  std::ostringstream out;
  out << "(set-logic " << (integral ? "QF_NIA" : "QF_NRA") << ")\n";
  out << "(set-option :produce-models true)\n";
  for (ParamId p = 0; p < sys.reg.size(); ++p) {
    out << "(declare-fun " << detail::smt_symbol(sys.reg.name(p)) << " () " << sort << ")\n";
  }
  for (ParamId p = 0; p < sys.reg.size(); ++p) {
    const std::string s = detail::smt_symbol(sys.reg.name(p));
    if (sys.reg.kind(p) == ParamKind::Lambda) {
      out << "(assert (>= " << s << " " << detail::smt_number(0, real) << "))\n";
      continue;
    }
    const auto& dom = cfg.domain_of(sys.reg, p);
    if (dom.size() == 1) {
      out << "(assert (= " << s << " " << detail::smt_number(dom[0], real) << "))\n";
      continue;
    }
    out << "(assert (or";
    for (const auto& v : dom) out << " (= " << s << " " << detail::smt_number(v, real) << ")";
    out << "))\n";
  }
  for (const auto& c : sys.constraints) {
    out << "(assert (" << (c.rel == Rel::Eq ? "=" : ">=") << " " << detail::smt_poly(c.lhs, sys.reg, real) << " "
        << detail::smt_poly(c.rhs, sys.reg, real) << "))\n";
  }
  out << "(check-sat)\n(get-model)\n";
  return out.str();
}

namespace detail {

struct SExpr {
  std::string atom;
  std::vector<SExpr> list;
  bool is_list = false;
};

class SExprReader {
 public:
  explicit SExprReader(std::string_view s) : s_(s) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip();
    while (i_ < s_.size()) {
      out.push_back(read());
      skip();
    }
    return out;
  }

 private:
  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
      } else if (s_[i_] == ';') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  SExpr read() {
    skip();
    if (i_ >= s_.size()) throw ParseError("unexpected end of model");
    SExpr e;
    if (s_[i_] == '(') {
      ++i_;
      e.is_list = true;
      skip();
      while (i_ < s_.size() && s_[i_] != ')') {
        e.list.push_back(read());
        skip();
      }
      if (i_ >= s_.size()) throw ParseError("unbalanced parenthesis in model");
      ++i_;
      return e;
    }
    if (s_[i_] == ')') throw ParseError("unexpected ')' in model");
    if (s_[i_] == '|') {
      auto end = s_.find('|', i_ + 1);
      if (end == std::string_view::npos) throw ParseError("unterminated quoted symbol");
      e.atom = std::string(s_.substr(i_ + 1, end - i_ - 1));
      i_ = end + 1;
      return e;
    }
    if (s_[i_] == '"') {
      auto end = s_.find('"', i_ + 1);
      if (end == std::string_view::npos) throw ParseError("unterminated string");
      e.atom = std::string(s_.substr(i_, end - i_ + 1));
      i_ = end + 1;
      return e;
    }
    std::size_t j = i_;
    while (j < s_.size() && !std::isspace(static_cast<unsigned char>(s_[j])) && s_[j] != '(' && s_[j] != ')') ++j;
    e.atom = std::string(s_.substr(i_, j - i_));
    i_ = j;
    return e;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

inline Rational smt_value(const SExpr& e) {
  if (!e.is_list) return parse_rational(e.atom);
  if (e.list.size() == 2 && !e.list[0].is_list && e.list[0].atom == "-") return -smt_value(e.list[1]);
  if (e.list.size() == 3 && !e.list[0].is_list && e.list[0].atom == "/") {
    Rational d = smt_value(e.list[2]);
    if (d == 0) throw ParseError("division by zero in model value");
    return smt_value(e.list[1]) / d;
  }
  if (e.list.size() == 2 && !e.list[0].is_list && e.list[0].atom == "to_real") return smt_value(e.list[1]);
  throw ParseError("unsupported model value");
}

inline void collect_defs(const SExpr& e, std::map<std::string, Rational>& out) {
  if (!e.is_list) return;
  if (!e.list.empty() && !e.list[0].is_list && e.list[0].atom == "define-fun") {
    if (e.list.size() != 5 || e.list[1].is_list || !e.list[2].is_list || !e.list[2].list.empty()) {
      throw ParseError("malformed define-fun");
    }
    out[e.list[1].atom] = smt_value(e.list[4]);
    return;
  }
  for (const auto& sub : e.list) collect_defs(sub, out);
}

}  // namespace detail

/// Bindings of a get-model answer (with or without the `model` wrapper).
inline std::map<std::string, Rational> parse_smt_model(std::string_view text) {
  std::map<std::string, Rational> out;
  for (const auto& e : detail::SExprReader(text).read_all()) {
    if (!e.is_list && (e.atom == "sat" || e.atom == "unsat" || e.atom == "unknown")) {
      if (e.atom != "sat") throw ParseError("solver answered " + e.atom);
      continue;
    }
    detail::collect_defs(e, out);
  }
  return out;
}

/// Maps a parsed model onto the registry; every parameter must be bound.
inline Assignment to_assignment(const std::map<std::string, Rational>& model, const ParamRegistry& reg) {
  Assignment a;
  for (ParamId p = 0; p < reg.size(); ++p) {
    auto it = model.find(reg.name(p));
    if (it == model.end()) throw MissingBinding("model has no value for '" + reg.name(p) + "'");
    a[p] = it->second;
  }
  return a;
}

}  // namespace ossynth
