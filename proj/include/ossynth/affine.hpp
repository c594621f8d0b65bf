#pragma once

// Linear expressions over semantic variables whose coefficients are
// parameter polynomials, and implications between them.

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ossynth/polynomial.hpp"

namespace ossynth {

struct LinExprP {
  std::map<std::string, Polynomial> terms;
  Polynomial constant;

  static LinExprP var(const std::string& x) {
    LinExprP e;
    e.terms[x] = Polynomial(1);
    return e;
  }
  static LinExprP constant_of(Polynomial c) {
    LinExprP e;
    e.constant = std::move(c);
    return e;
  }

  LinExprP& operator+=(const LinExprP& o) {
    for (const auto& [x, c] : o.terms) terms[x] += c;
    constant += o.constant;
    prune();
    return *this;
  }
  LinExprP& operator-=(const LinExprP& o) {
    for (const auto& [x, c] : o.terms) terms[x] -= c;
    constant -= o.constant;
    prune();
    return *this;
  }
  friend LinExprP operator+(LinExprP a, const LinExprP& b) { return a += b; }
  friend LinExprP operator-(LinExprP a, const LinExprP& b) { return a -= b; }
  friend LinExprP operator*(const Polynomial& k, const LinExprP& e) {
    LinExprP out;
    for (const auto& [x, c] : e.terms) out.terms[x] = k * c;
    out.constant = k * e.constant;
    out.prune();
    return out;
  }

  Polynomial coeff(const std::string& x) const {
    auto it = terms.find(x);
    return it == terms.end() ? Polynomial() : it->second;
  }

  unsigned degree() const {
    unsigned d = constant.degree();
    for (const auto& [x, c] : terms) d = std::max(d, c.degree());
    return d;
  }

  bool operator==(const LinExprP&) const = default;

 private:
  void prune() {
    std::erase_if(terms, [](const auto& kv) { return kv.second.is_zero(); });
  }
};

/// Normalized atom  sum_x coeffs[x]*x >= rhs.
struct LinAtom {
  std::map<std::string, Polynomial> coeffs;
  Polynomial rhs;

  /// lhs >= rhs + margin, with variables moved left and constants right.
  static LinAtom geq(const LinExprP& lhs, const LinExprP& rhs, const Polynomial& margin = Polynomial()) {
    LinExprP d = lhs - rhs;
    return LinAtom{d.terms, rhs.constant + margin - lhs.constant};
  }

  bool operator==(const LinAtom&) const = default;
};

/// forall vars (premises => conclusion), every atom normalized.
struct AffineImplication {
  std::string tag;
  std::vector<std::string> vars;
  std::vector<LinAtom> premises;
  LinAtom conclusion;
  std::ptrdiff_t sentence = -1;  // index into the theory, -1 for structural constraints

  bool operator==(const AffineImplication&) const = default;
};

/// Every atom only mentions quantified variables.
inline bool is_affine_form(const AffineImplication& im) {
  auto closed = [&](const LinAtom& a) {
    return std::all_of(a.coeffs.begin(), a.coeffs.end(), [&](const auto& kv) {
      return std::find(im.vars.begin(), im.vars.end(), kv.first) != im.vars.end();
    });
  };
  return closed(im.conclusion) && std::all_of(im.premises.begin(), im.premises.end(), closed);
}

inline std::string atom_to_string(const LinAtom& a, const ParamRegistry& reg) {
  std::string out;
  for (const auto& [x, c] : a.coeffs) {
    std::string term;
    std::string cs = c.to_string(reg);
    if (cs == "1") {
      term = x;
    } else if (cs == "-1") {
      term = "-" + x;
    } else if (c.terms().size() == 1) {
      term = cs + "*" + x;
    } else {
      term = "(" + cs + ")*" + x;
    }
    if (out.empty()) {
      out = term;
    } else if (term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  if (out.empty()) out = "0";
  return out + " >= " + a.rhs.to_string(reg);
}

inline nlohmann::ordered_json implication_to_json(const AffineImplication& im, const ParamRegistry& reg) {
  auto atom = [&](const LinAtom& a) {
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::object();
    for (const auto& [x, c] : a.coeffs) coeffs[x] = c.to_string(reg);
    return nlohmann::ordered_json{{"coeffs", coeffs}, {"rhs", a.rhs.to_string(reg)}, {"text", atom_to_string(a, reg)}};
  };
  nlohmann::ordered_json premises = nlohmann::ordered_json::array();
  for (const auto& p : im.premises) premises.push_back(atom(p));
  return {{"tag", im.tag}, {"vars", im.vars}, {"premises", premises}, {"conclusion", atom(im.conclusion)}};
}

}  // namespace ossynth
