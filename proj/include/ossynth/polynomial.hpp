#pragma once

// Parameters and polynomials over parameters with exact rational
// coefficients.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ossynth/error.hpp"
#include "ossynth/rational.hpp"

namespace ossynth {

using ParamId = std::size_t;

enum class ParamKind { DomainRow, DomainBound, Coeff, Const, Dummy, LowerBound, Delta, Lambda };

inline const char* kind_name(ParamKind k) {
  switch (k) {
    case ParamKind::DomainRow: return "domain-row";
    case ParamKind::DomainBound: return "domain-bound";
    case ParamKind::Coeff: return "coeff";
    case ParamKind::Const: return "const";
    case ParamKind::Dummy: return "dummy";
    case ParamKind::LowerBound: return "lower-bound";
    case ParamKind::Delta: return "delta";
    case ParamKind::Lambda: return "lambda";
  }
  return "?";
}

/// Names and kinds of parameters, in creation order.
class ParamRegistry {
 public:
  ParamId add(const std::string& name, ParamKind kind) {
    if (index_.count(name)) throw Error("duplicate parameter '" + name + "'");
    index_.emplace(name, names_.size());
    names_.push_back(name);
    kinds_.push_back(kind);
    return names_.size() - 1;
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(ParamId p) const { return names_.at(p); }
  ParamKind kind(ParamId p) const { return kinds_.at(p); }

  std::optional<ParamId> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  ParamId id(const std::string& name) const {
    if (auto p = find(name)) return *p;
    throw Error("unknown parameter '" + name + "'");
  }

 private:
  std::vector<std::string> names_;
  std::vector<ParamKind> kinds_;
  std::unordered_map<std::string, ParamId> index_;
};

/// Sorted (parameter, exponent) factors; empty means the constant monomial.
using Monomial = std::vector<std::pair<ParamId, unsigned>>;

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

inline unsigned mono_degree(const Monomial& m) {
  unsigned d = 0;
  for (const auto& f : m) d += f.second;
  return d;
}

/// Polynomial in canonical form: no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& c) {  // NOLINT: implicit on purpose
    if (c != 0) terms_.emplace(Monomial{}, c);
  }
  Polynomial(int c) : Polynomial(Rational(c)) {}  // NOLINT

  static Polynomial param(ParamId p) {
    Polynomial out;
    out.terms_.emplace(Monomial{{p, 1}}, Rational(1));
    return out;
  }

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

  Rational constant() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
    return d;
  }

  std::set<ParamId> params() const {
    std::set<ParamId> out;
    for (const auto& [m, c] : terms_) {
      for (const auto& f : m) out.insert(f.first);
    }
    return out;
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) { return Polynomial() - a; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) out.add_term(mono_mul(ma, mb), ca * cb);
    }
    return out;
  }

  bool operator==(const Polynomial&) const = default;

  /// Exact value; every parameter must be bound.
  template <class Lookup>
  Rational evaluate(Lookup&& value_of) const {
    Rational sum = 0;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (const auto& [p, e] : m) {
        const Rational& v = value_of(p);
        for (unsigned k = 0; k < e; ++k) t *= v;
      }
      sum += t;
    }
    return sum;
  }

  Rational evaluate(const std::map<ParamId, Rational>& a, const ParamRegistry* reg = nullptr) const {
    return evaluate([&](ParamId p) -> const Rational& {
      auto it = a.find(p);
      if (it == a.end()) {
        throw UnboundParam("parameter '" + (reg ? reg->name(p) : std::to_string(p)) + "' is unbound");
      }
      return it->second;
    });
  }

  /// Replaces the bound parameters by their values.
  Polynomial partial(const std::map<ParamId, Rational>& a) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
      Rational coef = c;
      Monomial rest;
      for (const auto& [p, e] : m) {
        auto it = a.find(p);
        if (it == a.end()) {
          rest.emplace_back(p, e);
        } else {
          for (unsigned k = 0; k < e; ++k) coef *= it->second;
        }
      }
      out.add_term(rest, coef);
    }
    return out;
  }

  std::string to_string(const ParamRegistry& reg) const {
    if (terms_.empty()) return "0";
    std::string out;
    auto emit = [&](const Monomial& m, const Rational& c) {
      Rational mag = abs(c);
      if (out.empty()) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      bool first = true;
      if (m.empty() || mag != 1) {
        out += mag.get_str();
        first = false;
      }
      for (const auto& [p, e] : m) {
        for (unsigned k = 0; k < e; ++k) {
          if (!first) out += "*";
          out += reg.name(p);
          first = false;
        }
      }
    };
    for (const auto& [m, c] : terms_) {
      if (!m.empty()) emit(m, c);
    }
    if (auto it = terms_.find(Monomial{}); it != terms_.end()) emit(it->first, it->second);
    return out;
  }

 private:
  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<Monomial, Rational> terms_;
};

}  // namespace ossynth
