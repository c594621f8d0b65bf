#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "ossynth/error.hpp"

namespace ossynth {

using Rational = mpq_class;

/// Parses "3", "-2", "1/2", "-7/4" or a plain decimal such as "0.25".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty number");
  auto dot = s.find('.');
  try {
    if (dot == std::string::npos) {
      Rational q(s, 10);
      if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
      q.canonicalize();
      return q;
    }
    bool neg = s[0] == '-';
    std::string digits = s.substr(neg ? 1 : 0);
    dot = digits.find('.');
    std::string whole = digits.substr(0, dot);
    std::string frac = digits.substr(dot + 1);
    if (whole.empty()) whole = "0";
    for (char c : whole + frac) {
      if (c < '0' || c > '9') throw ParseError("bad decimal '" + s + "'");
    }
    mpz_class num(whole + frac, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rational q(num, den);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  } catch (const std::invalid_argument&) {
    throw ParseError("bad number '" + s + "'");
  }
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Also right for uncanonicalized values such as Rational(4, 2).
inline bool is_integer(const Rational& q) { return mpz_divisible_p(q.get_num_mpz_t(), q.get_den_mpz_t()) != 0; }

}  // namespace ossynth
