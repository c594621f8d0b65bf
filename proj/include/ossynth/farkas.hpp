#pragma once

// Quantifier elimination for affine implications: A x >= b => c.x >= beta
// holds if some lambda >= 0 has c = A^T lambda and lambda.b >= beta.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ossynth/affine.hpp"
#include "ossynth/polynomial.hpp"

namespace ossynth {

enum class Rel { Eq, Geq };

struct PolyConstraint {
  Polynomial lhs;
  Rel rel = Rel::Geq;
  Polynomial rhs;

  bool operator==(const PolyConstraint&) const = default;

  bool holds(const std::map<ParamId, Rational>& a, const ParamRegistry* reg = nullptr) const {
    Rational l = lhs.evaluate(a, reg);
    Rational r = rhs.evaluate(a, reg);
    return rel == Rel::Eq ? l == r : l >= r;
  }

  std::string to_string(const ParamRegistry& reg) const {
    return lhs.to_string(reg) + (rel == Rel::Eq ? " = " : " >= ") + rhs.to_string(reg);
  }
};

struct FarkasCertificate {
  std::size_t implication = 0;
  std::vector<ParamId> lambdas;  // one per premise row
};

/// Matrix view of an implication: rows A_i, b_i and conclusion c, beta.
struct AffineMatrix {
  std::vector<std::vector<Polynomial>> A;
  std::vector<Polynomial> b;
  std::vector<Polynomial> c;
  Polynomial beta;
};

inline AffineMatrix to_matrix(const AffineImplication& im) {
  if (!is_affine_form(im)) throw NotAffine("implication '" + im.tag + "' mentions unquantified variables");
  AffineMatrix m;
  for (const auto& p : im.premises) {
    std::vector<Polynomial> row;
    for (const auto& x : im.vars) row.push_back(p.coeffs.count(x) ? p.coeffs.at(x) : Polynomial());
    m.A.push_back(std::move(row));
    m.b.push_back(p.rhs);
  }
  for (const auto& x : im.vars) m.c.push_back(im.conclusion.coeffs.count(x) ? im.conclusion.coeffs.at(x) : Polynomial());
  m.beta = im.conclusion.rhs;
  return m;
}

namespace detail {

inline bool mentions_lambda(const Polynomial& p, const ParamRegistry& reg) {
  for (ParamId q : p.params()) {
    if (reg.kind(q) == ParamKind::Lambda) return true;
  }
  return false;
}

}  // namespace detail

/// Fresh multipliers `lambda.<n>.<j>` (n = implication number, 1-based) and
/// the constraints: one equality per variable, the bound, and lambda >= 0.
inline std::pair<FarkasCertificate, std::vector<PolyConstraint>> eliminate(const AffineImplication& im,
                                                                          ParamRegistry& reg,
                                                                          std::size_t index) {
  AffineMatrix m = to_matrix(im);
  auto check = [&](const Polynomial& p) {
    if (detail::mentions_lambda(p, reg)) throw NotAffine("implication '" + im.tag + "' already mentions multipliers");
  };
  for (const auto& row : m.A) {
    for (const auto& e : row) check(e);
  }
  for (const auto& e : m.b) check(e);
  for (const auto& e : m.c) check(e);
  check(m.beta);

  FarkasCertificate cert;
  cert.implication = index;
  for (std::size_t i = 0; i < m.A.size(); ++i) {
    cert.lambdas.push_back(
        reg.add("lambda." + std::to_string(index + 1) + "." + std::to_string(i + 1), ParamKind::Lambda));
  }
  std::vector<PolyConstraint> out;
  for (std::size_t j = 0; j < im.vars.size(); ++j) {
    Polynomial sum;
    for (std::size_t i = 0; i < m.A.size(); ++i) sum += m.A[i][j] * Polynomial::param(cert.lambdas[i]);
    out.push_back(PolyConstraint{m.c[j], Rel::Eq, sum});
  }
  Polynomial lb;
  for (std::size_t i = 0; i < m.A.size(); ++i) lb += Polynomial::param(cert.lambdas[i]) * m.b[i];
  out.push_back(PolyConstraint{lb, Rel::Geq, m.beta});
  for (ParamId l : cert.lambdas) out.push_back(PolyConstraint{Polynomial::param(l), Rel::Geq, Polynomial()});
  return {cert, out};
}

/// Exact check of the Farkas conditions for numeric multipliers.
inline bool certify(const AffineImplication& im, const std::vector<Rational>& lambda,
                    const std::map<ParamId, Rational>& params, const ParamRegistry* reg = nullptr) {
  AffineMatrix m = to_matrix(im);
  if (lambda.size() != m.A.size()) return false;
  for (const auto& l : lambda) {
    if (l < 0) return false;
  }
  for (std::size_t j = 0; j < m.c.size(); ++j) {
    Rational sum = 0;
    for (std::size_t i = 0; i < m.A.size(); ++i) sum += lambda[i] * m.A[i][j].evaluate(params, reg);
    if (sum != m.c[j].evaluate(params, reg)) return false;
  }
  Rational lb = 0;
  for (std::size_t i = 0; i < m.A.size(); ++i) lb += lambda[i] * m.b[i].evaluate(params, reg);
  return lb >= m.beta.evaluate(params, reg);
}

/// All implications with their certificates and the flat constraint list.
struct ConstraintSystem {
  ParamRegistry reg;
  std::vector<AffineImplication> impls;
  std::vector<FarkasCertificate> certs;
  std::vector<PolyConstraint> constraints;
  std::vector<std::ptrdiff_t> block;  // per constraint: implication index, -1 if global
};

inline ConstraintSystem eliminate_all(ParamRegistry reg, std::vector<AffineImplication> impls) {
  ConstraintSystem sys;
  sys.reg = std::move(reg);
  sys.impls = std::move(impls);
  for (std::size_t i = 0; i < sys.impls.size(); ++i) {
    auto [cert, cs] = eliminate(sys.impls[i], sys.reg, i);
    sys.certs.push_back(std::move(cert));
    for (auto& c : cs) {
      sys.constraints.push_back(std::move(c));
      sys.block.push_back(static_cast<std::ptrdiff_t>(i));
    }
  }
  return sys;
}

inline void add_global(ConstraintSystem& sys, PolyConstraint c) {
  sys.constraints.push_back(std::move(c));
  sys.block.push_back(-1);
}

inline nlohmann::ordered_json constraints_to_json(const ConstraintSystem& sys) {
  nlohmann::ordered_json params = nlohmann::ordered_json::array();
  for (ParamId p = 0; p < sys.reg.size(); ++p) {
    params.push_back({{"name", sys.reg.name(p)}, {"kind", kind_name(sys.reg.kind(p))}});
  }
  nlohmann::ordered_json cs = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < sys.constraints.size(); ++i) {
    nlohmann::ordered_json j{{"text", sys.constraints[i].to_string(sys.reg)}};
    if (sys.block[i] >= 0) j["implication"] = sys.impls[static_cast<std::size_t>(sys.block[i])].tag;
    cs.push_back(j);
  }
  return {{"params", params}, {"constraints", cs}};
}

}  // namespace ossynth
