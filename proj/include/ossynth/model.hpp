#pragma once

// Concrete models: interval domains, linear functions and numeric
// predicates, with independent verification against the theory.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ossynth/farkas.hpp"
#include "ossynth/interp.hpp"
#include "ossynth/os_core.hpp"
#include "ossynth/solver.hpp"
#include "ossynth/theory.hpp"

namespace ossynth {

/// Closed interval with optional infinite ends; `empty` overrides the bounds.
struct Interval {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  bool empty = false;

  bool contains(const Rational& x) const {
    return !empty && (!lo || *lo <= x) && (!hi || x <= *hi);
  }
  bool is_point() const { return !empty && lo && hi && *lo == *hi; }
  bool bounded_below() const { return empty || lo.has_value(); }

  bool operator==(const Interval& o) const {
    if (empty || o.empty) return empty == o.empty;
    return lo == o.lo && hi == o.hi;
  }
};

/// Intersection of the half-lines C_i x >= b_i.
inline Interval interval_from_rows(const std::vector<std::pair<Rational, Rational>>& rows) {
  Interval iv;
  for (const auto& [C, b] : rows) {
    if (C == 0) {
      if (b > 0) iv.empty = true;
      continue;
    }
    Rational bound = b / C;
    if (C > 0) {
      if (!iv.lo || bound > *iv.lo) iv.lo = bound;
    } else {
      if (!iv.hi || bound < *iv.hi) iv.hi = bound;
    }
  }
  if (iv.lo && iv.hi && *iv.lo > *iv.hi) iv.empty = true;
  if (iv.empty) iv.lo = iv.hi = std::nullopt;
  return iv;
}

/// inner is a subset of outer.
inline bool interval_subset(const Interval& inner, const Interval& outer) {
  if (inner.empty) return true;
  if (outer.empty) return false;
  bool lo_ok = !outer.lo || (inner.lo && *inner.lo >= *outer.lo);
  bool hi_ok = !outer.hi || (inner.hi && *inner.hi <= *outer.hi);
  return lo_ok && hi_ok;
}

inline std::string interval_to_string(const Interval& iv) {
  if (iv.empty) return "∅";
  if (iv.is_point()) return "{" + iv.lo->get_str() + "}";
  std::string lo = iv.lo ? "[" + iv.lo->get_str() : "(-inf";
  std::string hi = iv.hi ? iv.hi->get_str() + "]" : "+inf)";
  return lo + ", " + hi;
}

struct ConcreteModel {
  struct Sort {
    std::string name;
    Interval domain;
    bool operator==(const Sort&) const = default;
  };
  struct Func {
    std::string symbol;
    std::string label;  // disambiguated for overloaded symbols
    std::vector<std::string> args;
    std::string result;
    std::vector<Rational> coeffs;
    Rational constant;
    bool operator==(const Func&) const = default;
  };
  struct Pred {
    std::string symbol;
    std::vector<std::string> args;
    PredKind kind = PredKind::Geq;
    bool operator==(const Pred&) const = default;
  };

  std::vector<Sort> sorts;  // by SortId
  std::vector<Func> funcs;  // by rank
  std::vector<Pred> preds;  // by predicate rank
  Rational delta;
  std::vector<std::pair<std::string, Rational>> assignment;  // non-multiplier parameters

  bool operator==(const ConcreteModel&) const = default;
};

/// `required[s]` marks sorts that must be inhabited (EmptyDomain otherwise).
inline ConcreteModel instantiate_model(const Assignment& a, const ParamInterp& pi, const SortedSignature& sig,
                                       const std::vector<bool>& required = {}) {
  auto val = [&](ParamId p) -> const Rational& {
    auto it = a.find(p);
    if (it == a.end()) throw UnboundParam("parameter '" + pi.reg.name(p) + "' is unbound");
    return it->second;
  };
  ConcreteModel m;
  for (SortId s = 0; s < sig.poset.size(); ++s) {
    const auto& d = pi.domains[s];
    std::vector<std::pair<Rational, Rational>> rows;
    for (std::size_t i = 0; i < kRows; ++i) rows.emplace_back(val(d.C[i]), val(d.b[i]));
    Interval iv = interval_from_rows(rows);
    if (iv.empty && s < required.size() && required[s]) {
      throw EmptyDomain("domain of sort '" + sig.poset.name(s) + "' is empty");
    }
    m.sorts.push_back({sig.poset.name(s), iv});
  }
  for (std::size_t r = 0; r < sig.funcs.size(); ++r) {
    const auto& rank = sig.funcs[r];
    ConcreteModel::Func f;
    f.symbol = rank.symbol;
    f.label = rank_label(sig, r);
    for (SortId s : rank.args) f.args.push_back(sig.poset.name(s));
    f.result = sig.poset.name(rank.result);
    for (ParamId c : pi.funcs[r].coeffs) f.coeffs.push_back(val(c));
    f.constant = val(pi.funcs[r].constant);
    m.funcs.push_back(std::move(f));
  }
  for (std::size_t r = 0; r < sig.preds.size(); ++r) {
    ConcreteModel::Pred p{sig.preds[r].symbol, {}, pi.preds[r]};
    for (SortId s : sig.preds[r].args) p.args.push_back(sig.poset.name(s));
    m.preds.push_back(std::move(p));
  }
  m.delta = val(pi.delta);
  for (ParamId p = 0; p < pi.reg.size(); ++p) {
    if (pi.reg.kind(p) == ParamKind::Lambda) continue;
    if (auto it = a.find(p); it != a.end()) m.assignment.emplace_back(pi.reg.name(p), it->second);
  }
  return m;
}

using Valuation = std::map<std::string, Rational>;

inline Rational eval_in_model(const Term& t, const ConcreteModel& m, const Valuation& v) {
  if (t.is_var()) {
    auto it = v.find(t.name);
    if (it == v.end()) throw Error("variable '" + t.name + "' has no value");
    return it->second;
  }
  const auto& f = m.funcs.at(t.rank);
  Rational out = f.constant;
  for (std::size_t i = 0; i < t.args.size(); ++i) out += f.coeffs.at(i) * eval_in_model(t.args[i], m, v);
  return out;
}

/// Both sides of a binary atom and whether it holds.
struct AtomValue {
  Rational lhs;
  Rational rhs;
  bool holds = false;
};

inline AtomValue eval_atom(const Atom& a, const ConcreteModel& m, const Valuation& v) {
  if (a.args.size() != 2 || a.rank >= m.preds.size()) {
    throw UnsupportedFormula("atom over '" + a.pred + "' has no binary numeric interpretation");
  }
  AtomValue out{eval_in_model(a.args[0], m, v), eval_in_model(a.args[1], m, v)};
  out.holds = m.preds[a.rank].kind == PredKind::GtDelta ? out.lhs >= out.rhs + m.delta : out.lhs >= out.rhs;
  return out;
}

// Deterministic valuations: first the product of characteristic points of
// every interval (endpoints and small integer steps, or the whole integer
// grid of small bounded intervals), then seeded random rationals.
class ValuationSampler {
 public:
  ValuationSampler(std::vector<Interval> domains, std::uint64_t seed) : doms_(std::move(domains)), rng_(seed) {
    for (const auto& d : doms_) points_.push_back(characteristic_points(d));
    grid_size_ = 1;
    for (const auto& p : points_) {
      grid_size_ = grid_size_ * p.size();
      if (grid_size_ > (std::uint64_t{1} << 40)) grid_size_ = std::uint64_t{1} << 40;
    }
  }

  bool vacuous() const {
    return std::any_of(doms_.begin(), doms_.end(), [](const Interval& d) { return d.empty; });
  }

  std::vector<Rational> next() {
    std::vector<Rational> out;
    if (drawn_ < grid_size_) {
      std::uint64_t k = drawn_;
      for (const auto& p : points_) {
        out.push_back(p[k % p.size()]);
        k /= p.size();
      }
    } else {
      for (const auto& d : doms_) out.push_back(random_in(d));
    }
    ++drawn_;
    return out;
  }

  static std::vector<Rational> characteristic_points(const Interval& d) {
    std::vector<Rational> pts;
    if (d.empty) return pts;
    if (d.lo && d.hi) {
      Rational width = *d.hi - *d.lo;
      if (is_integer(*d.lo) && is_integer(*d.hi) && width <= 1000) {
        for (Rational x = *d.lo; x <= *d.hi; x += 1) pts.push_back(x);
      } else {
        pts = {*d.lo, *d.hi, *d.lo + width / 2};
      }
    } else if (d.lo) {
      pts = {*d.lo, *d.lo + 1, *d.lo + 2, *d.lo + Rational(1, 2), *d.lo + 10};
    } else if (d.hi) {
      pts = {*d.hi, *d.hi - 1, *d.hi - 2, *d.hi - Rational(1, 2), *d.hi - 10};
    } else {
      pts = {0, 1, -1, 2, -2, Rational(1, 2)};
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  }

 private:
  Rational random_in(const Interval& d) {
    constexpr long kWindow = 100;
    std::uniform_int_distribution<long> den_dist(1, 8);
    long den = den_dist(rng_);
    std::uniform_int_distribution<long> num_dist(0, kWindow * den);
    Rational u(num_dist(rng_), den);  // in [0, kWindow]
    u.canonicalize();
    if (d.lo && d.hi) return *d.lo + (*d.hi - *d.lo) * u / kWindow;
    if (d.lo) return *d.lo + u;
    if (d.hi) return *d.hi - u;
    return u * 2 - kWindow;
  }

  std::vector<Interval> doms_;
  std::vector<std::vector<Rational>> points_;
  std::uint64_t grid_size_ = 0;
  std::uint64_t drawn_ = 0;
  std::mt19937_64 rng_;
};

struct SampleFailure {
  Valuation valuation;
  Rational lhs;
  Rational rhs;
};

struct SentenceReport {
  std::size_t id = 0;
  std::string tag;
  bool certificate_ok = true;
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::vector<SampleFailure> failures;  // first few witnesses
};

struct StructuralReport {
  std::string tag;
  bool certificate_ok = true;
};

struct Report {
  std::vector<SentenceReport> sentences;
  std::vector<StructuralReport> structural;

  bool ok() const {
    return std::all_of(sentences.begin(), sentences.end(),
                       [](const SentenceReport& s) { return s.certificate_ok && s.violations == 0; }) &&
           std::all_of(structural.begin(), structural.end(), [](const StructuralReport& s) { return s.certificate_ok; });
  }
};

inline constexpr std::size_t kMaxWitnesses = 5;

/// Samples `samples` valuations of the sentence inside the model's domains.
inline SentenceReport sample_sentence(const TheorySentence& ts, std::size_t id, const ConcreteModel& m,
                                      std::size_t samples, std::uint64_t seed) {
  SentenceReport rep;
  rep.id = id;
  rep.tag = ts.tag;
  std::vector<Interval> doms;
  for (const auto& [x, s] : ts.sentence.vars) doms.push_back(m.sorts.at(s).domain);
  ValuationSampler sampler(doms, seed);
  if (sampler.vacuous()) return rep;
  for (std::size_t k = 0; k < samples; ++k) {
    auto xs = sampler.next();
    Valuation v;
    for (std::size_t i = 0; i < xs.size(); ++i) v[ts.sentence.vars[i].first] = xs[i];
    ++rep.samples;
    bool premises = std::all_of(ts.sentence.premises.begin(), ts.sentence.premises.end(),
                                [&](const Atom& a) { return eval_atom(a, m, v).holds; });
    if (!premises) continue;
    AtomValue c = eval_atom(ts.sentence.conclusion, m, v);
    if (c.holds) continue;
    ++rep.violations;
    if (rep.failures.size() < kMaxWitnesses) rep.failures.push_back({v, c.lhs, c.rhs});
  }
  return rep;
}

inline std::vector<Rational> lambda_values(const FarkasCertificate& cert, const Assignment& a) {
  std::vector<Rational> out;
  for (ParamId l : cert.lambdas) {
    auto it = a.find(l);
    out.push_back(it == a.end() ? Rational(-1) : it->second);
  }
  return out;
}

/// Exact certificate re-check plus sampling of every theory sentence.
inline Report verify_model(const ConcreteModel& m, const Theory& th, const ConstraintSystem& sys, const Assignment& a,
                           std::size_t samples, std::uint64_t seed = 0) {
  Report rep;
  std::vector<bool> cert_ok(sys.impls.size(), true);
  for (std::size_t i = 0; i < sys.impls.size(); ++i) {
    cert_ok[i] = certify(sys.impls[i], lambda_values(sys.certs[i], a), a, &sys.reg);
    if (sys.impls[i].sentence < 0) rep.structural.push_back({sys.impls[i].tag, cert_ok[i]});
  }
  for (std::size_t s = 0; s < th.sentences.size(); ++s) {
    auto sr = sample_sentence(th.sentences[s], s + 1, m, samples, seed ^ (0x9e3779b97f4a7c15ULL * (s + 1)));
    for (std::size_t i = 0; i < sys.impls.size(); ++i) {
      if (sys.impls[i].sentence == static_cast<std::ptrdiff_t>(s)) sr.certificate_ok = sr.certificate_ok && cert_ok[i];
    }
    rep.sentences.push_back(std::move(sr));
  }
  return rep;
}

enum class VerdictStatus { ModelFoundTerminating, Unknown };

struct Verdict {
  VerdictStatus status = VerdictStatus::Unknown;
  std::vector<std::string> reasons;
};

inline const char* verdict_name(VerdictStatus s) {
  return s == VerdictStatus::ModelFoundTerminating ? "MODEL_FOUND_TERMINATING" : "UNKNOWN";
}

inline Verdict termination_verdict(const ConcreteModel& m, const Report& rep, const SortedSignature& sig) {
  Verdict v;
  for (const auto& s : rep.structural) {
    if (!s.certificate_ok) v.reasons.push_back("no valid certificate for " + s.tag);
  }
  for (const auto& s : rep.sentences) {
    if (!s.certificate_ok) v.reasons.push_back("no valid certificate for sentence " + s.tag);
    if (s.violations) v.reasons.push_back("sentence " + s.tag + " violated by sampling");
  }
  std::vector<bool> strict(sig.poset.components().size(), false);
  for (const auto& p : m.preds) {
    if (p.kind != PredKind::GtDelta) continue;
    for (const auto& a : p.args) strict[sig.poset.component(sig.poset.id(a))] = true;
  }
  for (SortId s = 0; s < sig.poset.size(); ++s) {
    if (strict[sig.poset.component(s)] && !m.sorts[s].domain.bounded_below()) {
      v.reasons.push_back("A(" + m.sorts[s].name + ") is not bounded from below");
    }
  }
  if (m.delta <= 0) v.reasons.push_back("delta is not positive");
  v.status = v.reasons.empty() ? VerdictStatus::ModelFoundTerminating : VerdictStatus::Unknown;
  return v;
}

inline Verdict unknown_verdict(std::string reason) {
  Verdict v;
  v.reasons.push_back(std::move(reason));
  return v;
}

// ---------------------------------------------------------------------------
// Structural checks on concrete models.

/// Declared subsort pairs whose intervals are not nested.
inline std::vector<std::pair<SortId, SortId>> containment_failures(const ConcreteModel& m, const SubsortPoset& poset) {
  std::vector<std::pair<SortId, SortId>> out;
  for (const auto& [lo, hi] : poset.strict_pairs()) {
    if (!interval_subset(m.sorts[lo].domain, m.sorts[hi].domain)) out.emplace_back(lo, hi);
  }
  return out;
}

inline Rational apply_func(const ConcreteModel::Func& f, const std::vector<Rational>& xs) {
  Rational out = f.constant;
  for (std::size_t i = 0; i < xs.size(); ++i) out += f.coeffs[i] * xs[i];
  return out;
}

/// Number of sampled argument tuples mapped outside the result domain.
inline std::size_t algebraicity_violations(const ConcreteModel& m, const SortedSignature& sig, std::size_t samples,
                                           std::uint64_t seed = 0) {
  std::size_t bad = 0;
  for (std::size_t r = 0; r < sig.funcs.size(); ++r) {
    std::vector<Interval> doms;
    for (SortId s : sig.funcs[r].args) doms.push_back(m.sorts[s].domain);
    ValuationSampler sampler(doms, seed ^ (r + 1));
    if (sampler.vacuous()) continue;
    const std::size_t n = doms.empty() ? 1 : samples;
    for (std::size_t k = 0; k < n; ++k) {
      if (!m.sorts[sig.funcs[r].result].domain.contains(apply_func(m.funcs[r], sampler.next()))) ++bad;
    }
  }
  return bad;
}

/// Number of sampled points of the smaller rank's domain where two related
/// overloads disagree.
inline std::size_t overload_violations(const ConcreteModel& m, const SortedSignature& sig, std::size_t samples,
                                       std::uint64_t seed = 0) {
  std::size_t bad = 0;
  for (std::size_t r = 0; r < sig.funcs.size(); ++r) {
    for (std::size_t q = 0; q < sig.funcs.size(); ++q) {
      const auto& a = sig.funcs[r];
      const auto& b = sig.funcs[q];
      if (r == q || a.symbol != b.symbol || a.args.size() != b.args.size()) continue;
      if (!leq_string(a.args, b.args, sig.poset)) continue;
      std::vector<Interval> doms;
      for (SortId s : a.args) doms.push_back(m.sorts[s].domain);
      ValuationSampler sampler(doms, seed ^ (r * 131 + q));
      if (sampler.vacuous()) continue;
      const std::size_t n = doms.empty() ? 1 : samples;
      for (std::size_t k = 0; k < n; ++k) {
        auto xs = sampler.next();
        if (apply_func(m.funcs[r], xs) != apply_func(m.funcs[q], xs)) ++bad;
      }
    }
  }
  return bad;
}

// ---------------------------------------------------------------------------
// Rendering.

inline std::string linear_to_string(const std::vector<Rational>& coeffs, const Rational& constant,
                                    const std::vector<std::string>& vars) {
  std::string out;
  auto emit = [&](const Rational& c, const std::string& x) {
    Rational mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (x.empty()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += x;
    }
  };
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) emit(coeffs[i], vars[i]);
  }
  if (constant != 0 || out.empty()) emit(constant, "");
  return out;
}

inline std::string render_text(const ConcreteModel& m) {
  std::ostringstream out;
  for (const auto& s : m.sorts) out << "A(" << s.name << ") = " << interval_to_string(s.domain) << "\n";
  for (const auto& f : m.funcs) {
    auto xs = arg_names(f.args.size());
    out << f.label;
    if (!xs.empty()) {
      out << "(";
      for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? "," : "") << xs[i];
      out << ")";
    }
    out << " = " << linear_to_string(f.coeffs, f.constant, xs) << "\n";
  }
  for (const auto& p : m.preds) {
    out << "t " << p.symbol << "[";
    for (std::size_t i = 0; i < p.args.size(); ++i) out << (i ? " " : "") << p.args[i];
    out << "] t' <=> ";
    if (p.kind == PredKind::GtDelta) {
      out << "t >_" << m.delta.get_str() << " t'  (t >= t' + " << m.delta.get_str() << ")\n";
    } else {
      out << "t >= t'\n";
    }
  }
  return out.str();
}

inline nlohmann::ordered_json interval_to_json(const Interval& iv) {
  nlohmann::ordered_json j;
  j["empty"] = iv.empty;
  j["lower"] = iv.lo ? nlohmann::ordered_json(iv.lo->get_str()) : nlohmann::ordered_json(nullptr);
  j["upper"] = iv.hi ? nlohmann::ordered_json(iv.hi->get_str()) : nlohmann::ordered_json(nullptr);
  j["text"] = interval_to_string(iv);
  return j;
}

inline nlohmann::ordered_json model_to_json(const ConcreteModel& m) {
  nlohmann::ordered_json sorts = nlohmann::ordered_json::array();
  for (const auto& s : m.sorts) sorts.push_back({{"name", s.name}, {"domain", interval_to_json(s.domain)}});
  nlohmann::ordered_json funcs = nlohmann::ordered_json::array();
  for (const auto& f : m.funcs) {
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
    for (const auto& c : f.coeffs) coeffs.push_back(c.get_str());
    funcs.push_back({{"symbol", f.symbol},
                     {"label", f.label},
                     {"args", f.args},
                     {"result", f.result},
                     {"coeffs", coeffs},
                     {"constant", f.constant.get_str()}});
  }
  nlohmann::ordered_json preds = nlohmann::ordered_json::array();
  for (const auto& p : m.preds) {
    preds.push_back({{"symbol", p.symbol}, {"args", p.args}, {"kind", p.kind == PredKind::GtDelta ? "gt_delta" : "geq"}});
  }
  nlohmann::ordered_json assignment = nlohmann::ordered_json::object();
  for (const auto& [name, v] : m.assignment) assignment[name] = v.get_str();
  return {{"sorts", sorts}, {"functions", funcs}, {"predicates", preds}, {"delta", m.delta.get_str()},
          {"assignment", assignment}};
}

inline ConcreteModel model_from_json(const nlohmann::ordered_json& j) {
  auto opt = [](const nlohmann::ordered_json& v) -> std::optional<Rational> {
    if (v.is_null()) return std::nullopt;
    return parse_rational(v.get<std::string>());
  };
  try {
    ConcreteModel m;
    for (const auto& s : j.at("sorts")) {
      const auto& d = s.at("domain");
      Interval iv{opt(d.at("lower")), opt(d.at("upper")), d.at("empty").get<bool>()};
      m.sorts.push_back({s.at("name").get<std::string>(), iv});
    }
    for (const auto& f : j.at("functions")) {
      ConcreteModel::Func fn;
      fn.symbol = f.at("symbol").get<std::string>();
      fn.label = f.at("label").get<std::string>();
      fn.args = f.at("args").get<std::vector<std::string>>();
      fn.result = f.at("result").get<std::string>();
      for (const auto& c : f.at("coeffs")) fn.coeffs.push_back(parse_rational(c.get<std::string>()));
      fn.constant = parse_rational(f.at("constant").get<std::string>());
      m.funcs.push_back(std::move(fn));
    }
    for (const auto& p : j.at("predicates")) {
      auto kind = p.at("kind").get<std::string>();
      if (kind != "gt_delta" && kind != "geq") throw ParseError("unknown predicate kind '" + kind + "'");
      m.preds.push_back({p.at("symbol").get<std::string>(), p.at("args").get<std::vector<std::string>>(),
                         kind == "gt_delta" ? PredKind::GtDelta : PredKind::Geq});
    }
    m.delta = parse_rational(j.at("delta").get<std::string>());
    for (const auto& [name, v] : j.at("assignment").items()) {
      m.assignment.emplace_back(name, parse_rational(v.get<std::string>()));
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed model JSON: ") + e.what());
  }
}

inline nlohmann::ordered_json report_to_json(const Report& rep, const Verdict& v, const ConcreteModel* m) {
  nlohmann::ordered_json sentences = nlohmann::ordered_json::array();
  for (const auto& s : rep.sentences) {
    nlohmann::ordered_json failures = nlohmann::ordered_json::array();
    for (const auto& f : s.failures) {
      nlohmann::ordered_json val = nlohmann::ordered_json::object();
      for (const auto& [x, q] : f.valuation) val[x] = q.get_str();
      failures.push_back({{"valuation", val}, {"lhs", f.lhs.get_str()}, {"rhs", f.rhs.get_str()}});
    }
    sentences.push_back({{"id", s.id},
                         {"tag", s.tag},
                         {"certificate_ok", s.certificate_ok},
                         {"samples", s.samples},
                         {"violations", s.violations},
                         {"failures", failures}});
  }
  nlohmann::ordered_json structural = nlohmann::ordered_json::array();
  for (const auto& s : rep.structural) structural.push_back({{"tag", s.tag}, {"certificate_ok", s.certificate_ok}});
  nlohmann::ordered_json j{{"verdict", verdict_name(v.status)}, {"reasons", v.reasons}};
  j["note"] = "a model proves operational termination only relative to the order-sorted proof framework it is read in";
  j["sentences"] = sentences;
  j["structural"] = structural;
  j["model"] = m ? model_to_json(*m) : nlohmann::ordered_json(nullptr);
  return j;
}

}  // namespace ossynth
