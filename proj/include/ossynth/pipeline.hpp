#pragma once

// parse -> theory -> parameters -> derived implications -> Farkas -> solve
// -> model -> verification -> verdict.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ossynth/derivor.hpp"
#include "ossynth/farkas.hpp"
#include "ossynth/interp.hpp"
#include "ossynth/maude.hpp"
#include "ossynth/model.hpp"
#include "ossynth/solver.hpp"
#include "ossynth/theory.hpp"

namespace ossynth {

struct PipelineOptions {
  StructuralOptions structural;
  SimplifyOptions simplify;
  SolveConfig solve = SolveConfig::defaults();
  Rational min_delta = 1;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
};

/// Everything up to (and including) the constraint system.
struct Problem {
  OSTRS trs;
  Theory theory;
  ParamInterp interp;
  std::vector<AffineImplication> derived;     // straight from the theory
  std::vector<AffineImplication> structural;  // non-emptiness, bounds, subsorts, algebraicity, overloads
  ConstraintSystem system;
  std::vector<bool> nonempty_required;        // by sort
};

inline Problem build_problem(OSTRS trs, const PipelineOptions& opt = {}) {
  Problem pb;
  pb.trs = std::move(trs);
  const auto& sig = pb.trs.sig;
  pb.theory = generate_theory(pb.trs);
  pb.interp = make_param_interp(sig);
  auto add = [&](std::vector<AffineImplication> v) {
    for (auto& im : v) pb.structural.push_back(std::move(im));
  };
  add(non_emptiness_constraints(pb.interp, sig, opt.structural));
  add(bounded_below_constraints(pb.interp, sig, opt.structural));
  add(subsort_constraints(pb.interp, sig.poset));
  add(algebraicity_constraints(pb.interp, sig));
  add(overload_constraints(pb.interp, sig));
  pb.derived = derive_theory(pb.theory, pb.interp);

  std::vector<AffineImplication> all = pb.structural;
  for (const auto& im : pb.derived) all.push_back(im);
  all = simplify(all, opt.simplify, pb.interp.delta);
  pb.system = eliminate_all(pb.interp.reg, std::move(all));
  add_global(pb.system, PolyConstraint{Polynomial::param(pb.interp.delta), Rel::Geq, Polynomial(opt.min_delta)});

  pb.nonempty_required.assign(sig.poset.size(), false);
  for (const auto& im : pb.system.impls) {
    if (im.tag.rfind("nonempty(", 0) == 0) {
      auto name = im.tag.substr(9, im.tag.find(')') - 9);
      pb.nonempty_required[sig.poset.id(name)] = true;
    }
  }
  return pb;
}

inline Problem build_problem(std::string_view module_text, const PipelineOptions& opt = {}) {
  return build_problem(parse_module(module_text), opt);
}

struct Outcome {
  SolveResult solve;
  std::optional<ConcreteModel> model;
  Report report;
  Verdict verdict;
};

/// Turns an assignment (solver or external) into a model, report and verdict.
inline Outcome assess(const Problem& pb, const Assignment& a, const PipelineOptions& opt) {
  Outcome out;
  out.solve.status = SolveStatus::Sat;
  out.solve.assignment = a;
  if (auto bad = first_violation(pb.system, a)) {
    out.verdict = unknown_verdict("assignment violates " + pb.system.constraints[*bad].to_string(pb.system.reg));
    return out;
  }
  try {
    out.model = instantiate_model(a, pb.interp, pb.trs.sig, pb.nonempty_required);
  } catch (const EmptyDomain& e) {
    out.verdict = unknown_verdict(e.what());
    return out;
  }
  out.report = verify_model(*out.model, pb.theory, pb.system, a, opt.samples, opt.seed);
  out.verdict = termination_verdict(*out.model, out.report, pb.trs.sig);
  return out;
}

inline Outcome run_pipeline(const Problem& pb, const PipelineOptions& opt = {}) {
  SolveResult res = solve(pb.system, opt.solve);
  if (res.status != SolveStatus::Sat) {
    Outcome out;
    out.solve = res;
    out.verdict = unknown_verdict(res.status == SolveStatus::Timeout ? "timeout" : "search exhausted");
    return out;
  }
  Outcome out = assess(pb, res.assignment, opt);
  out.solve = res;
  return out;
}

}  // namespace ossynth
