// ossynth: synthesize a numeric model for the theory of an order-sorted
// rewrite module and report whether it proves termination.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ossynth/ossynth.hpp"

namespace {

using namespace ossynth;

constexpr int kExitTerminating = 0;
constexpr int kExitUnknown = 1;
constexpr int kExitError = 2;

std::vector<Rational> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) throw ParseError("expected lo..hi, got '" + text + "'");
  Rational lo = parse_rational(text.substr(0, dots));
  Rational hi = parse_rational(text.substr(dots + 2));
  if (!is_integer(lo) || !is_integer(hi) || lo > hi) throw ParseError("bad integer range '" + text + "'");
  return int_range(lo.get_num().get_si(), hi.get_num().get_si());
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw ParseError("empty value list");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Cli {
  std::string input;
  bool dump_theory = false;
  bool dump_derived = false;
  bool dump_constraints = false;
  std::string smtlib_out;
  std::string smt_model_in;
  std::string coeff_domain, row_domain, const_domain, bound_domain, aux_domain, lambda_grid;
  std::string delta;
  std::size_t samples = 1000;
  double timeout = 0;
  std::uint64_t seed = 0;
  bool json = false;
  bool prune_trivial = false;
  bool force_dummies = false;
  bool bound_all_sorts = false;
};

PipelineOptions options_from(const Cli& cli) {
  PipelineOptions opt;
  opt.structural.force_dummies = cli.force_dummies;
  opt.structural.bound_all_sorts = cli.bound_all_sorts;
  opt.simplify.prune_trivial = cli.prune_trivial;
  opt.samples = cli.samples;
  opt.seed = cli.seed;
  auto& d = opt.solve.domains;
  if (!cli.coeff_domain.empty()) d[ParamKind::Coeff] = parse_range(cli.coeff_domain);
  if (!cli.row_domain.empty()) d[ParamKind::DomainRow] = parse_range(cli.row_domain);
  if (!cli.const_domain.empty()) d[ParamKind::Const] = parse_range(cli.const_domain);
  if (!cli.bound_domain.empty()) d[ParamKind::DomainBound] = parse_range(cli.bound_domain);
  if (!cli.aux_domain.empty()) {
    d[ParamKind::Dummy] = parse_range(cli.aux_domain);
    d[ParamKind::LowerBound] = d[ParamKind::Dummy];
  }
  if (!cli.lambda_grid.empty()) d[ParamKind::Lambda] = parse_list(cli.lambda_grid);
  if (!cli.delta.empty()) {
    Rational v = parse_rational(cli.delta);
    if (v <= 0) throw Error("--delta must be positive");
    d[ParamKind::Delta] = {v};
    opt.min_delta = v;
  }
  opt.solve.timeout_seconds = cli.timeout;
  return opt;
}

nlohmann::ordered_json derived_json(const Problem& pb) {
  nlohmann::ordered_json impls = nlohmann::ordered_json::array();
  for (const auto& im : pb.system.impls) impls.push_back(implication_to_json(im, pb.system.reg));
  return {{"max_degree", max_degree(pb.system.impls)}, {"implications", impls}};
}

int run(const Cli& cli) {
  PipelineOptions opt = options_from(cli);
  Problem pb = build_problem(read_file(cli.input), opt);

  std::vector<std::pair<std::string, nlohmann::ordered_json>> dumps;
  if (cli.dump_theory) dumps.emplace_back("theory", theory_to_json(pb.theory, pb.trs.sig));
  if (cli.dump_derived) dumps.emplace_back("derived", derived_json(pb));
  if (cli.dump_constraints) dumps.emplace_back("constraints", constraints_to_json(pb.system));
  if (dumps.size() == 1) {
    std::cout << dumps[0].second.dump(2) << "\n";
    return kExitTerminating;
  }
  if (!dumps.empty()) {
    nlohmann::ordered_json all = nlohmann::ordered_json::object();
    for (auto& [k, v] : dumps) all[k] = std::move(v);
    std::cout << all.dump(2) << "\n";
    return kExitTerminating;
  }

  if (!cli.smtlib_out.empty()) {
    std::ofstream out(cli.smtlib_out, std::ios::binary);
    if (!out) throw Error("cannot write '" + cli.smtlib_out + "'");
    out << emit_smtlib(pb.system, opt.solve);
  }

  Outcome res;
  if (!cli.smt_model_in.empty()) {
    auto model = parse_smt_model(read_file(cli.smt_model_in));
    res = assess(pb, to_assignment(model, pb.system.reg), opt);
  } else {
    res = run_pipeline(pb, opt);
  }

  if (cli.json) {
    auto j = report_to_json(res.report, res.verdict, res.model ? &*res.model : nullptr);
    j["solver"] = {{"status", status_name(res.solve.status)}, {"nodes", res.solve.stats.nodes}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "module " << pb.trs.name << ": " << pb.theory.sentences.size() << " sentences, "
              << pb.system.impls.size() << " implications, " << pb.system.reg.size() << " parameters, "
              << pb.system.constraints.size() << " constraints\n";
    if (cli.smt_model_in.empty()) {
      std::cout << "solver: " << status_name(res.solve.status) << " after " << res.solve.stats.nodes << " nodes\n";
    }
    if (res.model) {
      std::cout << render_text(*res.model);
      std::size_t samples = 0, violations = 0, certified = 0;
      for (const auto& s : res.report.sentences) {
        samples += s.samples;
        violations += s.violations;
      }
      for (const auto& s : res.report.structural) certified += s.certificate_ok;
      std::cout << "verification: " << res.report.sentences.size() << " sentences, " << samples << " samples, "
                << violations << " violations; " << certified << "/" << res.report.structural.size()
                << " structural certificates valid\n";
      for (const auto& s : res.report.sentences) {
        for (const auto& f : s.failures) {
          std::cout << "  " << s.tag << " fails at";
          for (const auto& [x, v] : f.valuation) std::cout << " " << x << "=" << v.get_str();
          std::cout << ": " << f.lhs.get_str() << " vs " << f.rhs.get_str() << "\n";
        }
      }
    }
    std::cout << "verdict: " << verdict_name(res.verdict.status) << "\n";
    for (const auto& r : res.verdict.reasons) std::cout << "  " << r << "\n";
  }
  return res.verdict.status == VerdictStatus::ModelFoundTerminating ? kExitTerminating : kExitUnknown;
}

}  // namespace

int main(int argc, char** argv) {
  Cli cli;
  CLI::App app{"Synthesize a convex-domain linear model for an order-sorted rewrite module"};
  app.add_option("input", cli.input, "module file")->required();
  app.add_flag("--dump-theory", cli.dump_theory, "print the generated theory as JSON and stop");
  app.add_flag("--dump-derived", cli.dump_derived, "print the affine implications as JSON and stop");
  app.add_flag("--dump-constraints", cli.dump_constraints, "print the polynomial constraints as JSON and stop");
  app.add_option("--smtlib-out", cli.smtlib_out, "also write the constraints as an SMT-LIB2 script");
  app.add_option("--smt-model-in", cli.smt_model_in, "use an external solver's get-model answer instead of searching");
  app.add_option("--coeff-domain", cli.coeff_domain, "coefficient range lo..hi (default 0..2)");
  app.add_option("--row-domain", cli.row_domain, "domain row range lo..hi (default -1..1)");
  app.add_option("--const-domain", cli.const_domain, "constant term range lo..hi (default 0..2)");
  app.add_option("--bound-domain", cli.bound_domain, "domain bound range lo..hi (default -2..2)");
  app.add_option("--aux-domain", cli.aux_domain, "dummy element and lower bound range lo..hi (default -2..2)");
  app.add_option("--lambda-grid", cli.lambda_grid, "comma separated multiplier values (default 0,1/2,1,2)");
  app.add_option("--delta", cli.delta, "value of delta (default 1)");
  app.add_option("--samples", cli.samples, "verification samples per sentence")->capture_default_str();
  app.add_option("--timeout", cli.timeout, "search time limit in seconds, 0 for none")->capture_default_str();
  app.add_option("--seed", cli.seed, "sampling seed")->capture_default_str();
  app.add_flag("--json", cli.json, "print the report as JSON");
  app.add_flag("--prune-trivial", cli.prune_trivial, "drop implications that follow from summing premises");
  app.add_flag("--force-dummies", cli.force_dummies, "emit non-emptiness constraints even for inhabited sorts");
  app.add_flag("--bound-all-sorts", cli.bound_all_sorts, "require every sort of a strict component to be bounded below");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }
  try {
    return run(cli);
  } catch (const std::exception& e) {
    std::cerr << "ossynth: " << e.what() << "\n";
    return kExitError;
  }
}
