#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace ossynth;

namespace {

ConstraintSystem delta_only(std::vector<PolyConstraint> cs) {
  ConstraintSystem sys;
  sys.reg.add("delta", ParamKind::Delta);
  for (auto& c : cs) add_global(sys, std::move(c));
  return sys;
}

}  // namespace

TEST(Solver, ContradictionHasNoSolution) {
  auto d = Polynomial::param(0);
  auto sys = delta_only({{d, Rel::Geq, Polynomial(1)}, {Polynomial() - d, Rel::Geq, Polynomial()}});
  auto res = solve(sys);
  EXPECT_EQ(res.status, SolveStatus::NoSolution);
  EXPECT_STREQ(status_name(res.status), "no-solution");
}

TEST(Solver, EmptySystemAndFreeParameters) {
  ConstraintSystem sys;
  sys.reg.add("b", ParamKind::DomainBound);
  auto res = solve(sys);
  ASSERT_EQ(res.status, SolveStatus::Sat);
  EXPECT_EQ(res.assignment.at(0), 0);
}

TEST(Solver, SimplestFirstOrder) {
  std::vector<Rational> dom{-2, -1, 0, 1, 2, Rational(1, 2)};
  std::vector<std::size_t> want{2, 5, 3, 1, 4, 0};
  EXPECT_EQ(simplest_first(dom), want);
}

TEST(Solver, CheckAssignmentOnReferenceValues) {
  auto pb = build_problem(fixtures::toyama(), fixtures::forced_dummies());
  auto pub = fixtures::reference_assignment(pb.system);
  ASSERT_TRUE(pub.missing.empty());
  EXPECT_TRUE(check_assignment(pb.system, pub.assignment));
  auto zero_delta = pub.assignment;
  zero_delta[pb.system.reg.id("delta")] = 0;
  EXPECT_FALSE(check_assignment(pb.system, zero_delta));
  auto bad_f = pub.assignment;
  bad_f[pb.system.reg.id("f.1")] = 0;
  auto first = first_violation(pb.system, bad_f);
  ASSERT_TRUE(first.has_value());
  EXPECT_FALSE(pb.system.constraints[*first].holds(bad_f, &pb.system.reg));
}

TEST(Solver, ToyamaDeterministicAndConsistent) {
  auto pb = build_problem(fixtures::toyama());
  auto a = solve(pb.system);
  auto b = solve(pb.system);
  ASSERT_EQ(a.status, SolveStatus::Sat);
  EXPECT_EQ(a.assignment, b.assignment);
  EXPECT_EQ(a.stats.nodes, b.stats.nodes);
  EXPECT_TRUE(check_assignment(pb.system, a.assignment));
}

TEST(Solver, DeclarationOrderAgrees) {
  auto pb = build_problem(fixtures::overloaded());
  auto cfg = SolveConfig::defaults();
  cfg.order = VarOrder::Declaration;
  auto res = solve(pb.system, cfg);
  ASSERT_EQ(res.status, SolveStatus::Sat);
  EXPECT_TRUE(check_assignment(pb.system, res.assignment));
}

TEST(Solver, Timeout) {
  auto pb = build_problem(fixtures::toyama_merged());
  auto cfg = SolveConfig::defaults();
  cfg.timeout_seconds = 1e-9;
  EXPECT_EQ(solve(pb.system, cfg).status, SolveStatus::Timeout);
}

TEST(Solver, OverridesByName) {
  auto pb = build_problem(fixtures::toyama());
  auto cfg = SolveConfig::defaults();
  cfg.overrides["g.0"] = {Rational(0)};
  auto res = solve(pb.system, cfg);
  ASSERT_EQ(res.status, SolveStatus::Sat);
  EXPECT_EQ(res.assignment.at(pb.system.reg.id("g.0")), 0);
  EXPECT_TRUE(check_assignment(pb.system, res.assignment));
}

// Random polynomial systems over small domains with a planted solution.
TEST(Solver, FindsPlantedSolutions) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> nparams(2, 7), ncons(1, 8), coef(-2, 2), pick01(0, 1);
  for (int iter = 0; iter < 150; ++iter) {
    ConstraintSystem sys;
    const int n = nparams(rng);
    Assignment planted;
    for (int i = 0; i < n; ++i) {
      bool row = pick01(rng);
      auto p = sys.reg.add("p" + std::to_string(i), row ? ParamKind::DomainRow : ParamKind::Coeff);
      planted[p] = row ? coef(rng) / 2 : std::uniform_int_distribution<int>(0, 2)(rng);
    }
    std::uniform_int_distribution<int> which(0, n - 1);
    const int m = ncons(rng);
    for (int c = 0; c < m; ++c) {
      Polynomial poly;
      for (int t = 0; t < 3; ++t) {
        Polynomial term(coef(rng));
        int deg = std::uniform_int_distribution<int>(1, 2)(rng);
        for (int d = 0; d < deg; ++d) term = term * Polynomial::param(which(rng));
        poly += term;
      }
      Rational v = poly.evaluate(planted, &sys.reg);
      if (pick01(rng)) {
        add_global(sys, {poly, Rel::Eq, Polynomial(v)});
      } else {
        add_global(sys, {poly, Rel::Geq, Polynomial(v - std::uniform_int_distribution<int>(0, 1)(rng))});
      }
    }
    ASSERT_TRUE(check_assignment(sys, planted));
    auto res = solve(sys);
    ASSERT_EQ(res.status, SolveStatus::Sat) << "iteration " << iter;
    EXPECT_TRUE(check_assignment(sys, res.assignment));
  }
}

// Numeric Farkas blocks: planted certificates must be found by the multiplier
// search.
TEST(Solver, FindsPlantedCertificates) {
  std::mt19937_64 rng(5);
  std::vector<AffineImplication> impls;
  for (int i = 0; i < 40; ++i) impls.push_back(fixtures::random_implication(rng, true).im);
  auto sys = eliminate_all(ParamRegistry{}, impls);
  auto res = solve(sys);
  ASSERT_EQ(res.status, SolveStatus::Sat);
  EXPECT_TRUE(check_assignment(sys, res.assignment));
}
