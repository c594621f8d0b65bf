#include <gtest/gtest.h>

#include "support.hpp"

using namespace ossynth;

namespace {

std::string module(const std::string& body) { return "mod M is\n" + body + "endm\n"; }

const char* kTwoSorts = "  sorts A B .\n  op a : -> A .\n  op b : -> B .\n  op f : A -> A .\n";

}  // namespace

TEST(Parser, ToyamaModule) {
  auto trs = fixtures::toyama();
  EXPECT_EQ(trs.name, "ToyamaOS");
  EXPECT_EQ(trs.sig.poset.size(), 3u);
  EXPECT_EQ(trs.sig.funcs.size(), 4u);
  ASSERT_EQ(trs.rules.size(), 3u);
  EXPECT_EQ(trs.rules[0].label, "1");
  EXPECT_EQ(to_string(trs.rules[0].lhs), "f(0,1,x)");
  EXPECT_EQ(to_string(trs.rules[0].rhs), "f(x,x,x)");
  EXPECT_EQ(trs.sig.poset.name(trs.rules[0].lhs.args[2].sort), "S2");
  EXPECT_EQ(trs.sig.vars.at("y"), trs.sig.poset.id("S1"));
  // -> and ->* at the tops S and S1
  ASSERT_EQ(trs.sig.preds.size(), 4u);
  for (const auto& p : trs.sig.preds) {
    EXPECT_EQ(p.args[0], p.args[1]);
    EXPECT_EQ(trs.sig.poset.top(p.args[0]), p.args[0]);
  }
}

TEST(Parser, CommentsLabelsAndMultiDeclarations) {
  auto trs = parse_module(
      "*** header\nmod M is --- trailing\n"
      "  sorts A B C .\n  subsorts A B < C .\n  ops a b : -> A .\n  op h : C C -> C .\n"
      "  vars X Y : C .\n  rl [swap] : h(X, Y) => h(Y, X) .\n  rl h(a, b) => a .\nendm\n");
  EXPECT_EQ(trs.sig.poset.covering_pairs().size(), 2u);
  EXPECT_EQ(trs.sig.funcs.size(), 3u);
  ASSERT_EQ(trs.rules.size(), 2u);
  EXPECT_EQ(trs.rules[0].label, "swap");
  EXPECT_EQ(trs.rules[1].label, "2");
}

TEST(Parser, UndeclaredVariable) {
  std::string text = fixtures::read_data("toyama.maude");
  text.replace(text.find("rl g(y,z) => y"), 14, "rl g(y,z) => w");
  EXPECT_THROW(parse_module(text), UndeclaredVariable);
}

TEST(Parser, SidesInDifferentComponents) {
  EXPECT_THROW(parse_module(module(std::string(kTwoSorts) + "  rl f(a) => b .\n")), IllTypedRule);
}

TEST(Parser, IllTypedApplication) {
  EXPECT_THROW(parse_module(module(std::string(kTwoSorts) + "  rl f(b) => a .\n")), IllTypedRule);
  EXPECT_THROW(parse_module(module(std::string(kTwoSorts) + "  rl f(a, a) => a .\n")), IllTypedRule);
  EXPECT_THROW(parse_module(module(std::string(kTwoSorts) + "  rl q(a) => a .\n")), IllTypedRule);
}

TEST(Parser, SyntaxErrorsCarryPositions) {
  try {
    parse_module("mod M is\n  sorts A .\n  op a : -> A\nendm\n");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_EQ(e.col(), 1u);
  }
  EXPECT_THROW(parse_module("mod M is sorts A . eq a = a . endm"), SyntaxError);
  EXPECT_THROW(parse_module("mod M is sorts A ."), SyntaxError);
  EXPECT_THROW(parse_module("module M is endm"), SyntaxError);
  EXPECT_THROW(parse_module("mod M is sorts A . endm extra"), SyntaxError);
}

TEST(Parser, SortErrors) {
  EXPECT_THROW(parse_module(module("  sorts A .\n  op a : -> Z .\n")), Error);
  EXPECT_THROW(parse_module(module("  sorts A B .\n  subsort A < B .\n  subsort B < A .\n")), CycleError);
}

TEST(Parser, RejectsBrokenSignatures) {
  EXPECT_THROW(parse_module(module("  sorts A B .\n  subsort A < B .\n  op c : -> A .\n  op c : -> B .\n")),
               SignatureCheckFailure);
}
