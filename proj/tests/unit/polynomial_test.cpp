#include <gtest/gtest.h>

#include "support.hpp"

using namespace ossynth;

TEST(Rational, Parsing) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-1/2"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("-1.5"), Rational(-3, 2));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_TRUE(is_integer(Rational(4, 2)));
}

TEST(Registry, NamesKindsAndDuplicates) {
  ParamRegistry reg;
  auto a = reg.add("a", ParamKind::Coeff);
  auto b = reg.add("b", ParamKind::Lambda);
  EXPECT_EQ(reg.size(), 2u);
  EXPECT_EQ(reg.name(b), "b");
  EXPECT_EQ(reg.kind(a), ParamKind::Coeff);
  EXPECT_EQ(reg.id("a"), a);
  EXPECT_FALSE(reg.find("c").has_value());
  EXPECT_THROW(reg.add("a", ParamKind::Const), Error);
}

TEST(Polynomial, ArithmeticAndPrinting) {
  ParamRegistry reg;
  auto a = Polynomial::param(reg.add("a", ParamKind::Coeff));
  auto b = Polynomial::param(reg.add("b", ParamKind::Coeff));
  auto p = (a + 1) * (b - 2);
  EXPECT_EQ(p.degree(), 2u);
  EXPECT_EQ(p.to_string(reg), "-2*a + a*b + b - 2");
  EXPECT_EQ((p - p).is_zero(), true);
  EXPECT_EQ(Polynomial(Rational(-1, 2)).to_string(reg), "-1/2");
  EXPECT_EQ((a * a * b).to_string(reg), "a*a*b");
  EXPECT_TRUE(Polynomial(5).is_constant());
  EXPECT_EQ(Polynomial(5).constant(), 5);
  EXPECT_EQ(p.params().size(), 2u);
}

TEST(Polynomial, EvaluateAndPartial) {
  ParamRegistry reg;
  auto ia = reg.add("a", ParamKind::Coeff);
  auto ib = reg.add("b", ParamKind::Coeff);
  auto p = Polynomial::param(ia) * Polynomial::param(ib) + Polynomial::param(ia) * 3;
  std::map<ParamId, Rational> full{{ia, 2}, {ib, Rational(1, 2)}};
  EXPECT_EQ(p.evaluate(full, &reg), 7);
  std::map<ParamId, Rational> part{{ia, 2}};
  EXPECT_THROW(p.evaluate(part, &reg), UnboundParam);
  auto q = p.partial(part);
  EXPECT_EQ(q.to_string(reg), "2*b + 6");
}

TEST(LinExpr, NormalizedAtoms) {
  ParamRegistry reg;
  auto d = Polynomial::param(reg.add("delta", ParamKind::Delta));
  auto lhs = LinExprP::var("x") + LinExprP::constant_of(2);
  auto rhs = LinExprP::var("y") + LinExprP::var("x");
  auto atom = LinAtom::geq(lhs, rhs, d);
  EXPECT_EQ(atom.coeffs.size(), 1u);
  EXPECT_EQ(atom_to_string(atom, reg), "-y >= delta - 2");
}
