#include <gtest/gtest.h>

#include "brute_force.hpp"

#include "bfoml/error.hpp"
#include "bfoml/generator.hpp"
#include "bfoml/oracle.hpp"
#include "bfoml/parser.hpp"

namespace bfoml {
namespace {

Formula P(const char* text) { return parse_formula(text); }

constexpr auto kInc = DomainSemantics::Increasing;
constexpr auto kConst = DomainSemantics::Constant;

TEST(Oracle, VacuousBoxInOneWorld) {
  auto r = enumerate_sat(P("E x [] P(x)"), 1, 1, kInc);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->model.worlds.size(), 1u);
  EXPECT_EQ(r->root, "w0");
  EXPECT_TRUE(check(r->model, r->root, r->assignment, P("E x [] P(x)")));
}

TEST(Oracle, LiteralClashHasNoModel) {
  for (std::size_t w = 1; w <= 4; ++w) {
    EXPECT_FALSE(enumerate_sat(P("(P(x) & !P(x))"), w, 3, kInc).has_value());
    EXPECT_FALSE(enumerate_sat(P("(P(x) & !P(x))"), w, 3, kConst).has_value());
  }
}

TEST(Oracle, SeparationFormulaHasOneWorldConstantModel) {
  // Both conjuncts hold vacuously at a world without successors.
  const Formula f = P("(A x [] A y [] !P(x) & A z [] E u <> P(u))");
  auto c = enumerate_sat(f, 4, 3, kConst);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->model.worlds.size(), 1u);
  EXPECT_TRUE(enumerate_sat(f, 4, 3, kInc).has_value());
}

TEST(Oracle, SeparationFormulaWithSuccessor) {
  const Formula f = P("((A x [] A y [] !P(x) & A z [] E u <> P(u)) & E v <> T)");
  EXPECT_FALSE(enumerate_sat(f, 4, 3, kConst).has_value());
  auto inc = enumerate_sat(f, 4, 3, kInc);
  ASSERT_TRUE(inc.has_value());
  EXPECT_EQ(inc->model.worlds.size(), 2u);
  EXPECT_FALSE(is_constant_domain(inc->model));
}

TEST(Oracle, FreeVariablesAreAssigned) {
  const Formula f = P("(P(a) & !P(b))");
  auto r = enumerate_sat(f, 1, 2, kInc);
  ASSERT_TRUE(r.has_value());
  EXPECT_NE(r->assignment.at(Var("a")), r->assignment.at(Var("b")));
  EXPECT_FALSE(enumerate_sat(f, 4, 1, kInc).has_value());
}

TEST(Oracle, MinimalWorldCount) {
  auto r = enumerate_sat(P("E x <> E y <> E z <> P(z)"), 4, 1, kInc);
  ASSERT_TRUE(r.has_value());
  // A self-loop suffices.
  EXPECT_EQ(r->model.worlds.size(), 1u);
}

TEST(Oracle, BudgetIsEnforced) {
  EXPECT_THROW(enumerate_sat(P("E x <> E y <> (P(x) & P(y))"), 4, 3, kInc, 2), ResourceLimit);
}

TEST(Oracle, Deterministic) {
  const Formula f = P("(E x <> P(x) & A y [] E z <> !P(y))");
  auto a = enumerate_sat(f, 4, 3, kInc);
  auto b = enumerate_sat(f, 4, 3, kInc);
  ASSERT_TRUE(a && b);
  EXPECT_EQ(a->model, b->model);
}

TEST(Oracle, AgreesWithBruteForce) {
  GeneratorOptions o;
  o.max_modal_depth = 2;
  o.max_boolean_depth = 2;
  o.predicates = 2;
  o.max_arity = 1;
  o.free_variables = 1;
  o.conjuncts = 1;
  for (auto sem : {kInc, kConst}) {
    Generator gen(sem == kInc ? 21 : 22, o);
    int sat = 0, unsat = 0;
    for (int i = 0; i < 60; ++i) {
      Formula f = gen.formula();
      const bool brute = testing::brute_force_sat(f, sem);
      const bool solver = enumerate_sat(f, 2, 2, sem).has_value();
      ASSERT_EQ(brute, solver) << to_string(f) << " under " << to_string(sem);
      (brute ? sat : unsat)++;
    }
    EXPECT_GT(sat, 5);
    EXPECT_GT(unsat, 5);
  }
}

TEST(Oracle, RandomModelsVerify) {
  GeneratorOptions o;
  Generator gen(23, o);
  for (int i = 0; i < 100; ++i) {
    Formula f = gen.formula();
    for (auto sem : {kInc, kConst}) {
      auto r = enumerate_sat(f, 3, 2, sem);
      if (!r) continue;
      EXPECT_FALSE(validate(r->model).has_value());
      if (sem == kConst) EXPECT_TRUE(is_constant_domain(r->model));
      EXPECT_TRUE(check(r->model, r->root, r->assignment, f)) << to_string(f);
    }
  }
}

}  // namespace
}  // namespace bfoml
