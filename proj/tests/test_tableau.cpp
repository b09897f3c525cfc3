#include <gtest/gtest.h>

#include "bfoml/error.hpp"
#include "bfoml/generator.hpp"
#include "bfoml/oracle.hpp"
#include "bfoml/parser.hpp"
#include "bfoml/syntax.hpp"
#include "bfoml/tableau.hpp"

namespace bfoml {
namespace {

Formula P(const char* text) { return parse_formula(text); }

VarSet vars(std::initializer_list<const char*> names) {
  VarSet out;
  for (const char* n : names) out.insert(Var(n));
  return out;
}

FormulaSet set(std::initializer_list<const char*> texts) {
  FormulaSet out;
  for (const char* t : texts) out.insert(P(t));
  return out;
}

// Increasing tableau

TEST(Increasing, VacuousBox) {
  auto r = decide_increasing(P("E x [] P(x)"));
  ASSERT_TRUE(r.sat);
  const KripkeModel& m = *r.model;
  EXPECT_EQ(m.worlds, std::vector<std::string>{"r"});
  EXPECT_EQ(m.local.at("r"), std::set<std::string>{"z"});
  EXPECT_TRUE(m.rho.empty());
  EXPECT_TRUE(m.edges.empty());
  EXPECT_TRUE(check(m, "r", r.assignment, P("E x [] P(x)")));
}

TEST(Increasing, BoxAgainstUniversalDiamond) {
  EXPECT_FALSE(decide_increasing(P("(E x [] P(x) & A y <> !P(y))")).sat);
}

TEST(Increasing, LiteralClash) {
  auto r = decide_increasing(P("(P(x) & !P(x))"));
  EXPECT_FALSE(r.sat);
  EXPECT_GE(r.nodes, 1u);
}

TEST(Increasing, DiamondChain) {
  auto r = decide_increasing(P("E x <> P(x)"));
  ASSERT_TRUE(r.sat);
  const KripkeModel& m = *r.model;
  ASSERT_EQ(m.worlds.size(), 2u);
  const std::string child = m.worlds[1];
  EXPECT_EQ(child, "r.v_{x}");
  EXPECT_EQ(m.edges, (std::vector<std::pair<std::string, std::string>>{{"r", child}}));
  EXPECT_EQ(m.local.at("r"), (std::set<std::string>{"x", "z"}));
  EXPECT_EQ(m.rho.at(child).at("P"), (std::set<Tuple>{{"x"}}));
  EXPECT_FALSE(validate(m).has_value());
}

TEST(Increasing, ExpandExistsDiamond) {
  Expansion e = expand_increasing(Label{"r", set({"E x <> P(x)"}), vars({"z"})});
  EXPECT_EQ(e.rule, Rule::BR);
  ASSERT_EQ(e.children.size(), 1u);
  EXPECT_EQ(e.children[0].gamma, set({"P(x)"}));
  EXPECT_EQ(e.children[0].vars, vars({"x", "z"}));
  EXPECT_EQ(e.domain, vars({"x", "z"}));
}

TEST(Increasing, ExpandForallDiamond) {
  Expansion e = expand_increasing(Label{"r", set({"A y <> P(y)"}), vars({"z"})});
  EXPECT_EQ(e.rule, Rule::BR);
  ASSERT_EQ(e.children.size(), 1u);
  EXPECT_EQ(e.children[0].gamma, set({"P(z)"}));
  EXPECT_EQ(e.children[0].world, "r.v^{z}_{y}");
}

TEST(Increasing, ExpandEnd) {
  Expansion e = expand_increasing(Label{"r", set({"E x [] P(x)", "Q(z)"}), vars({"z"})});
  EXPECT_EQ(e.rule, Rule::End);
  ASSERT_EQ(e.children.size(), 1u);
  EXPECT_EQ(e.children[0].gamma, set({"Q(z)"}));
}

TEST(Increasing, ExpandBooleanFirst) {
  Expansion e = expand_increasing(Label{"r", set({"(P(z) & E x <> Q(x))"}), vars({"z"})});
  EXPECT_EQ(e.rule, Rule::And);
  EXPECT_EQ(e.children[0].gamma, set({"P(z)", "E x <> Q(x)"}));
  e = expand_increasing(Label{"r", set({"(P(z) | Q(z))"}), vars({"z"})});
  EXPECT_EQ(e.rule, Rule::Or);
  ASSERT_EQ(e.children.size(), 2u);
  EXPECT_EQ(e.children[0].gamma, set({"P(z)"}));
  EXPECT_EQ(e.children[1].gamma, set({"Q(z)"}));
}

TEST(Increasing, BoxCopiesAreRenamedApart) {
  // Two copies of the A[] body, one per element of F' = {x, z}; their inner
  // binders must differ for the child to be clean.
  Label l{"r", set({"E x <> T", "A u [] E v <> P(u,v)"}), vars({"z"})};
  Expansion e = expand_increasing(l);
  ASSERT_EQ(e.rule, Rule::BR);
  ASSERT_EQ(e.children.size(), 1u);
  EXPECT_EQ(e.children[0].gamma, set({"E v <> P(x,v)", "E v_1 <> P(z,v_1)"}));
}

TEST(Increasing, TopAndBot) {
  EXPECT_TRUE(decide_increasing(P("T")).sat);
  EXPECT_FALSE(decide_increasing(P("F")).sat);
  EXPECT_FALSE(decide_increasing(P("E x <> F")).sat);
  EXPECT_TRUE(decide_increasing(P("E x [] F")).sat);
  EXPECT_TRUE(decide_increasing(P("A x <> T")).sat);
}

TEST(Increasing, FreeVariableNamedZ) {
  auto r = decide_increasing(P("(P(z) & E x <> !P(z))"));
  ASSERT_TRUE(r.sat);
  EXPECT_TRUE(r.assignment.count(Var("z_1")));
}

TEST(Increasing, TraceListsClosedNodes) {
  TableauOptions o;
  o.trace = true;
  auto r = decide_increasing(P("((P(a) | Q(a)) & !P(a))"), o);
  ASSERT_TRUE(r.sat);
  const std::string text = format_trace(r.trace);
  EXPECT_NE(text.find("(closed)"), std::string::npos);
  EXPECT_NE(text.find("r [or]"), std::string::npos);
  EXPECT_EQ(r.trace.size(), r.nodes);
}

TEST(Increasing, BudgetIsEnforced) {
  TableauOptions o;
  o.node_budget = 3;
  EXPECT_THROW(decide_increasing(P("E x <> E y <> E u <> (P(x) & P(u))"), o), ResourceLimit);
}

// Constant tableau

TEST(Constant, BuildDomain) {
  auto p = build_domain(P("E x [] P(x)"));
  EXPECT_EQ(p.depth, 1u);
  EXPECT_EQ(p.exists_vars, vars({"x"}));
  EXPECT_EQ(p.pools.at(Var("x")), std::vector<Var>{Var("x_1")});
  EXPECT_EQ(p.domain, vars({"x_1", "z"}));

  p = build_domain(P("E x [] (P(x) & E y [] Q(x,y))"));
  EXPECT_EQ(p.depth, 2u);
  EXPECT_EQ(p.domain, vars({"x_1", "x_2", "y_1", "y_2", "z"}));

  p = build_domain(P("A x <> P(x)"));
  EXPECT_EQ(p.domain, vars({"z"}));

  EXPECT_THROW(build_domain(P("A x [] P(x)")), FragmentError);
  EXPECT_THROW(build_domain(P("E x <> P(x)")), FragmentError);
}

TEST(Constant, PoolsAreDisjoint) {
  auto p = build_domain(P("(E x [] E x_1 [] P(x_1) | E x [] Q(x))"));
  VarSet seen;
  std::size_t total = 0;
  for (const auto& [x, pool] : p.pools) {
    EXPECT_EQ(pool.size(), p.depth);
    seen.insert(pool.begin(), pool.end());
    total += pool.size();
  }
  EXPECT_EQ(seen.size(), total);
}

TEST(Constant, Decisions) {
  auto r = decide_constant_eb(P("E x [] P(x)"));
  ASSERT_TRUE(r.sat);
  EXPECT_EQ(r.model->worlds.size(), 1u);
  EXPECT_EQ(r.model->domain, (std::vector<std::string>{"x_1", "z"}));

  r = decide_constant_eb(P("A x <> !P(x)"));
  ASSERT_TRUE(r.sat);
  EXPECT_EQ(r.model->worlds.size(), 2u);
  EXPECT_EQ(r.model->domain, std::vector<std::string>{"z"});
  EXPECT_TRUE(r.model->rho.empty());
  EXPECT_TRUE(is_constant_domain(*r.model));

  EXPECT_FALSE(decide_constant_eb(P("(E x [] P(x) & A y <> !P(y))")).sat);
  EXPECT_THROW(decide_constant_eb(P("A x [] P(x)")), FragmentError);
}

TEST(Constant, ExpandExamples) {
  auto plan = build_domain(P("A y <> P(y)"));
  Expansion e = expand_constant(Label{"r", set({"A y <> P(y)"}), {}}, plan);
  ASSERT_EQ(e.rule, Rule::BR);
  ASSERT_EQ(e.children.size(), 1u);
  EXPECT_EQ(e.children[0].gamma, set({"P(z)"}));
  EXPECT_EQ(e.children[0].vars, vars({"z"}));

  plan = build_domain(P("(E x [] P(x) & A y <> Q(y))"));
  ASSERT_EQ(plan.domain, vars({"x_1", "z"}));
  e = expand_constant(Label{"r", set({"E x [] P(x)", "A y <> Q(y)"}), {}}, plan);
  ASSERT_EQ(e.rule, Rule::BR);
  ASSERT_EQ(e.children.size(), 2u);
  EXPECT_EQ(e.children[0].gamma, set({"P(x_1)", "Q(x_1)"}));
  EXPECT_EQ(e.children[0].vars, vars({"x_1"}));
  EXPECT_EQ(e.children[1].gamma, set({"P(x_1)", "Q(z)"}));
  EXPECT_EQ(e.children[1].vars, vars({"x_1", "z"}));

  e = expand_constant(Label{"r", set({"E x [] P(x)", "R(z)"}), {}}, plan);
  EXPECT_EQ(e.rule, Rule::End);
  EXPECT_EQ(e.children[0].gamma, set({"R(z)"}));
}

TEST(Constant, WitnessSkipsUsedVariables) {
  auto plan = build_domain(P("E x [] E y [] P(x)"));
  ASSERT_EQ(plan.pools.at(Var("x")).size(), 2u);
  Label l{"r", set({"E x [] P(x)", "A u <> T"}), vars({"x_1"})};
  Expansion e = expand_constant(l, plan);
  ASSERT_EQ(e.rule, Rule::BR);
  for (const Label& c : e.children) EXPECT_TRUE(c.gamma.count(P("P(x_2)")));
}

// Properties over generated corpora

GeneratorOptions fuzz_options(Fragment fragment) {
  GeneratorOptions o;
  o.max_modal_depth = 3;
  o.predicates = 2;
  o.max_arity = 2;
  o.fragment = fragment;
  return o;
}

TEST(Property, IncreasingAgreesWithOracle) {
  Generator gen(31, fuzz_options(Fragment::Full));
  int sat = 0;
  for (int i = 0; i < 150; ++i) {
    Formula f = gen.formula();
    auto r = decide_increasing(f);
    auto o = enumerate_sat(f, 3, 2, DomainSemantics::Increasing);
    if (o) ASSERT_TRUE(r.sat) << to_string(f);
    if (r.sat) {
      ++sat;
      EXPECT_FALSE(validate(*r.model).has_value());
      EXPECT_TRUE(check(*r.model, r.root, r.assignment, f)) << to_string(f);
    }
    EXPECT_LE(r.max_depth, 8 * f.size());
  }
  EXPECT_GT(sat, 20);
}

TEST(Property, ConstantAgreesWithOracleAndIncreasing) {
  Generator gen(32, fuzz_options(Fragment::ExistsBox));
  int sat = 0, unsat = 0;
  for (int i = 0; i < 150; ++i) {
    Formula f = gen.formula();
    auto c = decide_constant_eb(f);
    auto inc = decide_increasing(f);
    ASSERT_EQ(c.sat, inc.sat) << to_string(f);
    auto o = enumerate_sat(f, 3, 2, DomainSemantics::Constant);
    if (o) ASSERT_TRUE(c.sat) << to_string(f);
    if (c.sat) {
      ++sat;
      EXPECT_TRUE(is_constant_domain(*c.model));
      EXPECT_TRUE(check(*c.model, c.root, c.assignment, f)) << to_string(f);
    } else {
      ++unsat;
    }
  }
  EXPECT_GT(sat, 10);
  EXPECT_GT(unsat, 10);
}

}  // namespace
}  // namespace bfoml
