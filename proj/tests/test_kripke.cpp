#include <gtest/gtest.h>

#include <optional>

#include "bfoml/error.hpp"
#include "bfoml/generator.hpp"
#include "bfoml/kripke.hpp"
#include "bfoml/model_io.hpp"
#include "bfoml/parser.hpp"
#include "bfoml/syntax.hpp"

namespace bfoml {
namespace {

Formula P(const char* text) { return parse_formula(text); }

KripkeModel one_world() {
  KripkeModel m;
  m.worlds = {"w"};
  m.domain = {"a"};
  m.local["w"] = {"a"};
  m.rho["w"]["P"] = {{"a"}};
  return m;
}

TEST(Validate, SingleWorldOk) {
  KripkeModel m;
  m.worlds = {"w"};
  m.domain = {"d"};
  m.local["w"] = {"d"};
  EXPECT_FALSE(validate(m).has_value());
  EXPECT_TRUE(is_constant_domain(m));
}

TEST(Validate, MonotonicityViolation) {
  KripkeModel m;
  m.worlds = {"w", "v"};
  m.domain = {"a", "b"};
  m.edges = {{"w", "v"}};
  m.local["w"] = {"a", "b"};
  m.local["v"] = {"a"};
  auto v = validate(m);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->kind, Violation::Kind::NotMonotone);
  EXPECT_EQ(v->world, "w");
  EXPECT_EQ(v->target, "v");
  EXPECT_FALSE(is_constant_domain(m));
}

TEST(Validate, EmptyLocalDomain) {
  KripkeModel m;
  m.worlds = {"w"};
  m.domain = {"a"};
  m.local["w"] = {};
  auto v = validate(m);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->kind, Violation::Kind::EmptyLocalDomain);
  EXPECT_EQ(v->world, "w");
}

TEST(Validate, OtherViolations) {
  KripkeModel m = one_world();
  m.edges = {{"w", "nowhere"}};
  EXPECT_EQ(validate(m)->kind, Violation::Kind::UnknownWorld);

  m = one_world();
  m.rho["w"]["P"].insert({"a", "a"});
  EXPECT_EQ(validate(m)->kind, Violation::Kind::ArityMismatch);

  m = one_world();
  m.rho["w"]["P"].insert({"zz"});
  EXPECT_EQ(validate(m)->kind, Violation::Kind::UnknownElement);

  m = one_world();
  m.worlds.push_back("w");
  EXPECT_EQ(validate(m)->kind, Violation::Kind::DuplicateId);

  EXPECT_EQ(validate(KripkeModel{})->kind, Violation::Kind::NoWorlds);
}

TEST(Check, AtomicClause) {
  EXPECT_TRUE(check(one_world(), "w", {{Var("x"), "a"}}, P("P(x)")));
}

TEST(Check, VacuousBoxVersusWitnessDiamond) {
  EXPECT_TRUE(check(one_world(), "w", {}, P("E x [] P(x)")));
  EXPECT_FALSE(check(one_world(), "w", {}, P("E x <> P(x)")));
  EXPECT_TRUE(check(one_world(), "w", {}, P("A x [] F")));
  EXPECT_FALSE(check(one_world(), "w", {}, P("A x <> T")));
}

TEST(Check, ReadsFactsAtSuccessor) {
  KripkeModel m;
  m.worlds = {"r", "s"};
  m.domain = {"a", "b"};
  m.edges = {{"r", "s"}};
  m.local["r"] = {"a"};
  m.local["s"] = {"a", "b"};
  m.rho["s"]["P"] = {{"a"}};
  EXPECT_TRUE(check(m, "r", {}, P("E x <> P(x)")));
  EXPECT_TRUE(check(m, "r", {}, P("A x [] P(x)")));
  // b lives only at s, so it is not a candidate witness at r.
  EXPECT_FALSE(check(m, "r", {}, P("E x <> !P(x)")));
  EXPECT_TRUE(check(m, "s", {{Var("y"), "b"}}, P("!P(y)")));
}

TEST(Check, Errors) {
  EXPECT_THROW(check(one_world(), "w", {}, P("P(x)")), AssignmentError);
  KripkeModel m = one_world();
  m.domain.push_back("b");
  EXPECT_THROW(check(m, "w", {{Var("x"), "b"}}, P("P(x)")), AssignmentError);
  EXPECT_THROW(check(m, "w", {{Var("x"), "zz"}}, P("P(x)")), AssignmentError);
  EXPECT_THROW(check(m, "nowhere", {}, P("T")), ModelError);
  m.local["w"] = {};
  EXPECT_THROW(check(m, "w", {}, P("T")), ModelError);
}

TEST(ModelJson, RoundTripAndKeyOrder) {
  KripkeModel m;
  m.worlds = {"r", "s"};
  m.domain = {"a", "b"};
  m.edges = {{"r", "s"}};
  m.local["r"] = {"a"};
  m.local["s"] = {"a", "b"};
  m.rho["s"]["R"] = {{"a", "b"}};
  const std::string text = model_to_json(m, -1);
  EXPECT_EQ(text,
            R"({"worlds":["r","s"],"domain":["a","b"],"edges":[["r","s"]],)"
            R"("local":{"r":["a"],"s":["a","b"]},"rho":{"s":{"R":[["a","b"]]}}})");
  EXPECT_EQ(model_from_json(text), m);
}

TEST(ModelJson, Malformed) {
  EXPECT_THROW(model_from_json("{"), ModelError);
  EXPECT_THROW(model_from_json("[]"), ModelError);
  EXPECT_THROW(model_from_json(R"({"worlds":["w"]})"), ModelError);
  EXPECT_THROW(model_from_json(R"({"worlds":["w"],"domain":[1]})"), ModelError);
  EXPECT_THROW(model_from_json(R"({"worlds":["w"],"domain":["a"],"edges":[["w"]]})"),
               ModelError);
}

// Property tests over random formulas and random small models.

struct Instance {
  KripkeModel model;
  std::string world;
  Assignment sigma;
};

Instance random_instance(Generator& gen, const Formula& f, const VarSet& extra = {}) {
  Instance in;
  in.model = gen.model(signature(f), 3, 3);
  in.world = in.model.worlds[gen.below(in.model.worlds.size())];
  const auto& loc = in.model.local.at(in.world);
  std::vector<std::string> elems(loc.begin(), loc.end());
  VarSet vs = free_vars(f);
  vs.insert(extra.begin(), extra.end());
  for (const Var& v : vs) in.sigma[v] = elems[gen.below(elems.size())];
  return in;
}

GeneratorOptions surface_options() {
  GeneratorOptions o;
  o.surface = true;
  o.free_variables = 2;
  o.max_boolean_depth = 3;
  return o;
}

TEST(Property, NnfPreservesTruth) {
  Generator gen(11, surface_options());
  for (int i = 0; i < 300; ++i) {
    Formula f = gen.formula();
    Formula g = to_nnf(f);
    ASSERT_TRUE(is_nnf(g)) << to_string(f);
    EXPECT_EQ(to_nnf(g), g);
    for (int k = 0; k < 5; ++k) {
      Instance in = random_instance(gen, f);
      ASSERT_EQ(check(in.model, in.world, in.sigma, f), check(in.model, in.world, in.sigma, g))
          << to_string(f);
    }
  }
}

TEST(Property, CleansePreservesTruth) {
  Generator gen(12, surface_options());
  for (int i = 0; i < 300; ++i) {
    Formula f = gen.formula();
    Formula g = cleanse(f);
    ASSERT_TRUE(is_clean(g)) << to_string(f);
    EXPECT_EQ(cleanse(g), g);
    EXPECT_EQ(free_vars(g), free_vars(f));
    for (int k = 0; k < 5; ++k) {
      Instance in = random_instance(gen, f);
      ASSERT_EQ(check(in.model, in.world, in.sigma, f), check(in.model, in.world, in.sigma, g))
          << to_string(f);
    }
  }
}

TEST(Property, DualsAgree) {
  GeneratorOptions o = surface_options();
  o.max_modal_depth = 2;
  Generator gen(13, o);
  for (int i = 0; i < 300; ++i) {
    Formula body = gen.formula();
    const Var x("x");
    const Formula pairs[][2] = {
        {Formula::forall_diamond(x, body),
         Formula::negation(Formula::exists_box(x, Formula::negation(body)))},
        {Formula::forall_box(x, body),
         Formula::negation(Formula::exists_diamond(x, Formula::negation(body)))},
    };
    for (const auto& pair : pairs) {
      Instance in = random_instance(gen, pair[0]);
      ASSERT_EQ(check(in.model, in.world, in.sigma, pair[0]),
                check(in.model, in.world, in.sigma, pair[1]))
          << to_string(pair[0]);
    }
  }
}

TEST(Property, SubstitutionMatchesAssignmentUpdate) {
  GeneratorOptions o = surface_options();
  o.free_variables = 2;  // a, b
  Generator gen(14, o);
  const Var a("a"), b("b");
  int exercised = 0;
  for (int i = 0; i < 400; ++i) {
    Formula f = cleanse(gen.formula());
    if (!free_vars(f).count(a)) continue;
    std::optional<Formula> sub;
    try {
      sub = substitute(f, b, a);
    } catch (const CaptureError&) {
      continue;
    }
    const Formula& g = *sub;
    VarSet expected = free_vars(f);
    expected.erase(a);
    expected.insert(b);
    EXPECT_EQ(free_vars(g), expected);
    Instance in = random_instance(gen, f, {b});
    Assignment shifted = in.sigma;
    shifted[a] = in.sigma.at(b);
    ASSERT_EQ(check(in.model, in.world, in.sigma, g), check(in.model, in.world, shifted, f))
        << to_string(f);
    ++exercised;
  }
  EXPECT_GT(exercised, 50);
}

TEST(Property, ParsePrintRoundTrip) {
  Generator gen(15, surface_options());
  for (int i = 0; i < 500; ++i) {
    Formula f = gen.formula();
    ASSERT_EQ(parse_formula(to_string(f)), f) << to_string(f);
  }
}

TEST(Property, GeneratedModelsAreValid) {
  Generator gen(16, surface_options());
  std::map<std::string, std::size_t> sig{{"P1", 1}, {"P2", 2}};
  for (int i = 0; i < 200; ++i) {
    KripkeModel m = gen.model(sig, 4, 3, i % 2 == 0);
    ASSERT_FALSE(validate(m).has_value());
    if (i % 2 == 0) EXPECT_TRUE(is_constant_domain(m));
    EXPECT_EQ(model_from_json(model_to_json(m)), m);
  }
}

}  // namespace
}  // namespace bfoml
