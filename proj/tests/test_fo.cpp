#include <gtest/gtest.h>

#include "bfoml/error.hpp"
#include "bfoml/fo.hpp"
#include "bfoml/oracle.hpp"
#include "bfoml/parser.hpp"
#include "bfoml/syntax.hpp"

namespace bfoml {
namespace {

FOModel model(std::vector<std::string> d, std::set<std::pair<std::string, std::string>> r) {
  return FOModel{std::move(d), std::move(r)};
}

TEST(FOParse, PrefixAndMatrix) {
  FOFormula f = parse_fo("EX x . ALL y . (R(x,y) & !R(y,x))");
  ASSERT_EQ(f.prefix.size(), 2u);
  EXPECT_EQ(f.prefix[0].first, Quantifier::Exists);
  EXPECT_EQ(f.prefix[1].second, Var("y"));
  EXPECT_EQ(to_string(f), "EX x . ALL y . (R(x,y) & !R(y,x))");
}

TEST(FOParse, Precedence) {
  EXPECT_EQ(to_string(parse_fo("ALL x . R(x,x) & R(x,x) | !R(x,x) -> R(x,x) -> R(x,x)")),
            "ALL x . (((R(x,x) & R(x,x)) | !R(x,x)) -> (R(x,x) -> R(x,x)))");
}

TEST(FOParse, RoundTrip) {
  for (const char* s : {"EX x . EX y . R(x,y)", "ALL x . EX y . (R(x,y) | R(y,x))",
                        "ALL x . ALL y . ALL z . ((R(x,y) & R(y,z)) -> R(x,z))"}) {
    EXPECT_EQ(parse_fo(to_string(parse_fo(s))), parse_fo(s)) << s;
  }
}

TEST(FOParse, Errors) {
  EXPECT_THROW(parse_fo("EX x . R(x,y)"), FOFormulaError);
  EXPECT_THROW(parse_fo("R(x,y)"), FOFormulaError);
  EXPECT_THROW(parse_fo("(ALL x . R(x,x) & EX y . R(y,y))"), FOFormulaError);
  EXPECT_THROW(parse_fo("EX x . (R(x,x) & EX y . R(x,y))"), FOFormulaError);
  EXPECT_THROW(parse_fo("EX x . EX x . R(x,x)"), FOFormulaError);
  EXPECT_THROW(parse_fo("EX x . S(x,x)"), FOFormulaError);
  EXPECT_THROW(parse_fo("EX x . R(x)"), ParseError);
  EXPECT_THROW(parse_fo("EX x R(x,x)"), ParseError);
  EXPECT_THROW(parse_fo("EX x . R(x,x) &"), ParseError);
}

TEST(FOCheck, Examples) {
  EXPECT_FALSE(fo_check(model({"a"}, {}), parse_fo("EX x . EX y . R(x,y)")));
  EXPECT_TRUE(fo_check(model({"a"}, {{"a", "a"}}), parse_fo("ALL x . EX y . R(x,y)")));
  EXPECT_FALSE(fo_check(model({"a", "b"}, {{"a", "b"}}), parse_fo("ALL x . EX y . R(x,y)")));
  EXPECT_TRUE(fo_check(model({"a", "b"}, {{"a", "b"}}), parse_fo("EX x . ALL y . !R(y,x) | R(x,y)")));
}

TEST(FOEnumerate, Examples) {
  auto m = fo_enumerate_sat(parse_fo("EX x . EX y . R(x,y)"), 1);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(*m, model({"d0"}, {{"d0", "d0"}}));

  m = fo_enumerate_sat(parse_fo("ALL x . EX y . R(x,y)"), 1);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(*m, model({"d0"}, {{"d0", "d0"}}));

  // Prenex form of (ALL x ALL y !R(x,y)) & (EX x EX y R(x,y)).
  const FOFormula contradiction = parse_fo("ALL x . ALL y . EX u . EX v . (!R(x,y) & R(u,v))");
  for (std::size_t k = 1; k <= 3; ++k) EXPECT_FALSE(fo_enumerate_sat(contradiction, k));
}

TEST(FOEnumerate, IrreflexiveNeedsTwoElements) {
  auto m = fo_enumerate_sat(parse_fo("ALL x . EX y . (R(x,y) & !R(x,x))"), 3);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(*m, model({"d0", "d1"}, {{"d0", "d1"}, {"d1", "d0"}}));
}

TEST(FOEnumerate, ModelsAreAllSatisfyingStructures) {
  const FOFormula f = parse_fo("EX x . R(x,x)");
  // |D| = 1: 1 of 2; |D| = 2: 16 - 4 without a loop.
  EXPECT_EQ(fo_models(f, 2).size(), 1u + 12u);
  for (const FOModel& m : fo_models(f, 2)) EXPECT_TRUE(fo_check(m, f));
}

TEST(FOModelJson, RoundTrip) {
  const FOModel m = model({"a", "b"}, {{"a", "b"}, {"b", "b"}});
  EXPECT_EQ(fo_model_to_json(m, -1), R"({"domain":["a","b"],"R":[["a","b"],["b","b"]]})");
  EXPECT_EQ(fo_model_from_json(fo_model_to_json(m)), m);
}

TEST(FOModelJson, Invalid) {
  EXPECT_THROW(fo_model_from_json("{"), ModelError);
  EXPECT_THROW(fo_model_from_json(R"({"domain":[]})"), ModelError);
  EXPECT_THROW(fo_model_from_json(R"({"domain":["a","a"]})"), ModelError);
  EXPECT_THROW(fo_model_from_json(R"({"domain":["a"],"R":[["a","b"]]})"), ModelError);
  EXPECT_THROW(fo_model_from_json(R"({"domain":["a"],"R":[["a"]]})"), ModelError);
}

TEST(Translate, QuantifierFree) {
  auto matrix = [](const char* body) {
    return parse_fo(std::string("ALL x . ALL y . ") + body).matrix;
  };
  EXPECT_EQ(to_string(translate_qf(matrix("R(x,y)"))), "E z <> (P(x) & Q(y))");
  EXPECT_EQ(to_string(translate_qf(matrix("!R(x,y)"))), "!E z <> (P(x) & Q(y))");
  EXPECT_EQ(to_string(translate_qf(matrix("R(x,y) & R(y,x)"))),
            "(E z <> (P(x) & Q(y)) & E z_1 <> (P(y) & Q(x)))");
}

TEST(Translate, FreshBinderAvoidsSentenceVariables) {
  const FOFormula f = parse_fo("ALL z . EX z1 . R(z,z1)");
  const Formula psi = translate_sentence(f);
  EXPECT_TRUE(is_clean(psi));
  EXPECT_EQ(to_string(psi.lhs().lhs()), "A z [] E z1 <> E z_1 <> (P(z) & Q(z1))");
}

TEST(Translate, Psi1) {
  const Formula psi = translate_sentence(parse_fo("EX x . ALL y . R(x,y)"));
  EXPECT_EQ(to_string(psi.lhs().lhs()), "E x <> A y [] E z <> (P(x) & Q(y))");
}

TEST(Translate, Psi3HasNPlusTwoConjuncts) {
  const Formula psi = translate_sentence(parse_fo("EX x . R(x,x)"));
  std::vector<Formula> parts;
  Formula rest = psi.rhs();
  while (rest.kind() == Formula::Kind::And) {
    parts.push_back(rest.rhs());
    rest = rest.lhs();
  }
  parts.push_back(rest);
  ASSERT_EQ(parts.size(), 3u);
  // parts[0] is the deepest conjunct.
  EXPECT_EQ(modal_depth(parts[0]), 4u);
  Formula g = parts[0];
  for (int i = 0; i < 3; ++i) {
    ASSERT_TRUE(g.is_bundle());
    EXPECT_EQ(g.quantifier(), Quantifier::Forall);
    EXPECT_EQ(g.modality(), Modality::Box);
    g = g.body();
  }
  EXPECT_EQ(g.quantifier(), Quantifier::Exists);
  EXPECT_EQ(g.modality(), Modality::Diamond);
  EXPECT_EQ(g.body().kind(), Formula::Kind::Top);
}

TEST(Translate, Psi2DepthIsNPlusThree) {
  const char* sentences[] = {"EX x . R(x,x)", "EX x . ALL y . R(x,y)",
                             "ALL x . EX y . EX u . R(x,u)", "EX a . EX b . EX c . EX d . R(a,d)"};
  for (std::size_t n = 1; n <= 4; ++n) {
    const Formula psi = translate_sentence(parse_fo(sentences[n - 1]));
    EXPECT_EQ(modal_depth(psi.lhs().rhs()), n + 3) << n;
  }
}

TEST(Translate, CleanAndExistsDiamond) {
  for (const char* s : {"EX x . ALL y . (R(x,y) -> !R(y,x))", "ALL x . EX y . (R(x,y) | R(y,y))",
                        "ALL x . ALL y . ALL z . ((R(x,y) & R(y,z)) -> R(x,z))"}) {
    const Formula psi = translate_sentence(parse_fo(s));
    EXPECT_TRUE(is_clean(psi)) << s;
    EXPECT_EQ(classify(psi), Fragment::ExistsDiamond) << s;
    EXPECT_EQ(parse_formula(to_string(psi)), psi);
    EXPECT_TRUE(free_vars(psi).empty());
  }
}

TEST(Witness, LiteralConstruction) {
  const FOFormula f = parse_fo("EX x . EX y . R(x,y)");
  const KripkeModel k = build_witness_model(model({"a"}, {{"a", "a"}}), f);
  EXPECT_EQ(k.worlds, (std::vector<std::string>{"v1", "v2", "w1", "w2", "u_a"}));
  EXPECT_EQ(k.rho.at("u_a").at("P"), (std::set<Tuple>{{"a"}}));
  EXPECT_EQ(k.rho.at("u_a").at("Q"), (std::set<Tuple>{{"a"}}));
  EXPECT_EQ(k.rho.count("v1"), 0u);
  EXPECT_FALSE(validate(k).has_value());
  EXPECT_TRUE(is_constant_domain(k));
}

TEST(Witness, LiteralConstructionMissesTranslation) {
  // After n steps from v1 the chain stands at w_{n-1}, and u_d is a dead end
  // at depth n+2.
  const FOFormula f = parse_fo("EX x . EX y . R(x,y)");
  const KripkeModel k = build_witness_model(model({"a"}, {{"a", "a"}}), f);
  const Formula psi = translate_sentence(f);
  EXPECT_FALSE(check(k, "v1", {}, psi.lhs().lhs()));
  EXPECT_TRUE(check(k, "v1", {}, psi.lhs().rhs()));
  EXPECT_FALSE(check(k, "v1", {}, psi.rhs()));
}

TEST(Witness, RepairedConstruction) {
  const FOFormula f = parse_fo("EX x . EX y . R(x,y)");
  const KripkeModel k = build_witness_model_repaired(model({"a", "b"}, {{"a", "b"}}), f);
  EXPECT_EQ(k.worlds, (std::vector<std::string>{"v1", "w1", "w2", "u_a", "u_b", "t"}));
  EXPECT_FALSE(validate(k).has_value());
  EXPECT_TRUE(is_constant_domain(k));
  EXPECT_EQ(k.rho.at("u_a").at("Q"), (std::set<Tuple>{{"b"}}));
  EXPECT_EQ(k.rho.at("u_b").count("Q"), 0u);
  EXPECT_TRUE(check(k, "v1", {}, translate_sentence(f)));
}

const char* kSmallSentences[] = {
    "EX x . R(x,x)",
    "ALL x . R(x,x)",
    "ALL x . !R(x,x)",
    "EX x . ALL y . R(x,y)",
    "ALL x . EX y . (R(x,y) & !R(y,x))",
    "EX x . EX y . (R(x,y) & !R(y,x))",
    "ALL x . ALL y . (R(x,y) -> R(y,x))",
    "EX x . ALL y . !R(y,x)",
};

TEST(Property, RepairedWitnessSatisfiesTranslation) {
  for (const char* s : kSmallSentences) {
    const FOFormula f = parse_fo(s);
    const Formula psi = translate_sentence(f);
    for (const FOModel& m : fo_models(f, 2)) {
      EXPECT_TRUE(check(build_witness_model_repaired(m, f), "v1", {}, psi))
          << s << " on " << fo_model_to_json(m, -1);
    }
  }
}

TEST(Property, TranslationPreservesSatisfiability) {
  for (const char* s : {"EX x . R(x,x)", "ALL x . !R(x,x)", "EX x . EX y . (R(x,y) & !R(y,x))",
                        "EX x . (R(x,x) & !R(x,x))", "ALL x . EX y . (R(x,y) & !R(x,x))"}) {
    const FOFormula f = parse_fo(s);
    const Formula psi = translate_sentence(f);
    const std::size_t n = f.prefix.size();
    auto fo = fo_enumerate_sat(f, 2);
    const std::size_t d = fo ? fo->domain.size() : 2;
    auto kripke = enumerate_sat(psi, n + d + 2, d, DomainSemantics::Constant);
    EXPECT_EQ(fo.has_value(), kripke.has_value()) << s;
  }
}

}  // namespace
}  // namespace bfoml
