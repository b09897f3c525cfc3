#include <gtest/gtest.h>

#include "bfoml/error.hpp"
#include "bfoml/formula.hpp"
#include "bfoml/parser.hpp"
#include "bfoml/syntax.hpp"

namespace bfoml {
namespace {

Formula P(const char* text) { return parse_formula(text); }

VarSet vars(std::initializer_list<const char*> names) {
  VarSet out;
  for (const char* n : names) out.insert(Var(n));
  return out;
}

TEST(Var, IndexRoundTrip) {
  Var v("x_3");
  EXPECT_EQ(v.base(), "x");
  EXPECT_EQ(v.index(), 3u);
  EXPECT_EQ(v.str(), "x_3");
  EXPECT_EQ(Var(v.str()), v);
  EXPECT_EQ(Var("x_0").index(), 0u);
  EXPECT_EQ(Var("x_0").base(), "x_0");
  EXPECT_EQ(Var("x_").base(), "x_");
  EXPECT_EQ(Var("x", 0), Var("x"));
  EXPECT_LT(Var("x"), Var("x", 1));
  EXPECT_LT(Var("x", 1), Var("x", 2));
}

TEST(Parse, Bundle) {
  Formula f = P("E x [] P(x)");
  ASSERT_EQ(f.kind(), Formula::Kind::Bundle);
  EXPECT_EQ(f.quantifier(), Quantifier::Exists);
  EXPECT_EQ(f.modality(), Modality::Box);
  EXPECT_EQ(f.bound_var(), Var("x"));
  EXPECT_EQ(f.body(), Formula::atom("P", {Var("x")}));
}

TEST(Parse, Conjunction) {
  Formula px = Formula::atom("P", {Var("x")});
  EXPECT_EQ(P("(P(x) & !P(x))"), Formula::conjunction(px, Formula::negation(px)));
}

TEST(Parse, ArityMismatch) {
  try {
    P("(P(x) & P(x,y))");
    FAIL() << "expected ArityError";
  } catch (const ArityError& e) {
    EXPECT_EQ(e.predicate(), "P");
  }
}

TEST(Parse, ErrorsCarryPosition) {
  try {
    P("(P(x) &\n  Q(y)");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 7u);
  }
  EXPECT_THROW(P("E x P(x)"), ParseError);
  EXPECT_THROW(P("P(X)"), ParseError);
  EXPECT_THROW(P("(P(x) P(y))"), ParseError);
  EXPECT_THROW(P("P(x) extra"), ParseError);
  EXPECT_THROW(P("$"), ParseError);
}

TEST(Parse, KeywordsAsPredicates) {
  EXPECT_EQ(P("T").kind(), Formula::Kind::Top);
  EXPECT_EQ(P("F").kind(), Formula::Kind::Bot);
  EXPECT_EQ(P("T(x)").kind(), Formula::Kind::Atom);
  EXPECT_EQ(P("E(x)").predicate(), "E");
  EXPECT_EQ(P("# comment\nA y <> T").quantifier(), Quantifier::Forall);
}

TEST(Print, Shapes) {
  EXPECT_EQ(to_string(P("(E x [] P(x) & A y <> !P(y))")), "(E x [] P(x) & A y <> !P(y))");
  EXPECT_EQ(to_string(P("((T | F) -> R(x,y))")), "((T | F) -> R(x,y))");
  EXPECT_EQ(to_string(P("E x_2 <> Q(x_2)")), "E x_2 <> Q(x_2)");
}

TEST(FreeVars, Examples) {
  EXPECT_EQ(free_vars(P("(P(x) & E y [] Q(y))")), vars({"x"}));
  EXPECT_EQ(free_vars(P("E x <> (P(x) & Q(y))")), vars({"y"}));
  EXPECT_TRUE(free_vars(P("E x [] P(x)")).empty());
  EXPECT_EQ(bound_vars(P("(P(x) & E x [] Q(x))")), vars({"x"}));
  EXPECT_EQ(all_vars(P("(P(x) & E y [] Q(z))")), vars({"x", "y", "z"}));
}

TEST(Substitute, Examples) {
  EXPECT_EQ(substitute(P("P(x)"), Var("y"), Var("x")), P("P(y)"));
  EXPECT_EQ(substitute(P("E x [] P(x)"), Var("y"), Var("x")), P("E x [] P(x)"));
  EXPECT_THROW(substitute(P("E y [] P(x)"), Var("y"), Var("x")), CaptureError);
  // y bound but x does not occur below it: no capture.
  EXPECT_EQ(substitute(P("(P(x) & E y [] Q(y))"), Var("y"), Var("x")),
            P("(P(y) & E y [] Q(y))"));
}

TEST(Nnf, Examples) {
  EXPECT_EQ(to_nnf(P("!E x [] P(x)")), P("A x <> !P(x)"));
  EXPECT_EQ(to_nnf(P("!(P(x) & Q(y))")), P("(!P(x) | !Q(y))"));
  EXPECT_EQ(to_nnf(P("!A x <> !P(x)")), P("E x [] P(x)"));
  EXPECT_EQ(to_nnf(P("!E x <> P(x)")), P("A x [] !P(x)"));
  EXPECT_EQ(to_nnf(P("(P(x) -> Q(x))")), P("(!P(x) | Q(x))"));
  EXPECT_EQ(to_nnf(P("!T")), P("F"));
  EXPECT_EQ(to_nnf(P("!!F")), P("F"));
  EXPECT_TRUE(is_nnf(to_nnf(P("!(E x [] (P(x) -> !Q(x)) | !A y <> T)"))));
  EXPECT_FALSE(is_nnf(P("!!P(x)")));
  EXPECT_FALSE(is_nnf(P("(P(x) -> Q(x))")));
}

TEST(Cleanse, Examples) {
  EXPECT_EQ(cleanse(P("(E x [] P(x) | E x [] Q(x))")), P("(E x [] P(x) | E x_1 [] Q(x_1))"));
  EXPECT_EQ(cleanse(P("(P(x) & E x [] Q(x))")), P("(P(x) & E x_1 [] Q(x_1))"));
  Formula clean = P("(P(x) & E y [] A z <> R(y,z))");
  EXPECT_EQ(cleanse(clean), clean);
  EXPECT_TRUE(is_clean(clean));
  EXPECT_FALSE(is_clean(P("(E x [] P(x) | E x [] Q(x))")));
  EXPECT_FALSE(is_clean(P("(P(x) & E x [] Q(x))")));
  // Fresh index skips names already present anywhere in the formula.
  EXPECT_EQ(cleanse(P("(E x [] P(x) | (E x [] Q(x) | P(x_1)))")),
            P("(E x [] P(x) | (E x_2 [] Q(x_2) | P(x_1)))"));
}

TEST(Measures, Examples) {
  EXPECT_EQ(modal_depth(P("P(x)")), 0u);
  EXPECT_EQ(modal_depth(P("E x [] (P(x) & E y [] Q(x,y))")), 2u);
  EXPECT_EQ(connective_count(P("(!P(x) | (Q(x) & R(x)))")), 3u);
  EXPECT_EQ(P("(P(x) & !P(x))").size(), 4u);
}

TEST(ExistsBoxVars, Examples) {
  EXPECT_EQ(exists_box_vars(P("E x [] P(x)")), vars({"x"}));
  EXPECT_TRUE(exists_box_vars(P("A x <> P(x)")).empty());
  EXPECT_EQ(exists_box_vars(P("E x [] E y [] Q(x,y)")), vars({"x", "y"}));
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(P("(E x [] P(x) & A y <> Q(y))")), Fragment::ExistsBox);
  EXPECT_EQ(classify(P("A x [] P(x)")), Fragment::ExistsDiamond);
  EXPECT_EQ(classify(P("(E x [] P(x) & A y [] Q(y))")), Fragment::Full);
  EXPECT_EQ(classify(P("!E x [] P(x)")), Fragment::ExistsBox);
  EXPECT_EQ(classify(P("!A x [] P(x)")), Fragment::ExistsDiamond);
  EXPECT_EQ(classify(P("(P(x) | T)")), Fragment::ExistsBox);
}

TEST(Signature, Arity) {
  auto sig = signature(P("(P(x) & E y [] R(x,y))"));
  EXPECT_EQ(sig.at("P"), 1u);
  EXPECT_EQ(sig.at("R"), 2u);
}

TEST(FreshVars, LeastUnusedIndex) {
  FreshVars fv(vars({"x", "x_1", "x_3"}));
  EXPECT_EQ(fv.fresh("x"), Var("x", 2));
  EXPECT_EQ(fv.fresh("x"), Var("x", 4));
  EXPECT_EQ(fv.fresh("y"), Var("y", 1));
}

}  // namespace
}  // namespace bfoml
