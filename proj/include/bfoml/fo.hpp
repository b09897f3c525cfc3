// First-order logic with one binary predicate R, and its reduction to the
// exists-diamond fragment over constant domains.

#ifndef BFOML_FO_HPP_
#define BFOML_FO_HPP_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bfoml/formula.hpp"
#include "bfoml/kripke.hpp"

namespace bfoml {

// Quantifier-free matrix over R(x,y).
struct FOMatrix {
  enum class Kind { Atom, Not, And, Or, Implies };
  Kind kind = Kind::Atom;
  Var x{"x"}, y{"y"};           // Atom only
  std::vector<FOMatrix> sub;  // 1 child for Not, 2 for binary connectives

  static FOMatrix atom(Var x, Var y);
  static FOMatrix negation(FOMatrix a);
  static FOMatrix binary(Kind k, FOMatrix a, FOMatrix b);

  friend bool operator==(const FOMatrix&, const FOMatrix&) = default;
};

// Prenex sentence Q1 x1 ... Qn xn . matrix with distinct prefix variables and
// every matrix variable bound by the prefix.
struct FOFormula {
  std::vector<std::pair<Quantifier, Var>> prefix;
  FOMatrix matrix;

  friend bool operator==(const FOFormula&, const FOFormula&) = default;
};

// Grammar: ("EX" | "ALL") var "." ... matrix, where the matrix uses R(x,y),
// "!", "&", "|", "->" (loosest, right associative) and parentheses. Throws
// ParseError on syntax errors and FOFormulaError for open or non-prenex input,
// repeated prefix variables and predicates other than binary R.
FOFormula parse_fo(std::string_view text);

std::string to_string(const FOMatrix& m);
std::string to_string(const FOFormula& f);

struct FOModel {
  std::vector<std::string> domain;
  std::set<std::pair<std::string, std::string>> r;

  friend bool operator==(const FOModel&, const FOModel&) = default;
};

// {"domain": [...], "R": [[a, b], ...]}. Throws ModelError if the domain is
// empty or repeats an element, or R mentions an element outside it.
std::string fo_model_to_json(const FOModel& m, int indent = 2);
FOModel fo_model_from_json(std::string_view text);

bool fo_check(const FOModel& m, const FOFormula& f);

// Models over d0..d{k-1} for k = 1..max_domain; R ranges over subsets of D x D
// by bit mask, pairs ordered lexicographically. fo_enumerate_sat returns the
// first satisfying one, fo_models all of them in the same order.
std::optional<FOModel> fo_enumerate_sat(const FOFormula& f, std::size_t max_domain);
std::vector<FOModel> fo_models(const FOFormula& f, std::size_t max_domain);

// R(x,y) becomes E z <> (P(x) & Q(y)) with a fresh z per occurrence; other
// connectives map to themselves. The result is cleansed.
Formula translate_qf(const FOMatrix& m);

// psi1 & psi2 & psi3, cleansed. psi1 replaces EX x by E x <> and ALL x by
// A x [] over the translated matrix; psi2 forces the worlds reached through
// A z1 [] A z2 [] and an n-fold tower to agree on P and Q; psi3 keeps every
// path alive for n+2 steps. Throws FOFormulaError for an empty prefix.
Formula translate_sentence(const FOFormula& f);

// The path-plus-fan model: v1 -> v2 -> w1 -> ... -> wn -> u_d for each d, with
// P = {d} and Q = {c | (d,c) in R} at u_d, nothing elsewhere, delta = D.
KripkeModel build_witness_model(const FOModel& m, const FOFormula& f);

// Variant that does satisfy the translation: v1 -> w1 -> ... -> wn -> u_d,
// then every u_d -> t and t -> t, with the same facts at u_d.
KripkeModel build_witness_model_repaired(const FOModel& m, const FOFormula& f);

}  // namespace bfoml

#endif  // BFOML_FO_HPP_
