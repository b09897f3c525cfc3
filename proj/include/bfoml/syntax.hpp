// Syntactic operations on formulas: variables, substitution, negation normal
// form, cleaning, measures and fragment classification.

#ifndef BFOML_SYNTAX_HPP_
#define BFOML_SYNTAX_HPP_

#include <cstddef>
#include <map>
#include <string>

#include "bfoml/formula.hpp"

namespace bfoml {

enum class Fragment { ExistsBox, ExistsDiamond, Full };

std::string to_string(Fragment f);

// Variables with at least one free occurrence.
VarSet free_vars(const Formula& f);
VarSet free_vars(const FormulaSet& gamma);
// Variables bound by some bundle.
VarSet bound_vars(const Formula& f);
// Every variable occurring in f, free or bound.
VarSet all_vars(const Formula& f);

// f[to/from]: replaces every free occurrence of `from` by `to`. Throws
// CaptureError if some replaced occurrence sits under a bundle binding `to`.
Formula substitute(const Formula& f, const Var& to, const Var& from);

// Rewrites Implies as (!a | b); leaves everything else untouched.
Formula desugar(const Formula& f);

// Negation normal form: only atoms are negated, no Implies, and Top/Bot are
// kept as constants (!T becomes F and vice versa).
Formula to_nnf(const Formula& f);
bool is_nnf(const Formula& f);

// Renames bound variables so that no variable is both free and bound and no
// two bundles bind the same variable. A binder keeps its name unless that
// name is free in f or already taken by an earlier binder (pre-order, left to
// right); otherwise it gets the same base with the least unused index.
// Free variables are never renamed.
Formula cleanse(const Formula& f);
bool is_clean(const Formula& f);

// Maximum nesting of bundles.
std::size_t modal_depth(const Formula& f);
// Number of binary connectives (And, Or, Implies) and negations.
std::size_t connective_count(const Formula& f);

// Variables bound by exists-box subformulas. Expects an NNF formula.
VarSet exists_box_vars(const Formula& f);

// Fragment after NNF: ExistsBox if only E[] / A<> bundles occur,
// ExistsDiamond if only E<> / A[] bundles occur, Full otherwise. A formula
// with no bundles at all is classified ExistsBox.
Fragment classify(const Formula& f);

// Predicate -> arity for every atom in f.
std::map<std::string, std::size_t> signature(const Formula& f);

// Supply of fresh variables: base name plus the least index not yet taken.
class FreshVars {
 public:
  FreshVars() = default;
  explicit FreshVars(VarSet taken) : taken_(std::move(taken)) {}

  void reserve(const Var& v) { taken_.insert(v); }
  void reserve(const VarSet& vs) { taken_.insert(vs.begin(), vs.end()); }
  bool taken(const Var& v) const { return taken_.count(v) != 0; }

  // A variable with base `base` that is not taken; marks it taken.
  Var fresh(const std::string& base);

 private:
  VarSet taken_;
};

}  // namespace bfoml

#endif  // BFOML_SYNTAX_HPP_
