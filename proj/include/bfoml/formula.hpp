// Abstract syntax of the bundled fragment of first-order modal logic.
//
// Formulas are immutable trees with shared subterms. Four bundles fuse a
// quantifier with a modality: E x [] (exists-box), E x <> (exists-diamond)
// and their duals A x <> and A x []. Top, Bot and Implies are kept in the
// tree so that the printer reproduces the input; the transformations in
// syntax.hpp desugar Implies and keep Top/Bot as literals.

#ifndef BFOML_FORMULA_HPP_
#define BFOML_FORMULA_HPP_

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bfoml {

// A variable is a base name plus an optional freshness index. Index 0 means
// "no index"; generated variables carry index >= 1 and print as base_k.
class Var {
 public:
  Var() = default;

  // Parses the printed form: a trailing "_k" (k >= 1, no leading zero) becomes
  // the index, so that Var(v.str()) == v for every v.
  explicit Var(std::string_view text);
  Var(std::string base, unsigned index);

  const std::string& base() const { return base_; }
  unsigned index() const { return index_; }
  std::string str() const;

  friend auto operator<=>(const Var&, const Var&) = default;
  friend bool operator==(const Var&, const Var&) = default;

 private:
  std::string base_;
  unsigned index_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Var& v);

using VarSet = std::set<Var>;

enum class Quantifier { Exists, Forall };
enum class Modality { Box, Diamond };

class Formula {
 public:
  enum class Kind { Atom, Top, Bot, Not, And, Or, Implies, Bundle };

  static Formula atom(std::string predicate, std::vector<Var> args);
  static Formula top();
  static Formula bot();
  static Formula negation(Formula operand);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula bundle(Quantifier q, Modality m, Var var, Formula body);

  static Formula exists_box(Var v, Formula body) {
    return bundle(Quantifier::Exists, Modality::Box, std::move(v), std::move(body));
  }
  static Formula exists_diamond(Var v, Formula body) {
    return bundle(Quantifier::Exists, Modality::Diamond, std::move(v), std::move(body));
  }
  static Formula forall_box(Var v, Formula body) {
    return bundle(Quantifier::Forall, Modality::Box, std::move(v), std::move(body));
  }
  static Formula forall_diamond(Var v, Formula body) {
    return bundle(Quantifier::Forall, Modality::Diamond, std::move(v), std::move(body));
  }

  Kind kind() const;

  // Atom accessors.
  const std::string& predicate() const;
  std::span<const Var> args() const;

  // Not: operand(). And/Or/Implies: lhs(), rhs(). Bundle: body().
  Formula operand() const;
  Formula lhs() const;
  Formula rhs() const;
  Formula body() const;

  // Bundle accessors.
  Quantifier quantifier() const;
  Modality modality() const;
  const Var& bound_var() const;

  bool is_atom() const { return kind() == Kind::Atom; }
  bool is_bundle() const { return kind() == Kind::Bundle; }
  // Atom or negated atom.
  bool is_literal() const;

  // Number of AST nodes.
  std::size_t size() const;
  // Maximum bundle nesting and number of Not/And/Or/Implies nodes; cached.
  std::size_t modal_depth() const;
  std::size_t connective_count() const;

  // Structural total order; equal iff the trees are identical.
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  static std::strong_ordering compare(const Node* a, const Node* b);
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  const Node& node() const { return *node_; }

  std::shared_ptr<const Node> node_;
};

using FormulaSet = std::set<Formula>;

// Concrete ASCII syntax, fully parenthesised binary connectives:
//   T | F | P(x,y) | !f | (f & g) | (f | g) | (f -> g) | E x [] f | A x <> f
std::string to_string(const Formula& f);
std::ostream& operator<<(std::ostream& os, const Formula& f);

std::string to_string(const FormulaSet& gamma);
std::string to_string(const VarSet& vars);

}  // namespace bfoml

#endif  // BFOML_FORMULA_HPP_
