// Tableau decision procedures: full BFOML over increasing domains and the
// exists-box fragment over constant domains.
//
// Both run a depth-first search over labels (w, Gamma, F). Conjunctions are
// saturated in place, disjunctions branch with backtracking, and BR creates
// every successor of w in one shot. An open completion is turned into a
// Kripke model, which is re-checked against the input before it is returned.

#ifndef BFOML_TABLEAU_HPP_
#define BFOML_TABLEAU_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bfoml/formula.hpp"
#include "bfoml/kripke.hpp"

namespace bfoml {

inline constexpr std::size_t kDefaultNodeBudget = 5'000'000;

struct Label {
  std::string world;
  FormulaSet gamma;
  // F for the increasing tableau; the used-variable set C for the constant one.
  VarSet vars;
};

enum class Rule { None, And, Or, BR, End };

std::string to_string(Rule r);

struct Expansion {
  Rule rule = Rule::None;
  std::vector<Label> children;
  // Dom(t_w): F' after BR, F otherwise. The constant tableau reports D_theta.
  VarSet domain;
  // BR only: for each child, the parent formulas each child formula came from.
  std::vector<std::map<Formula, std::vector<Formula>>> sources;
  // BR only: for each child, the parent formulas its diamond came from.
  std::vector<std::vector<Formula>> heads;
};

// Literal and its complement, or F, in gamma.
bool has_clash(const FormulaSet& gamma);

// Applies one rule to a label of clean NNF formulas: the least conjunction if
// any, else the least disjunction, else BR when a diamond bundle is present,
// else END when a box bundle is present, else nothing.
//
// BR, for E x_i <> a_i, E y_j [] b_j, A z_k <> f_k, A u_l [] p_l in Gamma and
// F' = F + {x_i} + {y_j}, yields one child per x_i with
// {a_i} + {b_j} + {p_l[z/u_l] | z in F'} and one child per (k, y in F') with
// {f_k[y/z_k]} + the same b and p formulas. Bound variables of each child are
// then renamed apart so the child label is clean again. A child whose label
// equals an earlier sibling's is not repeated.
Expansion expand_increasing(const Label& label);

struct ConstantDomainPlan {
  Formula theta = Formula::top();  // clean NNF, exists-box fragment
  std::size_t depth = 0;
  VarSet exists_vars;
  std::map<Var, std::vector<Var>> pools;  // x -> x^1..x^h
  Var z;
  VarSet domain;  // free vars + all pools + z
};

// Throws FragmentError unless theta (after NNF and cleansing) is in the
// exists-box fragment.
ConstantDomainPlan build_domain(const Formula& theta);

// Constant-domain counterpart of expand_increasing. BR, for E x_j [] f_j and
// A y_i <> p_i in Gamma, yields one child per (i, y in D_theta) with
// {f_j[x_j^k/x_j]} + {p_i[y/y_i]} and C' = C + {x_j^k} + {y}, where k is the
// least index with x_j^k not in C. Repeated sibling labels are dropped.
Expansion expand_constant(const Label& label, const ConstantDomainPlan& plan);

struct TableauOptions {
  std::size_t node_budget = kDefaultNodeBudget;
  bool trace = false;
};

struct TraceEntry {
  std::size_t depth;
  Label label;
  Rule rule;
  bool closed;
};

struct TableauResult {
  bool sat = false;
  Formula theta = Formula::top();  // the clean NNF formula decided
  std::optional<KripkeModel> model;  // present iff sat
  std::string root = "r";
  Assignment assignment;  // identity on the root variables
  std::size_t nodes = 0;
  std::size_t max_depth = 0;  // deepest recursion of the search
  std::vector<TraceEntry> trace;
};

// Increasing-domain satisfiability of any formula. Throws ResourceLimit past
// the node budget.
TableauResult decide_increasing(const Formula& f, const TableauOptions& opts = {});

// Constant-domain satisfiability of an exists-box formula. Throws
// FragmentError outside the fragment and ResourceLimit past the budget.
TableauResult decide_constant_eb(const Formula& f, const TableauOptions& opts = {});

// One line per explored node, indented by depth:
//   <world> [<rule>] {Gamma} F={vars}  (closed)
std::string format_trace(const std::vector<TraceEntry>& trace);

}  // namespace bfoml

#endif  // BFOML_TABLEAU_HPP_
