#include "bfoml/formula.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace bfoml {

// ---------------------------------------------------------------------------
// Var

Var::Var(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty variable name");
  const auto us = text.rfind('_');
  if (us != std::string_view::npos && us > 0 && us + 1 < text.size()) {
    const auto digits = text.substr(us + 1);
    const bool all_digits =
        std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; });
    if (all_digits && digits.front() != '0' && digits.size() < 10) {
      unsigned k = 0;
      std::from_chars(digits.data(), digits.data() + digits.size(), k);
      base_ = std::string(text.substr(0, us));
      index_ = k;
      return;
    }
  }
  base_ = std::string(text);
}

Var::Var(std::string base, unsigned index) {
  if (index == 0) {
    *this = Var(std::string_view(base));
    return;
  }
  if (base.empty()) throw std::invalid_argument("empty variable name");
  base_ = std::move(base);
  index_ = index;
}

std::string Var::str() const {
  if (index_ == 0) return base_;
  return base_ + "_" + std::to_string(index_);
}

std::ostream& operator<<(std::ostream& os, const Var& v) { return os << v.str(); }

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
  Kind kind;
  std::string predicate;
  std::vector<Var> args;
  Quantifier quantifier = Quantifier::Exists;
  Modality modality = Modality::Box;
  Var var;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
  std::size_t size = 1;
  std::size_t depth = 0;        // bundle nesting
  std::size_t connectives = 0;  // Not, And, Or, Implies
};

Formula Formula::atom(std::string predicate, std::vector<Var> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->predicate = std::move(predicate);
  n->args = std::move(args);
  return Formula(std::move(n));
}

Formula Formula::top() {
  static const Formula t = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Top;
    return Formula(std::move(n));
  }();
  return t;
}

Formula Formula::bot() {
  static const Formula f = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Bot;
    return Formula(std::move(n));
  }();
  return f;
}

Formula Formula::negation(Formula operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->size = 1 + operand.size();
  n->depth = operand.node_->depth;
  n->connectives = 1 + operand.node_->connectives;
  n->a = std::move(operand.node_);
  return Formula(std::move(n));
}

namespace {

template <typename NodeT>
std::shared_ptr<NodeT> binary(Formula::Kind kind, std::shared_ptr<const NodeT> a,
                              std::shared_ptr<const NodeT> b) {
  auto n = std::make_shared<NodeT>();
  n->kind = kind;
  n->size = 1 + a->size + b->size;
  n->depth = std::max(a->depth, b->depth);
  n->connectives = 1 + a->connectives + b->connectives;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

}  // namespace

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(binary<Node>(Kind::And, std::move(lhs.node_), std::move(rhs.node_)));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return Formula(binary<Node>(Kind::Or, std::move(lhs.node_), std::move(rhs.node_)));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  return Formula(binary<Node>(Kind::Implies, std::move(lhs.node_), std::move(rhs.node_)));
}

Formula Formula::bundle(Quantifier q, Modality m, Var var, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Bundle;
  n->quantifier = q;
  n->modality = m;
  n->var = std::move(var);
  n->size = 1 + body.size();
  n->depth = 1 + body.node_->depth;
  n->connectives = body.node_->connectives;
  n->a = std::move(body.node_);
  return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }

const std::string& Formula::predicate() const {
  assert(kind() == Kind::Atom);
  return node_->predicate;
}

std::span<const Var> Formula::args() const {
  assert(kind() == Kind::Atom);
  return node_->args;
}

Formula Formula::operand() const {
  assert(kind() == Kind::Not);
  return Formula(node_->a);
}

Formula Formula::lhs() const {
  assert(node_->b != nullptr);
  return Formula(node_->a);
}

Formula Formula::rhs() const {
  assert(node_->b != nullptr);
  return Formula(node_->b);
}

Formula Formula::body() const {
  assert(kind() == Kind::Bundle);
  return Formula(node_->a);
}

Quantifier Formula::quantifier() const {
  assert(kind() == Kind::Bundle);
  return node_->quantifier;
}

Modality Formula::modality() const {
  assert(kind() == Kind::Bundle);
  return node_->modality;
}

const Var& Formula::bound_var() const {
  assert(kind() == Kind::Bundle);
  return node_->var;
}

bool Formula::is_literal() const {
  return kind() == Kind::Atom || (kind() == Kind::Not && node_->a->kind == Kind::Atom);
}

std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::modal_depth() const { return node_->depth; }
std::size_t Formula::connective_count() const { return node_->connectives; }

std::strong_ordering Formula::compare(const Node* a, const Node* b) {
  if (a == b) return std::strong_ordering::equal;
  if (auto c = a->kind <=> b->kind; c != 0) return c;
  switch (a->kind) {
    case Kind::Top:
    case Kind::Bot:
      return std::strong_ordering::equal;
    case Kind::Atom:
      if (auto c = a->predicate <=> b->predicate; c != 0) return c;
      return a->args <=> b->args;
    case Kind::Not:
      return compare(a->a.get(), b->a.get());
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      if (auto c = compare(a->a.get(), b->a.get()); c != 0) return c;
      return compare(a->b.get(), b->b.get());
    case Kind::Bundle:
      if (auto c = a->quantifier <=> b->quantifier; c != 0) return c;
      if (auto c = a->modality <=> b->modality; c != 0) return c;
      if (auto c = a->var <=> b->var; c != 0) return c;
      return compare(a->a.get(), b->a.get());
  }
  return std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  return Formula::compare(a.node_.get(), b.node_.get());
}

bool operator==(const Formula& a, const Formula& b) { return (a <=> b) == 0; }

// ---------------------------------------------------------------------------
// Printing

namespace {

void print(std::ostream& os, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Top:
      os << 'T';
      return;
    case Formula::Kind::Bot:
      os << 'F';
      return;
    case Formula::Kind::Atom: {
      os << f.predicate() << '(';
      bool first = true;
      for (const Var& v : f.args()) {
        if (!first) os << ',';
        first = false;
        os << v;
      }
      os << ')';
      return;
    }
    case Formula::Kind::Not:
      os << '!';
      print(os, f.operand());
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies: {
      const char* op = f.kind() == Formula::Kind::And  ? " & "
                       : f.kind() == Formula::Kind::Or ? " | "
                                                       : " -> ";
      os << '(';
      print(os, f.lhs());
      os << op;
      print(os, f.rhs());
      os << ')';
      return;
    }
    case Formula::Kind::Bundle:
      os << (f.quantifier() == Quantifier::Exists ? "E " : "A ") << f.bound_var()
         << (f.modality() == Modality::Box ? " [] " : " <> ");
      print(os, f.body());
      return;
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::ostringstream os;
  print(os, f);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Formula& f) {
  print(os, f);
  return os;
}

std::string to_string(const FormulaSet& gamma) {
  std::string out = "{";
  bool first = true;
  for (const Formula& f : gamma) {
    if (!first) out += ", ";
    first = false;
    out += to_string(f);
  }
  return out + "}";
}

std::string to_string(const VarSet& vars) {
  std::string out = "{";
  bool first = true;
  for (const Var& v : vars) {
    if (!first) out += ",";
    first = false;
    out += v.str();
  }
  return out + "}";
}

}  // namespace bfoml
