#include "bfoml/syntax.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "bfoml/error.hpp"

namespace bfoml {

using Kind = Formula::Kind;

std::string to_string(Fragment f) {
  switch (f) {
    case Fragment::ExistsBox:
      return "ExistsBox";
    case Fragment::ExistsDiamond:
      return "ExistsDiamond";
    case Fragment::Full:
      return "Full";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Variables

namespace {

void collect_free(const Formula& f, VarSet& bound, VarSet& out) {
  switch (f.kind()) {
    case Kind::Atom:
      for (const Var& v : f.args()) {
        if (!bound.count(v)) out.insert(v);
      }
      return;
    case Kind::Top:
    case Kind::Bot:
      return;
    case Kind::Not:
      collect_free(f.operand(), bound, out);
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      collect_free(f.lhs(), bound, out);
      collect_free(f.rhs(), bound, out);
      return;
    case Kind::Bundle: {
      const bool fresh = bound.insert(f.bound_var()).second;
      collect_free(f.body(), bound, out);
      if (fresh) bound.erase(f.bound_var());
      return;
    }
  }
}

template <typename Fn>
void for_each_bundle(const Formula& f, Fn&& fn) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Top:
    case Kind::Bot:
      return;
    case Kind::Not:
      for_each_bundle(f.operand(), fn);
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      for_each_bundle(f.lhs(), fn);
      for_each_bundle(f.rhs(), fn);
      return;
    case Kind::Bundle:
      fn(f);
      for_each_bundle(f.body(), fn);
      return;
  }
}

void collect_atom_vars(const Formula& f, VarSet& out) {
  switch (f.kind()) {
    case Kind::Atom:
      out.insert(f.args().begin(), f.args().end());
      return;
    case Kind::Top:
    case Kind::Bot:
      return;
    case Kind::Not:
      collect_atom_vars(f.operand(), out);
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      collect_atom_vars(f.lhs(), out);
      collect_atom_vars(f.rhs(), out);
      return;
    case Kind::Bundle:
      collect_atom_vars(f.body(), out);
      return;
  }
}

}  // namespace

VarSet free_vars(const Formula& f) {
  VarSet bound, out;
  collect_free(f, bound, out);
  return out;
}

VarSet free_vars(const FormulaSet& gamma) {
  VarSet out;
  for (const Formula& f : gamma) {
    VarSet bound;
    collect_free(f, bound, out);
  }
  return out;
}

VarSet bound_vars(const Formula& f) {
  VarSet out;
  for_each_bundle(f, [&](const Formula& b) { out.insert(b.bound_var()); });
  return out;
}

VarSet all_vars(const Formula& f) {
  VarSet out = bound_vars(f);
  collect_atom_vars(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

// Returns f[to/from]; `from` is known to be free at this point.
Formula subst(const Formula& f, const Var& to, const Var& from, bool under_to_binder) {
  switch (f.kind()) {
    case Kind::Atom: {
      const auto args = f.args();
      if (std::find(args.begin(), args.end(), from) == args.end()) return f;
      if (under_to_binder) {
        throw CaptureError("substituting " + to.str() + " for " + from.str() + " in " +
                           to_string(f) + " would be captured by a binder of " + to.str());
      }
      std::vector<Var> out(args.begin(), args.end());
      std::replace(out.begin(), out.end(), from, to);
      return Formula::atom(f.predicate(), std::move(out));
    }
    case Kind::Top:
    case Kind::Bot:
      return f;
    case Kind::Not: {
      Formula a = subst(f.operand(), to, from, under_to_binder);
      return a == f.operand() ? f : Formula::negation(std::move(a));
    }
    case Kind::And:
    case Kind::Or:
    case Kind::Implies: {
      Formula a = subst(f.lhs(), to, from, under_to_binder);
      Formula b = subst(f.rhs(), to, from, under_to_binder);
      if (a == f.lhs() && b == f.rhs()) return f;
      if (f.kind() == Kind::And) return Formula::conjunction(std::move(a), std::move(b));
      if (f.kind() == Kind::Or) return Formula::disjunction(std::move(a), std::move(b));
      return Formula::implication(std::move(a), std::move(b));
    }
    case Kind::Bundle: {
      if (f.bound_var() == from) return f;  // no free occurrence below
      Formula body =
          subst(f.body(), to, from, under_to_binder || f.bound_var() == to);
      if (body == f.body()) return f;
      return Formula::bundle(f.quantifier(), f.modality(), f.bound_var(), std::move(body));
    }
  }
  return f;
}

}  // namespace

Formula substitute(const Formula& f, const Var& to, const Var& from) {
  if (to == from) return f;
  return subst(f, to, from, false);
}

// ---------------------------------------------------------------------------
// Normal forms

Formula desugar(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Top:
    case Kind::Bot:
      return f;
    case Kind::Not:
      return Formula::negation(desugar(f.operand()));
    case Kind::And:
      return Formula::conjunction(desugar(f.lhs()), desugar(f.rhs()));
    case Kind::Or:
      return Formula::disjunction(desugar(f.lhs()), desugar(f.rhs()));
    case Kind::Implies:
      return Formula::disjunction(Formula::negation(desugar(f.lhs())), desugar(f.rhs()));
    case Kind::Bundle:
      return Formula::bundle(f.quantifier(), f.modality(), f.bound_var(), desugar(f.body()));
  }
  return f;
}

namespace {

Quantifier dual(Quantifier q) {
  return q == Quantifier::Exists ? Quantifier::Forall : Quantifier::Exists;
}
Modality dual(Modality m) { return m == Modality::Box ? Modality::Diamond : Modality::Box; }

Formula nnf(const Formula& f, bool negated) {
  switch (f.kind()) {
    case Kind::Atom:
      return negated ? Formula::negation(f) : f;
    case Kind::Top:
      return negated ? Formula::bot() : f;
    case Kind::Bot:
      return negated ? Formula::top() : f;
    case Kind::Not:
      return nnf(f.operand(), !negated);
    case Kind::And:
      return negated ? Formula::disjunction(nnf(f.lhs(), true), nnf(f.rhs(), true))
                     : Formula::conjunction(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Kind::Or:
      return negated ? Formula::conjunction(nnf(f.lhs(), true), nnf(f.rhs(), true))
                     : Formula::disjunction(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Kind::Implies:
      // a -> b  ==  !a | b
      return negated ? Formula::conjunction(nnf(f.lhs(), false), nnf(f.rhs(), true))
                     : Formula::disjunction(nnf(f.lhs(), true), nnf(f.rhs(), false));
    case Kind::Bundle:
      if (!negated) {
        return Formula::bundle(f.quantifier(), f.modality(), f.bound_var(),
                               nnf(f.body(), false));
      }
      // !E x [] a == A x <> !a, !E x <> a == A x [] !a, and the converses.
      return Formula::bundle(dual(f.quantifier()), dual(f.modality()), f.bound_var(),
                             nnf(f.body(), true));
  }
  return f;
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

bool is_nnf(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Top:
    case Kind::Bot:
      return true;
    case Kind::Not:
      return f.operand().is_atom();
    case Kind::And:
    case Kind::Or:
      return is_nnf(f.lhs()) && is_nnf(f.rhs());
    case Kind::Implies:
      return false;
    case Kind::Bundle:
      return is_nnf(f.body());
  }
  return false;
}

// ---------------------------------------------------------------------------
// Cleaning

Var FreshVars::fresh(const std::string& base) {
  for (unsigned k = 1;; ++k) {
    Var v(base, k);
    if (taken_.insert(v).second) return v;
  }
}

namespace {

class Cleaner {
 public:
  explicit Cleaner(const Formula& f) : free_(free_vars(f)), fresh_(all_vars(f)) {}

  Formula run(const Formula& f) {
    std::map<Var, Var> env;
    return walk(f, env);
  }

 private:
  Formula walk(const Formula& f, std::map<Var, Var>& env) {
    switch (f.kind()) {
      case Kind::Atom: {
        std::vector<Var> args(f.args().begin(), f.args().end());
        bool changed = false;
        for (Var& v : args) {
          if (auto it = env.find(v); it != env.end() && it->second != v) {
            v = it->second;
            changed = true;
          }
        }
        return changed ? Formula::atom(f.predicate(), std::move(args)) : f;
      }
      case Kind::Top:
      case Kind::Bot:
        return f;
      case Kind::Not:
        return Formula::negation(walk(f.operand(), env));
      case Kind::And:
      case Kind::Or:
      case Kind::Implies: {
        Formula a = walk(f.lhs(), env);
        Formula b = walk(f.rhs(), env);
        if (f.kind() == Kind::And) return Formula::conjunction(std::move(a), std::move(b));
        if (f.kind() == Kind::Or) return Formula::disjunction(std::move(a), std::move(b));
        return Formula::implication(std::move(a), std::move(b));
      }
      case Kind::Bundle: {
        const Var& x = f.bound_var();
        Var name = x;
        if (free_.count(x) || !binders_.insert(x).second) {
          name = fresh_.fresh(x.base());
          binders_.insert(name);
        }
        auto saved = env.find(x) == env.end() ? std::nullopt : std::optional<Var>(env[x]);
        env[x] = name;
        Formula body = walk(f.body(), env);
        if (saved) {
          env[x] = *saved;
        } else {
          env.erase(x);
        }
        return Formula::bundle(f.quantifier(), f.modality(), std::move(name), std::move(body));
      }
    }
    return f;
  }

  VarSet free_;
  VarSet binders_;
  FreshVars fresh_;
};

}  // namespace

Formula cleanse(const Formula& f) { return Cleaner(f).run(f); }

bool is_clean(const Formula& f) {
  const VarSet free = free_vars(f);
  VarSet seen;
  bool ok = true;
  for_each_bundle(f, [&](const Formula& b) {
    if (free.count(b.bound_var()) || !seen.insert(b.bound_var()).second) ok = false;
  });
  return ok;
}

// ---------------------------------------------------------------------------
// Measures and classification

std::size_t modal_depth(const Formula& f) { return f.modal_depth(); }

std::size_t connective_count(const Formula& f) { return f.connective_count(); }

VarSet exists_box_vars(const Formula& f) {
  VarSet out;
  for_each_bundle(f, [&](const Formula& b) {
    if (b.quantifier() == Quantifier::Exists && b.modality() == Modality::Box) {
      out.insert(b.bound_var());
    }
  });
  return out;
}

Fragment classify(const Formula& f) {
  bool box_side = false;      // E[] or A<>
  bool diamond_side = false;  // E<> or A[]
  for_each_bundle(to_nnf(f), [&](const Formula& b) {
    const bool eb = (b.quantifier() == Quantifier::Exists) == (b.modality() == Modality::Box);
    (eb ? box_side : diamond_side) = true;
  });
  if (box_side && diamond_side) return Fragment::Full;
  return diamond_side ? Fragment::ExistsDiamond : Fragment::ExistsBox;
}

std::map<std::string, std::size_t> signature(const Formula& f) {
  std::map<std::string, std::size_t> out;
  auto walk = [&](auto&& self, const Formula& g) -> void {
    switch (g.kind()) {
      case Kind::Atom:
        out.emplace(g.predicate(), g.args().size());
        return;
      case Kind::Top:
      case Kind::Bot:
        return;
      case Kind::Not:
        self(self, g.operand());
        return;
      case Kind::And:
      case Kind::Or:
      case Kind::Implies:
        self(self, g.lhs());
        self(self, g.rhs());
        return;
      case Kind::Bundle:
        self(self, g.body());
        return;
    }
  };
  walk(walk, f);
  return out;
}

}  // namespace bfoml
