#include "bfoml/generator.hpp"

#include <algorithm>
#include <set>

namespace bfoml {

std::string predicate_name(std::size_t i) { return "P" + std::to_string(i + 1); }

std::size_t predicate_arity(std::size_t i, std::size_t max_arity) {
  return std::min<std::size_t>(i % 2 + 1, std::max<std::size_t>(max_arity, 1));
}

Generator::Generator(std::uint64_t seed, GeneratorOptions opts)
    : rng_(seed), opts_(std::move(opts)) {}

std::size_t Generator::pick(const std::vector<unsigned>& weights) {
  unsigned total = 0;
  for (unsigned w : weights) total += w;
  std::size_t r = below(total);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (r < weights[i]) return i;
    r -= weights[i];
  }
  return weights.size() - 1;
}

Formula Generator::formula() {
  binder_counter_ = 0;
  std::vector<Var> scope;
  Formula f = node(opts_.max_modal_depth, opts_.max_boolean_depth, scope);
  for (std::size_t i = 1; i < opts_.conjuncts; ++i) {
    f = Formula::conjunction(f, node(opts_.max_modal_depth, opts_.max_boolean_depth, scope));
  }
  return opts_.surface ? f : cleanse(f);
}

Formula Generator::literal(const std::vector<Var>& scope) {
  std::vector<Var> pool = scope;
  static const char* kFree[] = {"a", "b", "c"};
  for (std::size_t i = 0; i < std::min<std::size_t>(opts_.free_variables, 3); ++i) {
    pool.emplace_back(kFree[i]);
  }
  const std::size_t p = below(std::max<std::size_t>(opts_.predicates, 1));
  const std::size_t arity = predicate_arity(p, opts_.max_arity);
  std::vector<Var> args;
  for (std::size_t i = 0; i < arity; ++i) {
    // Prefer the innermost bound variables so that bundles are not vacuous.
    if (!scope.empty() && below(3) != 0) {
      const std::size_t k = std::min<std::size_t>(below(2), scope.size() - 1);
      args.push_back(scope[scope.size() - 1 - k]);
    } else if (!pool.empty()) {
      args.push_back(pool[below(pool.size())]);
    } else {
      args.emplace_back("a");
    }
  }
  Formula atom = Formula::atom(predicate_name(p), std::move(args));
  return below(2) ? Formula::negation(atom) : atom;
}

Formula Generator::bundle(std::size_t modal_left, std::vector<Var>& scope) {
  Quantifier q = below(2) ? Quantifier::Exists : Quantifier::Forall;
  Modality m;
  switch (opts_.fragment) {
    case Fragment::ExistsBox:
      m = q == Quantifier::Exists ? Modality::Box : Modality::Diamond;
      break;
    case Fragment::ExistsDiamond:
      m = q == Quantifier::Exists ? Modality::Diamond : Modality::Box;
      break;
    default:
      m = below(2) ? Modality::Box : Modality::Diamond;
  }
  static const char* kBound[] = {"x", "y", "z", "u"};
  Var v = opts_.surface ? Var(kBound[below(4)]) : Var(kBound[binder_counter_++ % 4]);
  scope.push_back(v);
  Formula body = node(modal_left - 1, opts_.max_boolean_depth, scope);
  scope.pop_back();
  return Formula::bundle(q, m, std::move(v), std::move(body));
}

Formula Generator::node(std::size_t modal_left, std::size_t bool_left, std::vector<Var>& scope) {
  const GeneratorWeights& w = opts_.weights;
  enum { Lit, Const, And, Or, Bundle, Not, Imp };
  std::vector<unsigned> weights{w.literal,
                                w.constant,
                                bool_left > 0 ? w.conjunction : 0u,
                                bool_left > 0 ? w.disjunction : 0u,
                                modal_left > 0 ? w.bundle : 0u,
                                opts_.surface && bool_left > 0 ? w.negation : 0u,
                                opts_.surface && bool_left > 0 ? w.implication : 0u};
  switch (pick(weights)) {
    case Lit:
      return literal(scope);
    case Const:
      return below(2) ? Formula::top() : Formula::bot();
    case And: {
      Formula a = node(modal_left, bool_left - 1, scope);
      return Formula::conjunction(a, node(modal_left, bool_left - 1, scope));
    }
    case Or: {
      Formula a = node(modal_left, bool_left - 1, scope);
      return Formula::disjunction(a, node(modal_left, bool_left - 1, scope));
    }
    case Bundle:
      return bundle(modal_left, scope);
    case Not:
      return Formula::negation(node(modal_left, bool_left - 1, scope));
    default: {
      Formula a = node(modal_left, bool_left - 1, scope);
      return Formula::implication(a, node(modal_left, bool_left - 1, scope));
    }
  }
}

KripkeModel Generator::model(const std::map<std::string, std::size_t>& sig,
                             std::size_t max_worlds, std::size_t max_domain, bool constant) {
  KripkeModel m;
  const std::size_t nw = 1 + below(std::max<std::size_t>(max_worlds, 1));
  const std::size_t nd = 1 + below(std::max<std::size_t>(max_domain, 1));
  for (std::size_t i = 0; i < nw; ++i) m.worlds.push_back("w" + std::to_string(i));
  for (std::size_t i = 0; i < nd; ++i) m.domain.push_back("d" + std::to_string(i));
  for (const auto& w : m.worlds) {
    for (const auto& v : m.worlds) {
      if (below(3) == 0) m.edges.emplace_back(w, v);
    }
  }
  for (const auto& w : m.worlds) {
    auto& loc = m.local[w];
    if (constant) {
      loc.insert(m.domain.begin(), m.domain.end());
      continue;
    }
    for (const auto& d : m.domain) {
      if (below(2)) loc.insert(d);
    }
    if (loc.empty()) loc.insert(m.domain[below(nd)]);
  }
  // Close local domains under edges.
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [w, v] : m.edges) {
      const auto& from = m.local[w];
      auto& to = m.local[v];
      const std::size_t before = to.size();
      to.insert(from.begin(), from.end());
      changed = changed || to.size() != before;
    }
  }
  for (const auto& w : m.worlds) {
    for (const auto& [p, arity] : sig) {
      std::vector<std::size_t> idx(arity, 0);
      while (true) {
        if (below(2)) {
          Tuple t;
          for (std::size_t i : idx) t.push_back(m.domain[i]);
          m.rho[w][p].insert(std::move(t));
        }
        std::size_t k = 0;
        while (k < arity && ++idx[k] == nd) idx[k++] = 0;
        if (k == arity) break;
      }
    }
  }
  return m;
}

}  // namespace bfoml
