#include "bfoml/kripke.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "bfoml/error.hpp"
#include "bfoml/syntax.hpp"

namespace bfoml {

std::string to_string(DomainSemantics s) {
  return s == DomainSemantics::Increasing ? "increasing" : "constant";
}

// ---------------------------------------------------------------------------
// Validation

std::optional<Violation> validate(const KripkeModel& m) {
  using K = Violation::Kind;
  if (m.worlds.empty()) return Violation{K::NoWorlds, "", "", "model has no worlds"};
  if (m.domain.empty()) return Violation{K::EmptyDomain, "", "", "domain is empty"};

  const std::set<std::string> worlds(m.worlds.begin(), m.worlds.end());
  const std::set<std::string> domain(m.domain.begin(), m.domain.end());
  if (worlds.size() != m.worlds.size()) {
    return Violation{K::DuplicateId, "", "", "duplicate world id"};
  }
  if (domain.size() != m.domain.size()) {
    return Violation{K::DuplicateId, "", "", "duplicate domain element"};
  }

  for (const auto& [w, v] : m.edges) {
    if (!worlds.count(w) || !worlds.count(v)) {
      return Violation{K::UnknownWorld, w, v, "edge (" + w + "," + v + ") names an unknown world"};
    }
  }

  for (const auto& [w, elems] : m.local) {
    if (!worlds.count(w)) {
      return Violation{K::UnknownWorld, w, "", "local domain given for unknown world " + w};
    }
    for (const auto& e : elems) {
      if (!domain.count(e)) {
        return Violation{K::UnknownElement, w, e,
                         "local domain of " + w + " contains " + e + ", which is not in D"};
      }
    }
  }
  for (const auto& w : m.worlds) {
    auto it = m.local.find(w);
    if (it == m.local.end() || it->second.empty()) {
      return Violation{K::EmptyLocalDomain, w, "", "local domain of " + w + " is empty"};
    }
  }

  for (const auto& [w, v] : m.edges) {
    const auto& dw = m.local.at(w);
    const auto& dv = m.local.at(v);
    if (!std::includes(dv.begin(), dv.end(), dw.begin(), dw.end())) {
      return Violation{K::NotMonotone, w, v,
                       "edge (" + w + "," + v + ") violates delta(" + w + ") <= delta(" + v + ")"};
    }
  }

  std::map<std::string, std::size_t> arity;
  for (const auto& [w, preds] : m.rho) {
    if (!worlds.count(w)) {
      return Violation{K::UnknownWorld, w, "", "interpretation given for unknown world " + w};
    }
    for (const auto& [p, tuples] : preds) {
      for (const auto& t : tuples) {
        auto [it, fresh] = arity.emplace(p, t.size());
        if (!fresh && it->second != t.size()) {
          return Violation{K::ArityMismatch, w, p, "predicate " + p + " used with two arities"};
        }
        for (const auto& e : t) {
          if (!domain.count(e)) {
            return Violation{K::UnknownElement, w, e,
                             "rho(" + w + "," + p + ") mentions " + e + ", which is not in D"};
          }
        }
      }
    }
  }
  return std::nullopt;
}

bool is_constant_domain(const KripkeModel& m) {
  const std::set<std::string> domain(m.domain.begin(), m.domain.end());
  for (const auto& w : m.worlds) {
    auto it = m.local.find(w);
    if (it == m.local.end() || it->second != domain) return false;
  }
  return true;
}

Assignment identity_assignment(const VarSet& vars) {
  Assignment out;
  for (const Var& v : vars) out.emplace(v, v.str());
  return out;
}

// ---------------------------------------------------------------------------
// Model checking

struct ModelChecker::Impl {
  KripkeModel model;
  std::unordered_map<std::string, int> world_index;
  std::unordered_map<std::string, int> element_index;
  std::vector<std::vector<int>> successors;
  std::vector<std::vector<int>> local;       // sorted element ids per world
  std::vector<std::vector<char>> in_local;   // membership bitmap per world
  std::map<std::string, int> predicate_index;
  // facts[world][predicate] = set of tuples of element ids
  std::vector<std::vector<std::set<std::vector<int>>>> facts;

  // Formula compiled against this model: variables become slots.
  struct Node {
    Formula::Kind kind;
    int predicate = -1;  // -1: predicate unknown to the model (empty)
    std::vector<int> slots;
    int slot = -1;
    Quantifier q = Quantifier::Exists;
    Modality m = Modality::Box;
    int a = -1, b = -1;
  };

  struct Compiled {
    std::vector<Node> nodes;
    std::map<Var, int> slot_of;
    int root = -1;
  };

  int compile(const Formula& f, Compiled& c) const {
    Node n;
    n.kind = f.kind();
    auto slot = [&](const Var& v) {
      auto [it, fresh] = c.slot_of.emplace(v, static_cast<int>(c.slot_of.size()));
      return it->second;
    };
    switch (f.kind()) {
      case Formula::Kind::Atom: {
        auto it = predicate_index.find(f.predicate());
        n.predicate = it == predicate_index.end() ? -1 : it->second;
        for (const Var& v : f.args()) n.slots.push_back(slot(v));
        break;
      }
      case Formula::Kind::Top:
      case Formula::Kind::Bot:
        break;
      case Formula::Kind::Not:
        n.a = compile(f.operand(), c);
        break;
      case Formula::Kind::And:
      case Formula::Kind::Or:
      case Formula::Kind::Implies:
        n.a = compile(f.lhs(), c);
        n.b = compile(f.rhs(), c);
        break;
      case Formula::Kind::Bundle:
        n.q = f.quantifier();
        n.m = f.modality();
        n.slot = slot(f.bound_var());
        n.a = compile(f.body(), c);
        break;
    }
    c.nodes.push_back(std::move(n));
    return static_cast<int>(c.nodes.size()) - 1;
  }

  void assert_relevant(int v, const std::vector<int>& env) const {
    for (int e : env) {
      if (e >= 0 && !in_local[v][e]) {
        throw std::logic_error("assignment lost relevance along an edge into " +
                               model.worlds[v] + "; model is not monotone");
      }
    }
  }

  // Body of a bundle at successor v for every successor (box) or some (diamond).
  bool modal_step(const Compiled& c, const Node& n, int w, std::vector<int>& env) const {
    if (n.m == Modality::Box) {
      for (int v : successors[w]) {
        assert_relevant(v, env);
        if (!eval(c, n.a, v, env)) return false;
      }
      return true;
    }
    for (int v : successors[w]) {
      assert_relevant(v, env);
      if (eval(c, n.a, v, env)) return true;
    }
    return false;
  }

  bool eval(const Compiled& c, int id, int w, std::vector<int>& env) const {
    const Node& n = c.nodes[id];
    switch (n.kind) {
      case Formula::Kind::Atom: {
        if (n.predicate < 0) return false;
        std::vector<int> tuple;
        tuple.reserve(n.slots.size());
        for (int s : n.slots) tuple.push_back(env[s]);
        return facts[w][n.predicate].count(tuple) != 0;
      }
      case Formula::Kind::Top:
        return true;
      case Formula::Kind::Bot:
        return false;
      case Formula::Kind::Not:
        return !eval(c, n.a, w, env);
      case Formula::Kind::And:
        return eval(c, n.a, w, env) && eval(c, n.b, w, env);
      case Formula::Kind::Or:
        return eval(c, n.a, w, env) || eval(c, n.b, w, env);
      case Formula::Kind::Implies:
        return !eval(c, n.a, w, env) || eval(c, n.b, w, env);
      case Formula::Kind::Bundle: {
        const int saved = env[n.slot];
        bool result = n.q == Quantifier::Forall;
        for (int d : local[w]) {
          env[n.slot] = d;
          const bool body = modal_step(c, n, w, env);
          if (n.q == Quantifier::Exists && body) {
            result = true;
            break;
          }
          if (n.q == Quantifier::Forall && !body) {
            result = false;
            break;
          }
        }
        env[n.slot] = saved;
        return result;
      }
    }
    return false;
  }
};

ModelChecker::ModelChecker(const KripkeModel& m) : impl_(std::make_unique<Impl>()) {
  if (auto v = validate(m)) throw ModelError("invalid model: " + v->message);
  Impl& s = *impl_;
  s.model = m;
  for (std::size_t i = 0; i < m.worlds.size(); ++i) s.world_index[m.worlds[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < m.domain.size(); ++i) {
    s.element_index[m.domain[i]] = static_cast<int>(i);
  }
  const std::size_t nw = m.worlds.size();
  s.successors.assign(nw, {});
  for (const auto& [w, v] : m.edges) {
    auto& succ = s.successors[s.world_index.at(w)];
    const int vi = s.world_index.at(v);
    if (std::find(succ.begin(), succ.end(), vi) == succ.end()) succ.push_back(vi);
  }
  s.local.assign(nw, {});
  s.in_local.assign(nw, std::vector<char>(m.domain.size(), 0));
  for (std::size_t w = 0; w < nw; ++w) {
    for (const auto& e : m.local.at(m.worlds[w])) {
      const int ei = s.element_index.at(e);
      s.local[w].push_back(ei);
      s.in_local[w][ei] = 1;
    }
    std::sort(s.local[w].begin(), s.local[w].end());
  }
  for (const auto& [w, preds] : m.rho) {
    for (const auto& [p, tuples] : preds) {
      s.predicate_index.emplace(p, static_cast<int>(s.predicate_index.size()));
    }
  }
  s.facts.assign(nw, std::vector<std::set<std::vector<int>>>(s.predicate_index.size()));
  for (const auto& [w, preds] : m.rho) {
    const int wi = s.world_index.at(w);
    for (const auto& [p, tuples] : preds) {
      auto& ext = s.facts[wi][s.predicate_index.at(p)];
      for (const auto& t : tuples) {
        std::vector<int> ids;
        for (const auto& e : t) ids.push_back(s.element_index.at(e));
        ext.insert(std::move(ids));
      }
    }
  }
}

ModelChecker::~ModelChecker() = default;
ModelChecker::ModelChecker(ModelChecker&&) noexcept = default;
ModelChecker& ModelChecker::operator=(ModelChecker&&) noexcept = default;

const KripkeModel& ModelChecker::model() const { return impl_->model; }

bool ModelChecker::holds(const std::string& world, const Assignment& sigma,
                         const Formula& f) const {
  const Impl& s = *impl_;
  auto wit = s.world_index.find(world);
  if (wit == s.world_index.end()) throw ModelError("unknown world " + world);
  const int w = wit->second;

  Impl::Compiled c;
  c.root = s.compile(f, c);
  std::vector<int> env(c.slot_of.size(), -1);

  for (const auto& [x, e] : sigma) {
    auto eit = s.element_index.find(e);
    if (eit == s.element_index.end()) {
      throw AssignmentError("assignment maps " + x.str() + " to unknown element " + e);
    }
    if (!s.in_local[w][eit->second]) {
      throw AssignmentError("assignment is not relevant at " + world + ": " + x.str() + " -> " +
                            e + " is outside the local domain");
    }
    if (auto sit = c.slot_of.find(x); sit != c.slot_of.end()) env[sit->second] = eit->second;
  }
  for (const Var& x : free_vars(f)) {
    if (!sigma.count(x)) {
      throw AssignmentError("free variable " + x.str() + " is not assigned");
    }
  }
  return s.eval(c, c.root, w, env);
}

bool check(const KripkeModel& m, const std::string& world, const Assignment& sigma,
           const Formula& f) {
  return ModelChecker(m).holds(world, sigma, f);
}

}  // namespace bfoml
