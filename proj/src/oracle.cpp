#include "bfoml/oracle.hpp"

#include <cadical.hpp>

#include <map>
#include <stdexcept>
#include <vector>

#include "bfoml/error.hpp"
#include "bfoml/syntax.hpp"

namespace bfoml {
namespace {

using Kind = Formula::Kind;

// NNF formula flattened into nodes; variables become slots.
struct Node {
  Kind kind;
  bool negated = false;  // negated atom
  std::string predicate;
  std::vector<int> args;
  Quantifier q = Quantifier::Exists;
  Modality m = Modality::Box;
  int slot = -1;
  int a = -1, b = -1;
  std::vector<int> free;  // slots free in this node, ascending
};

struct Program {
  std::vector<Node> nodes;
  std::map<Var, int> slot_of;
  std::vector<Var> var_of;
  int root = -1;

  int slot(const Var& v) {
    auto [it, fresh] = slot_of.emplace(v, static_cast<int>(var_of.size()));
    if (fresh) var_of.push_back(v);
    return it->second;
  }

  int compile(const Formula& f) {
    Node n;
    n.kind = f.kind();
    switch (f.kind()) {
      case Kind::Not: {
        Formula atom = f.operand();
        if (!atom.is_atom()) throw std::logic_error("oracle expects NNF input");
        n.kind = Kind::Atom;
        n.negated = true;
        n.predicate = atom.predicate();
        for (const Var& v : atom.args()) n.args.push_back(slot(v));
        break;
      }
      case Kind::Atom:
        n.predicate = f.predicate();
        for (const Var& v : f.args()) n.args.push_back(slot(v));
        break;
      case Kind::Top:
      case Kind::Bot:
        break;
      case Kind::And:
      case Kind::Or:
        n.a = compile(f.lhs());
        n.b = compile(f.rhs());
        break;
      case Kind::Bundle:
        n.q = f.quantifier();
        n.m = f.modality();
        n.slot = slot(f.bound_var());
        n.a = compile(f.body());
        break;
      case Kind::Implies:
        throw std::logic_error("oracle expects NNF input");
    }
    VarSet fv = free_vars(f);
    for (const Var& v : fv) n.free.push_back(slot(v));
    std::sort(n.free.begin(), n.free.end());
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }
};

// Grounding of one program over a fixed number of worlds and elements.
class Grounding {
 public:
  Grounding(const Program& p, int worlds, int elems, DomainSemantics sem, std::size_t budget)
      : p_(p), nw_(worlds), nd_(elems), budget_(budget) {
    truth_ = new_var();
    clause({truth_});
    edge_.assign(nw_ * nw_, 0);
    for (int& e : edge_) e = new_var();
    local_.assign(nw_ * nd_, 0);
    if (sem == DomainSemantics::Constant) {
      for (int& l : local_) l = truth_;
    } else {
      for (int& l : local_) l = new_var();
      for (int w = 0; w < nw_; ++w) {
        std::vector<int> some;
        for (int d = 0; d < nd_; ++d) some.push_back(local(w, d));
        clause(some);
      }
      for (int w = 0; w < nw_; ++w) {
        for (int v = 0; v < nw_; ++v) {
          for (int d = 0; d < nd_; ++d) clause({-edge(w, v), -local(w, d), local(v, d)});
        }
      }
    }
  }

  // Literal implying that node `id` holds at world w under env.
  int encode(int id, int w, std::vector<int>& env) {
    const Node& n = p_.nodes[id];
    std::vector<int> key{id, w};
    for (int s : n.free) key.push_back(env[s]);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (++nodes_ > budget_) throw ResourceLimit("oracle grounding exceeded the node budget");

    int out = 0;
    switch (n.kind) {
      case Kind::Top:
        out = truth_;
        break;
      case Kind::Bot:
        out = -truth_;
        break;
      case Kind::Atom: {
        std::vector<int> tuple;
        for (int s : n.args) tuple.push_back(env[s]);
        const int fact = fact_var(w, n.predicate, tuple);
        out = n.negated ? -fact : fact;
        break;
      }
      case Kind::And: {
        const int x = encode(n.a, w, env), y = encode(n.b, w, env);
        out = new_var();
        clause({-out, x});
        clause({-out, y});
        break;
      }
      case Kind::Or: {
        const int x = encode(n.a, w, env), y = encode(n.b, w, env);
        out = new_var();
        clause({-out, x, y});
        break;
      }
      case Kind::Bundle:
        out = encode_bundle(n, w, env);
        break;
      default:
        throw std::logic_error("oracle expects NNF input");
    }
    memo_.emplace(std::move(key), out);
    return out;
  }

  void clause(std::initializer_list<int> lits) {
    for (int l : lits) solver_.add(l);
    solver_.add(0);
  }
  void clause(const std::vector<int>& lits) {
    for (int l : lits) solver_.add(l);
    solver_.add(0);
  }

  CaDiCaL::Solver& solver() { return solver_; }
  int edge(int w, int v) const { return edge_[w * nw_ + v]; }
  int local(int w, int d) const { return local_[w * nd_ + d]; }
  const std::map<std::pair<int, std::string>, std::map<std::vector<int>, int>>& facts() const {
    return facts_;
  }

 private:
  int new_var() { return ++vars_; }

  int fact_var(int w, const std::string& pred, const std::vector<int>& tuple) {
    auto& ext = facts_[{w, pred}];
    auto [it, fresh] = ext.emplace(tuple, 0);
    if (fresh) it->second = new_var();
    return it->second;
  }

  int encode_bundle(const Node& n, int w, std::vector<int>& env) {
    const int saved = env[n.slot];
    const int out = new_var();
    const bool exists = n.q == Quantifier::Exists;
    const bool box = n.m == Modality::Box;
    std::vector<int> choices{-out};  // exists: out -> OR of choices
    for (int d = 0; d < nd_; ++d) {
      env[n.slot] = d;
      if (exists && box) {
        const int s = new_var();
        choices.push_back(s);
        clause({-s, local(w, d)});
        for (int v = 0; v < nw_; ++v) clause({-s, -edge(w, v), encode(n.a, v, env)});
      } else if (exists) {
        for (int v = 0; v < nw_; ++v) {
          const int s = new_var();
          choices.push_back(s);
          clause({-s, local(w, d)});
          clause({-s, edge(w, v)});
          clause({-s, encode(n.a, v, env)});
        }
      } else if (box) {
        for (int v = 0; v < nw_; ++v) {
          clause({-out, -local(w, d), -edge(w, v), encode(n.a, v, env)});
        }
      } else {
        std::vector<int> some{-out, -local(w, d)};
        for (int v = 0; v < nw_; ++v) {
          const int s = new_var();
          some.push_back(s);
          clause({-s, edge(w, v)});
          clause({-s, encode(n.a, v, env)});
        }
        clause(some);
      }
    }
    if (exists) clause(choices);
    env[n.slot] = saved;
    return out;
  }

  const Program& p_;
  const int nw_, nd_;
  const std::size_t budget_;
  std::size_t nodes_ = 0;
  int vars_ = 0;
  int truth_ = 0;
  std::vector<int> edge_, local_;
  std::map<std::pair<int, std::string>, std::map<std::vector<int>, int>> facts_;
  std::map<std::vector<int>, int> memo_;
  CaDiCaL::Solver solver_;
};

// Restricted-growth strings of length k over [0, n): assignments of k free
// variables to elements up to renaming of elements.
void growth_strings(std::size_t k, int n, std::vector<int>& cur, int max_used,
                    std::vector<std::vector<int>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (int d = 0; d <= std::min(max_used + 1, n - 1); ++d) {
    cur.push_back(d);
    growth_strings(k, n, cur, std::max(max_used, d), out);
    cur.pop_back();
  }
}

std::string world_name(int w) { return "w" + std::to_string(w); }
std::string element_name(int d) { return "d" + std::to_string(d); }

}  // namespace

std::optional<OracleResult> enumerate_sat(const Formula& f, std::size_t max_worlds,
                                          std::size_t max_domain, DomainSemantics semantics,
                                          std::size_t budget) {
  const Formula theta = cleanse(to_nnf(f));
  Program prog;
  prog.root = prog.compile(theta);
  const VarSet fv = free_vars(theta);
  std::vector<int> free_slots;
  for (const Var& v : fv) free_slots.push_back(prog.slot_of.at(v));

  for (std::size_t nw = 1; nw <= max_worlds; ++nw) {
    for (std::size_t nd = 1; nd <= max_domain; ++nd) {
      std::vector<std::vector<int>> sigmas;
      std::vector<int> cur;
      growth_strings(free_slots.size(), static_cast<int>(nd), cur, -1, sigmas);
      for (const auto& sigma : sigmas) {
        Grounding g(prog, static_cast<int>(nw), static_cast<int>(nd), semantics, budget);
        std::vector<int> env(prog.var_of.size(), -1);
        for (std::size_t i = 0; i < free_slots.size(); ++i) {
          env[free_slots[i]] = sigma[i];
          g.clause({g.local(0, sigma[i])});
        }
        g.clause({g.encode(prog.root, 0, env)});
        g.solver().limit("conflicts", static_cast<int>(std::min<std::size_t>(budget, 1u << 30)));
        const int res = g.solver().solve();
        if (res == 0) throw ResourceLimit("oracle solver exceeded the conflict budget");
        if (res != 10) continue;

        auto val = [&](int lit) { return g.solver().val(lit) > 0; };
        OracleResult out;
        KripkeModel& m = out.model;
        for (std::size_t w = 0; w < nw; ++w) m.worlds.push_back(world_name(static_cast<int>(w)));
        for (std::size_t d = 0; d < nd; ++d) m.domain.push_back(element_name(static_cast<int>(d)));
        for (std::size_t w = 0; w < nw; ++w) {
          auto& loc = m.local[m.worlds[w]];
          for (std::size_t d = 0; d < nd; ++d) {
            if (val(g.local(static_cast<int>(w), static_cast<int>(d)))) loc.insert(m.domain[d]);
          }
          for (std::size_t v = 0; v < nw; ++v) {
            if (val(g.edge(static_cast<int>(w), static_cast<int>(v)))) {
              m.edges.emplace_back(m.worlds[w], m.worlds[v]);
            }
          }
        }
        for (const auto& [key, ext] : g.facts()) {
          for (const auto& [tuple, lit] : ext) {
            if (!val(lit)) continue;
            Tuple t;
            for (int d : tuple) t.push_back(m.domain[d]);
            m.rho[m.worlds[key.first]][key.second].insert(std::move(t));
          }
        }
        out.root = m.worlds[0];
        for (std::size_t i = 0; i < free_slots.size(); ++i) {
          out.assignment.emplace(prog.var_of[free_slots[i]], m.domain[sigma[i]]);
        }
        if (!check(m, out.root, out.assignment, theta)) {
          throw std::logic_error("oracle produced a model that fails the checker");
        }
        return out;
      }
    }
  }
  return std::nullopt;
}

}  // namespace bfoml
