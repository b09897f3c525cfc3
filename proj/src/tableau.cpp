#include "bfoml/tableau.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <variant>

#include "bfoml/error.hpp"
#include "bfoml/syntax.hpp"

namespace bfoml {

using Kind = Formula::Kind;

std::string to_string(Rule r) {
  switch (r) {
    case Rule::None:
      return "-";
    case Rule::And:
      return "and";
    case Rule::Or:
      return "or";
    case Rule::BR:
      return "BR";
    case Rule::End:
      return "END";
  }
  return "?";
}

namespace {

bool is_negated_atom(const Formula& f) { return f.kind() == Kind::Not && f.operand().is_atom(); }

// Drops T; everything else is kept as is.
FormulaSet normalized(FormulaSet gamma) {
  gamma.erase(Formula::top());
  return gamma;
}

FormulaSet literals_of(const FormulaSet& gamma) {
  FormulaSet out;
  for (const Formula& f : gamma) {
    if (f.is_literal()) out.insert(f);
  }
  return out;
}

void collect_binders(const Formula& f, std::vector<Var>& out) {
  switch (f.kind()) {
    case Kind::Not:
      collect_binders(f.operand(), out);
      break;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      collect_binders(f.lhs(), out);
      collect_binders(f.rhs(), out);
      break;
    case Kind::Bundle:
      out.push_back(f.bound_var());
      collect_binders(f.body(), out);
      break;
    default:
      break;
  }
}

// Free variables within `allowed`, no binder in `free_only`, and no variable
// bound twice across the whole label.
void assert_label_clean(const FormulaSet& gamma, const VarSet& allowed, const VarSet& free_only) {
  std::vector<Var> binders;
  for (const Formula& f : gamma) {
    for (const Var& v : free_vars(f)) {
      if (!allowed.count(v)) {
        throw std::logic_error("label invariant: free variable " + v.str() +
                               " outside the label's variable set in " + to_string(gamma));
      }
    }
    collect_binders(f, binders);
  }
  std::sort(binders.begin(), binders.end());
  if (std::adjacent_find(binders.begin(), binders.end()) != binders.end()) {
    throw std::logic_error("label invariant: label is not clean: " + to_string(gamma));
  }
  for (const Var& v : binders) {
    if (free_only.count(v)) {
      throw std::logic_error("label invariant: " + v.str() + " occurs bound in " +
                             to_string(gamma));
    }
  }
}

struct Measure {
  std::size_t rank = 0;
  std::size_t connectives = 0;
  friend auto operator<=>(const Measure&, const Measure&) = default;
};

Measure measure(const FormulaSet& gamma) {
  Measure m;
  for (const Formula& f : gamma) {
    m.rank = std::max(m.rank, modal_depth(f));
    m.connectives += connective_count(f);
  }
  return m;
}

class Renamer {
 public:
  Renamer(VarSet reserved, FreshVars fresh) : used_(std::move(reserved)), fresh_(std::move(fresh)) {}

  Formula rename(const Formula& f) {
    switch (f.kind()) {
      case Kind::Atom: {
        std::vector<Var> args(f.args().begin(), f.args().end());
        bool changed = false;
        for (Var& v : args) {
          if (auto it = env_.find(v); it != env_.end() && it->second != v) {
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
        return Formula::negation(rename(f.operand()));
      case Kind::And:
        return Formula::conjunction(rename(f.lhs()), rename(f.rhs()));
      case Kind::Or:
        return Formula::disjunction(rename(f.lhs()), rename(f.rhs()));
      case Kind::Implies:
        return Formula::implication(rename(f.lhs()), rename(f.rhs()));
      case Kind::Bundle: {
        const Var& x = f.bound_var();
        Var y = used_.count(x) ? fresh_.fresh(x.base()) : x;
        used_.insert(y);
        auto saved = env_.find(x) == env_.end() ? std::optional<Var>() : std::optional<Var>(env_[x]);
        env_[x] = y;
        Formula body = rename(f.body());
        if (saved) {
          env_[x] = *saved;
        } else {
          env_.erase(x);
        }
        return Formula::bundle(f.quantifier(), f.modality(), y, std::move(body));
      }
    }
    return f;
  }

 private:
  VarSet used_;
  FreshVars fresh_;
  std::map<Var, Var> env_;
};

// Child formula -> the parent formulas it was derived from.
using Sources = std::map<Formula, std::vector<Formula>>;

void add_source(Sources& s, const Formula& f, const std::vector<Formula>& from) {
  auto& v = s[f];
  v.insert(v.end(), from.begin(), from.end());
}

// Renames binders so that no variable of `free_only` is bound and no two
// bundles in the label bind the same variable; first occurrence (canonical
// order, pre-order) keeps its name. Sources are carried over to the renamed
// formulas and merged where two formulas become equal.
Sources rename_apart(const Sources& gamma, const VarSet& free_only) {
  VarSet taken = free_only;
  for (const auto& [f, src] : gamma) {
    VarSet vs = all_vars(f);
    taken.insert(vs.begin(), vs.end());
  }
  Renamer r(free_only, FreshVars(taken));
  Sources out;
  for (const auto& [f, src] : gamma) add_source(out, r.rename(f), src);
  return out;
}

FormulaSet keys(const Sources& s) {
  FormulaSet out;
  for (const auto& [f, src] : s) out.insert(f);
  return out;
}

// Conjunction and disjunction steps shared by both tableaux; nullopt when
// Gamma holds neither.
std::optional<Expansion> expand_boolean(const Label& label) {
  for (const Formula& f : label.gamma) {
    if (f.kind() != Kind::And) continue;
    Label child{label.world, label.gamma, label.vars};
    child.gamma.erase(f);
    child.gamma.insert(f.lhs());
    child.gamma.insert(f.rhs());
    child.gamma = normalized(std::move(child.gamma));
    Expansion e{Rule::And, {std::move(child)}, label.vars, {}, {}};
    return e;
  }
  for (const Formula& f : label.gamma) {
    if (f.kind() != Kind::Or) continue;
    Expansion e{Rule::Or, {}, label.vars, {}, {}};
    for (const Formula& branch : {f.lhs(), f.rhs()}) {
      Label child{label.world, label.gamma, label.vars};
      child.gamma.erase(f);
      child.gamma.insert(branch);
      child.gamma = normalized(std::move(child.gamma));
      e.children.push_back(std::move(child));
    }
    return e;
  }
  return std::nullopt;
}

bool is_bundle(const Formula& f, Quantifier q, Modality m) {
  return f.is_bundle() && f.quantifier() == q && f.modality() == m;
}

}  // namespace

bool has_clash(const FormulaSet& gamma) {
  if (gamma.count(Formula::bot())) return true;
  for (const Formula& f : gamma) {
    if (is_negated_atom(f) && gamma.count(f.operand())) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Increasing domains

Expansion expand_increasing(const Label& label) {
  if (auto e = expand_boolean(label)) return std::move(*e);

  std::vector<Formula> ex_dia, ex_box, all_dia, all_box;
  for (const Formula& f : label.gamma) {
    if (!f.is_bundle()) continue;
    if (is_bundle(f, Quantifier::Exists, Modality::Diamond)) ex_dia.push_back(f);
    if (is_bundle(f, Quantifier::Exists, Modality::Box)) ex_box.push_back(f);
    if (is_bundle(f, Quantifier::Forall, Modality::Diamond)) all_dia.push_back(f);
    if (is_bundle(f, Quantifier::Forall, Modality::Box)) all_box.push_back(f);
  }

  if (ex_dia.empty() && all_dia.empty()) {
    if (ex_box.empty() && all_box.empty()) return Expansion{Rule::None, {}, label.vars, {}, {}};
    Label child{label.world, literals_of(label.gamma), label.vars};
    return Expansion{Rule::End, {std::move(child)}, label.vars, {}, {}};
  }

  VarSet dom = label.vars;
  for (const Formula& f : ex_dia) dom.insert(f.bound_var());
  for (const Formula& f : ex_box) dom.insert(f.bound_var());

  // Instances at a bound variable also stem from the bundle that introduced it.
  std::map<Var, Formula> binder;
  for (const Formula& f : ex_dia) binder.emplace(f.bound_var(), f);
  for (const Formula& f : ex_box) binder.emplace(f.bound_var(), f);
  auto instance_sources = [&](const Formula& f, const Var& z) {
    std::vector<Formula> from{f};
    if (auto it = binder.find(z); it != binder.end() && !label.vars.count(z)) {
      from.push_back(it->second);
    }
    return from;
  };

  Sources common;
  for (const Formula& f : ex_box) add_source(common, f.body(), {f});
  for (const Formula& f : all_box) {
    for (const Var& z : dom) {
      add_source(common, substitute(f.body(), z, f.bound_var()), instance_sources(f, z));
    }
  }

  Expansion e{Rule::BR, {}, dom, {}, {}};
  std::set<FormulaSet> seen;
  std::set<Formula> seen_heads;
  auto add_child = [&](std::string world, const Formula& head, std::vector<Formula> src) {
    // Equal heads give equal labels; skip them before building anything.
    if (!seen_heads.insert(head).second) return;
    Sources gamma = common;
    add_source(gamma, head, src);
    gamma = rename_apart(gamma, dom);
    gamma.erase(Formula::top());
    FormulaSet set = keys(gamma);
    // Identical siblings share one completion; keep the first.
    if (!seen.insert(set).second) return;
    e.children.push_back(Label{std::move(world), std::move(set), dom});
    e.sources.push_back(std::move(gamma));
    e.heads.push_back(std::move(src));
  };
  for (const Formula& f : ex_dia) {
    add_child(label.world + ".v_{" + f.bound_var().str() + "}", f.body(), {f});
  }
  for (const Formula& f : all_dia) {
    for (const Var& y : dom) {
      add_child(label.world + ".v^{" + y.str() + "}_{" + f.bound_var().str() + "}",
                substitute(f.body(), y, f.bound_var()), instance_sources(f, y));
    }
  }
  return e;
}

// ---------------------------------------------------------------------------
// Constant domains

ConstantDomainPlan build_domain(const Formula& theta) {
  ConstantDomainPlan plan;
  plan.theta = cleanse(to_nnf(theta));
  if (classify(plan.theta) != Fragment::ExistsBox) {
    throw FragmentError("constant-domain tableau accepts only the exists-box fragment (E x [] "
                        "and A x <> bundles); got " + to_string(classify(plan.theta)));
  }
  plan.depth = modal_depth(plan.theta);
  plan.exists_vars = exists_box_vars(plan.theta);

  FreshVars fresh(all_vars(plan.theta));
  plan.z = fresh.taken(Var("z")) ? fresh.fresh("z") : Var("z");
  fresh.reserve(plan.z);
  plan.domain = free_vars(plan.theta);
  for (const Var& x : plan.exists_vars) {
    auto& pool = plan.pools[x];
    for (std::size_t k = 0; k < plan.depth; ++k) pool.push_back(fresh.fresh(x.base()));
    plan.domain.insert(pool.begin(), pool.end());
  }
  plan.domain.insert(plan.z);
  return plan;
}

Expansion expand_constant(const Label& label, const ConstantDomainPlan& plan) {
  if (auto e = expand_boolean(label)) return std::move(*e);

  std::vector<Formula> ex_box, all_dia;
  for (const Formula& f : label.gamma) {
    if (is_bundle(f, Quantifier::Exists, Modality::Box)) {
      ex_box.push_back(f);
    } else if (is_bundle(f, Quantifier::Forall, Modality::Diamond)) {
      all_dia.push_back(f);
    } else if (f.is_bundle()) {
      throw std::logic_error("constant tableau met a bundle outside the fragment: " +
                             to_string(f));
    }
  }

  if (all_dia.empty()) {
    if (ex_box.empty()) return Expansion{Rule::None, {}, plan.domain, {}, {}};
    Label child{label.world, literals_of(label.gamma), label.vars};
    return Expansion{Rule::End, {std::move(child)}, plan.domain, {}, {}};
  }

  Sources witnessed;
  VarSet used = label.vars;
  for (const Formula& f : ex_box) {
    const Var& x = f.bound_var();
    auto pit = plan.pools.find(x);
    if (pit == plan.pools.end()) {
      throw std::logic_error("no witness pool for " + x.str());
    }
    auto wit = std::find_if(pit->second.begin(), pit->second.end(),
                            [&](const Var& v) { return !label.vars.count(v); });
    if (wit == pit->second.end()) {
      throw std::logic_error("witness pool for " + x.str() + " exhausted at " + label.world);
    }
    add_source(witnessed, substitute(f.body(), *wit, x), {f});
    used.insert(*wit);
  }

  Expansion e{Rule::BR, {}, plan.domain, {}, {}};
  std::set<std::pair<FormulaSet, VarSet>> seen;
  for (const Formula& f : all_dia) {
    for (const Var& y : plan.domain) {
      Sources gamma = witnessed;
      add_source(gamma, substitute(f.body(), y, f.bound_var()), {f});
      gamma.erase(Formula::top());
      VarSet c = used;
      c.insert(y);
      FormulaSet set = keys(gamma);
      if (!seen.emplace(set, c).second) continue;
      e.children.push_back(Label{label.world + ".v^{" + y.str() + "}_{" + f.bound_var().str() + "}",
                                 std::move(set), std::move(c)});
      e.sources.push_back(std::move(gamma));
      // Witnesses fix C for the child, so every exists-box counts as a cause.
      std::vector<Formula> head = ex_box;
      head.push_back(f);
      e.heads.push_back(std::move(head));
    }
  }
  return e;
}

// ---------------------------------------------------------------------------
// Search

namespace {

struct Completion {
  std::string world;
  VarSet domain;
  FormulaSet literals;
  std::vector<Completion> children;
};

// Set of disjunction branch points, identified by their search depth.
class Deps {
 public:
  void add(std::size_t id) {
    if (bits_.size() <= id / 64) bits_.resize(id / 64 + 1, 0);
    bits_[id / 64] |= std::uint64_t{1} << (id % 64);
  }
  void remove(std::size_t id) {
    if (id / 64 < bits_.size()) bits_[id / 64] &= ~(std::uint64_t{1} << (id % 64));
  }
  bool contains(std::size_t id) const {
    return id / 64 < bits_.size() && (bits_[id / 64] >> (id % 64) & 1);
  }
  void merge(const Deps& o) {
    if (bits_.size() < o.bits_.size()) bits_.resize(o.bits_.size(), 0);
    for (std::size_t i = 0; i < o.bits_.size(); ++i) bits_[i] |= o.bits_[i];
  }

 private:
  std::vector<std::uint64_t> bits_;
};

// For each formula of a label, the branch points it was derived under.
using DepMap = std::map<Formula, Deps>;

// Depth-first search with dependency-directed backtracking: a closed subtree
// reports the disjunction choices its clash depends on, and a disjunction
// whose left branch closed independently of that choice skips the right
// branch, which would close for the same reason.
class Search {
 public:
  using Expand = std::function<Expansion(const Label&)>;
  using Invariant = std::function<void(const Label&)>;

  Search(Expand expand, Invariant invariant, const TableauOptions& opts, TableauResult& out)
      : expand_(std::move(expand)), invariant_(std::move(invariant)), opts_(opts), out_(out) {}

  std::optional<Completion> run(Label root) {
    DepMap deps;
    for (const Formula& f : root.gamma) deps.emplace(f, Deps{});
    auto r = solve(std::move(root), std::move(deps), 0, true);
    if (auto* c = std::get_if<Completion>(&r)) return std::move(*c);
    return std::nullopt;
  }

 private:
  using Outcome = std::variant<Completion, Deps>;

  static Deps deps_of(const DepMap& deps, const Formula& f) {
    auto it = deps.find(f);
    return it == deps.end() ? Deps{} : it->second;
  }

  static std::optional<Deps> clash(const FormulaSet& gamma, const DepMap& deps) {
    const Formula bot = Formula::bot();
    if (gamma.count(bot)) return deps_of(deps, bot);
    for (const Formula& f : gamma) {
      if (is_negated_atom(f) && gamma.count(f.operand())) {
        Deps d = deps_of(deps, f);
        d.merge(deps_of(deps, f.operand()));
        return d;
      }
    }
    return std::nullopt;
  }

  // Dependencies of the child's formulas: inherited from the parent where the
  // formula was already present, `fallback` for new ones.
  static DepMap child_deps(const FormulaSet& gamma, const DepMap& parent, const Deps& fallback) {
    DepMap out;
    for (const Formula& f : gamma) {
      auto it = parent.find(f);
      out.emplace(f, it == parent.end() ? fallback : it->second);
    }
    return out;
  }

  Outcome solve(Label label, DepMap deps, std::size_t depth, bool check_label) {
    out_.max_depth = std::max(out_.max_depth, depth);
    visit();
    // Boolean rules never introduce variables, so the label invariant only
    // needs checking where BR created the label.
    if (check_label) invariant_(label);
    while (true) {
      if (auto d = clash(label.gamma, deps)) {
        record(depth, label, Rule::None, true);
        return std::move(*d);
      }
      // Conjunctions are decomposed in place, one rule application each.
      auto conj = std::find_if(label.gamma.begin(), label.gamma.end(),
                               [](const Formula& f) { return f.kind() == Kind::And; });
      if (conj != label.gamma.end()) {
        record(depth, label, Rule::And, false);
        const Measure before = measure(label.gamma);
        const Formula f = *conj;
        const Deps from = deps_of(deps, f);
        label.gamma.erase(conj);
        deps.erase(f);
        for (const Formula& part : {f.lhs(), f.rhs()}) {
          if (part.kind() == Kind::Top) continue;
          if (label.gamma.insert(part).second) deps.emplace(part, from);
        }
        if (!(measure(label.gamma) < before)) {
          throw std::logic_error("termination measure did not decrease at " + label.world);
        }
        visit();
        continue;
      }
      Expansion e = expand_(label);
      record(depth, label, e.rule, false);
      switch (e.rule) {
        case Rule::And:
          throw std::logic_error("conjunction left after saturation");
        case Rule::Or: {
          Deps from = principal_deps(label, e.children.front(), deps);
          // The lighter branch first; models without needless successors are found sooner.
          if (measure(e.children[1].gamma) < measure(e.children[0].gamma)) {
            std::swap(e.children[0], e.children[1]);
          }
          Deps left = from;
          left.add(depth);
          assert_decreases(label, e.children[0]);
          assert_decreases(label, e.children[1]);
          DepMap left_deps = child_deps(e.children[0].gamma, deps, left);
          auto r = solve(std::move(e.children[0]), std::move(left_deps), depth + 1, false);
          if (std::holds_alternative<Completion>(r)) return r;
          Deps why = std::get<Deps>(std::move(r));
          if (!why.contains(depth)) return why;  // the right branch closes too
          why.remove(depth);
          Deps right = from;
          right.merge(why);
          DepMap right_deps = child_deps(e.children[1].gamma, deps, right);
          return solve(std::move(e.children[1]), std::move(right_deps), depth + 1, false);
        }
        case Rule::BR: {
          Completion c{label.world, e.domain, literals_of(label.gamma), {}};
          for (std::size_t i = 0; i < e.children.size(); ++i) {
            Label& child = e.children[i];
            assert_decreases(label, child);
            // The child exists because of its diamond; everything in it depends on that too.
            auto deps_from = [&](const std::vector<Formula>& from) {
              Deps d;
              for (const Formula& g : from) d.merge(deps_of(deps, g));
              return d;
            };
            const Deps head = deps_from(e.heads.at(i));
            DepMap cd;
            for (const auto& [f, from] : e.sources.at(i)) {
              Deps d = deps_from(from);
              d.merge(head);
              cd.emplace(f, std::move(d));
            }
            // A label's subtree depends only on the label, so earlier results
            // are reused. A cached closure blames every formula of the child.
            const bool cache = !opts_.trace;
            LabelKey key{child.gamma, child.vars};
            if (cache) {
              if (auto it = solved_.find(key); it != solved_.end()) {
                if (!it->second) {
                  Deps all;
                  for (const auto& [f, d] : cd) all.merge(d);
                  return all;
                }
                c.children.push_back(rebase(*it->second, it->second->world, child.world));
                continue;
              }
            }
            std::string world = child.world;
            auto sub = solve(std::move(child), std::move(cd), depth + 1, true);
            if (auto* d = std::get_if<Deps>(&sub)) {
              if (cache) solved_.emplace(std::move(key), nullptr);
              return std::move(*d);
            }
            auto& done = std::get<Completion>(sub);
            if (cache) solved_.emplace(std::move(key), std::make_shared<const Completion>(done));
            c.children.push_back(std::move(done));
          }
          return c;
        }
        case Rule::End: {
          Label& leaf = e.children.front();
          assert_decreases(label, leaf);
          visit();
          record(depth + 1, leaf, Rule::None, false);
          out_.max_depth = std::max(out_.max_depth, depth + 1);
          return Completion{label.world, e.domain, leaf.gamma, {}};
        }
        case Rule::None:
          return Completion{label.world, e.domain, literals_of(label.gamma), {}};
      }
    }
  }

  // Dependencies of the formula a Boolean rule decomposed: the one present in
  // the parent but not in the child.
  static Deps principal_deps(const Label& parent, const Label& child, const DepMap& deps) {
    for (const Formula& f : parent.gamma) {
      if (!child.gamma.count(f)) return deps_of(deps, f);
    }
    return Deps{};
  }

  void visit() {
    if (++out_.nodes > opts_.node_budget) {
      throw ResourceLimit("tableau exceeded the node budget of " +
                          std::to_string(opts_.node_budget));
    }
  }

  void record(std::size_t depth, const Label& label, Rule rule, bool closed) {
    if (opts_.trace) out_.trace.push_back(TraceEntry{depth, label, rule, closed});
  }

  static void assert_decreases(const Label& parent, const Label& child) {
    if (!(measure(child.gamma) < measure(parent.gamma))) {
      throw std::logic_error("termination measure did not decrease at " + parent.world);
    }
  }

  // Copy of c with the world prefix `from` replaced by `to` throughout.
  static Completion rebase(const Completion& c, const std::string& from, const std::string& to) {
    Completion out{to + c.world.substr(from.size()), c.domain, c.literals, {}};
    for (const Completion& child : c.children) out.children.push_back(rebase(child, from, to));
    return out;
  }

  using LabelKey = std::pair<FormulaSet, VarSet>;

  Expand expand_;
  Invariant invariant_;
  // Completed BR children; null for a closed one.
  std::map<LabelKey, std::shared_ptr<const Completion>> solved_;
  const TableauOptions& opts_;
  TableauResult& out_;
};

void add_world(const Completion& c, const std::string* parent, KripkeModel& m, VarSet& domain) {
  m.worlds.push_back(c.world);
  if (parent) m.edges.emplace_back(*parent, c.world);
  auto& loc = m.local[c.world];
  for (const Var& v : c.domain) {
    loc.insert(v.str());
    domain.insert(v);
  }
  for (const Formula& lit : c.literals) {
    if (!lit.is_atom()) continue;
    Tuple t;
    for (const Var& v : lit.args()) t.push_back(v.str());
    m.rho[c.world][lit.predicate()].insert(std::move(t));
  }
  for (const Completion& child : c.children) add_world(child, &c.world, m, domain);
}

KripkeModel extract(const Completion& root) {
  KripkeModel m;
  VarSet domain;
  add_world(root, nullptr, m, domain);
  for (const Var& v : domain) m.domain.push_back(v.str());
  return m;
}

void verify(TableauResult& r) {
  if (!check(*r.model, r.root, r.assignment, r.theta)) {
    throw std::logic_error("extracted model does not satisfy " + to_string(r.theta));
  }
}

}  // namespace

TableauResult decide_increasing(const Formula& f, const TableauOptions& opts) {
  TableauResult r;
  r.theta = cleanse(to_nnf(f));
  const VarSet taken = all_vars(r.theta);
  const Var z = taken.count(Var("z")) ? FreshVars(taken).fresh("z") : Var("z");
  VarSet root_vars = free_vars(r.theta);
  root_vars.insert(z);

  Search search(
      expand_increasing,
      [](const Label& l) { assert_label_clean(l.gamma, l.vars, l.vars); }, opts, r);
  auto c = search.run(Label{r.root, normalized({r.theta}), root_vars});
  r.sat = c.has_value();
  if (r.sat) {
    r.model = extract(*c);
    r.assignment = identity_assignment(root_vars);
    verify(r);
  }
  return r;
}

TableauResult decide_constant_eb(const Formula& f, const TableauOptions& opts) {
  const ConstantDomainPlan plan = build_domain(f);
  TableauResult r;
  r.theta = plan.theta;
  const VarSet root_vars = free_vars(plan.theta);

  Search search(
      [&plan](const Label& l) { return expand_constant(l, plan); },
      [&plan](const Label& l) { assert_label_clean(l.gamma, l.vars, plan.domain); }, opts, r);
  auto c = search.run(Label{r.root, normalized({plan.theta}), root_vars});
  r.sat = c.has_value();
  if (r.sat) {
    r.model = extract(*c);
    r.assignment = identity_assignment(root_vars);
    verify(r);
  }
  return r;
}

std::string format_trace(const std::vector<TraceEntry>& trace) {
  std::ostringstream os;
  for (const TraceEntry& e : trace) {
    os << std::string(2 * e.depth, ' ') << e.label.world << " [" << to_string(e.rule) << "] "
       << to_string(e.label.gamma) << " F=" << to_string(e.label.vars);
    if (e.closed) os << "  (closed)";
    os << '\n';
  }
  return os.str();
}

}  // namespace bfoml
