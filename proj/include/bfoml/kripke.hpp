// Increasing-domain Kripke models and the satisfaction relation.

#ifndef BFOML_KRIPKE_HPP_
#define BFOML_KRIPKE_HPP_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bfoml/formula.hpp"

namespace bfoml {

enum class DomainSemantics { Increasing, Constant };

std::string to_string(DomainSemantics s);

using Tuple = std::vector<std::string>;

// (W, D, delta, R, rho). World and element ids are strings; rho maps a world
// to the extension of each predicate there (absent predicates are empty).
struct KripkeModel {
  std::vector<std::string> worlds;
  std::vector<std::string> domain;
  std::vector<std::pair<std::string, std::string>> edges;
  std::map<std::string, std::set<std::string>> local;
  std::map<std::string, std::map<std::string, std::set<Tuple>>> rho;

  friend bool operator==(const KripkeModel&, const KripkeModel&) = default;
};

using Assignment = std::map<Var, std::string>;

struct Violation {
  enum class Kind {
    NoWorlds,
    EmptyDomain,
    DuplicateId,
    UnknownWorld,
    UnknownElement,
    EmptyLocalDomain,
    NotMonotone,
    ArityMismatch,
  };
  Kind kind;
  std::string world;   // offending world, or source of the offending edge
  std::string target;  // edge target / element / predicate, when relevant
  std::string message;
};

// First violated model invariant, in a fixed order: non-empty W and D,
// distinct ids, known worlds on edges, local domains (known worlds, elements
// of D, non-empty), monotonicity along edges, rho over D with one arity per
// predicate.
std::optional<Violation> validate(const KripkeModel& m);

// delta(w) = D for every world.
bool is_constant_domain(const KripkeModel& m);

// Immutable indexed view of a validated model; evaluates formulas without
// re-validating. Throws ModelError from the constructor if validate fails.
class ModelChecker {
 public:
  explicit ModelChecker(const KripkeModel& m);
  ~ModelChecker();
  ModelChecker(ModelChecker&&) noexcept;
  ModelChecker& operator=(ModelChecker&&) noexcept;

  // M, world, sigma |= f. Throws ModelError for an unknown world and
  // AssignmentError if sigma is not relevant at `world` or misses a free
  // variable of f.
  bool holds(const std::string& world, const Assignment& sigma, const Formula& f) const;

  const KripkeModel& model() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool check(const KripkeModel& m, const std::string& world, const Assignment& sigma,
           const Formula& f);

// sigma(x) = x.str() for every x in vars.
Assignment identity_assignment(const VarSet& vars);

}  // namespace bfoml

#endif  // BFOML_KRIPKE_HPP_
