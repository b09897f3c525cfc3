// Bounded finite-model search: the independent oracle the tableaux are
// tested against.

#ifndef BFOML_ORACLE_HPP_
#define BFOML_ORACLE_HPP_

#include <cstddef>
#include <optional>
#include <string>

#include "bfoml/formula.hpp"
#include "bfoml/kripke.hpp"

namespace bfoml {

inline constexpr std::size_t kDefaultOracleBudget = 5'000'000;

struct OracleResult {
  KripkeModel model;    // worlds w0.., elements d0..
  std::string root;     // always "w0"
  Assignment assignment;  // free variables of the searched formula
};

// Searches for a model with at most max_worlds worlds and max_domain elements
// satisfying cleanse(to_nnf(f)) at a root world. Sizes are tried in order
// (|W| ascending, then |D| ascending) and the first size admitting a model
// wins, so a returned model has the fewest worlds possible within the bounds.
//
// Each size is one propositional satisfiability problem (edges, local domains
// and facts become Boolean variables; the formula is grounded over worlds and
// elements) handed to CaDiCaL. Every model returned has been re-verified with
// check. Throws ResourceLimit once the grounding or the solver's conflict
// count exceeds `budget`.
std::optional<OracleResult> enumerate_sat(const Formula& f, std::size_t max_worlds,
                                          std::size_t max_domain, DomainSemantics semantics,
                                          std::size_t budget = kDefaultOracleBudget);

}  // namespace bfoml

#endif  // BFOML_ORACLE_HPP_
