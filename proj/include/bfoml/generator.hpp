// Seeded random formulas and models for fuzzing and property tests.

#ifndef BFOML_GENERATOR_HPP_
#define BFOML_GENERATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>

#include "bfoml/formula.hpp"
#include "bfoml/kripke.hpp"
#include "bfoml/syntax.hpp"

namespace bfoml {

struct GeneratorWeights {
  unsigned literal = 4;
  unsigned constant = 1;  // T or F
  unsigned conjunction = 4;
  unsigned disjunction = 2;
  unsigned bundle = 5;
  unsigned negation = 2;     // surface mode only
  unsigned implication = 1;  // surface mode only
};

struct GeneratorOptions {
  std::size_t max_modal_depth = 3;
  // Nesting of connectives between two bundles.
  std::size_t max_boolean_depth = 2;
  // The output is a conjunction of this many independent formulas.
  std::size_t conjuncts = 3;
  // Predicates P1.. with arities cycling 1, 2, 1, 2, ... capped at max_arity.
  std::size_t predicates = 2;
  std::size_t max_arity = 2;
  // Free variables a literal may use besides the bound ones in scope.
  std::size_t free_variables = 1;
  Fragment fragment = Fragment::Full;
  // Surface mode: emit negations, implications and reused binder names; no
  // NNF or cleansing. Otherwise outputs are clean NNF.
  bool surface = false;
  GeneratorWeights weights;
};

class Generator {
 public:
  Generator(std::uint64_t seed, GeneratorOptions opts);

  Formula formula();

  // Random valid increasing-domain model over the predicates of `sig`, with
  // 1..max_worlds worlds and 1..max_domain elements. constant forces
  // delta(w) = D everywhere.
  KripkeModel model(const std::map<std::string, std::size_t>& sig, std::size_t max_worlds,
                    std::size_t max_domain, bool constant = false);

  // Uniform draw from [0, n) by modulo; stable across standard libraries.
  std::size_t below(std::size_t n) { return n == 0 ? 0 : rng_() % n; }

  const GeneratorOptions& options() const { return opts_; }

 private:
  Formula node(std::size_t modal_left, std::size_t bool_left, std::vector<Var>& scope);
  Formula literal(const std::vector<Var>& scope);
  Formula bundle(std::size_t modal_left, std::vector<Var>& scope);
  std::size_t pick(const std::vector<unsigned>& weights);

  std::mt19937_64 rng_;
  GeneratorOptions opts_;
  std::size_t binder_counter_ = 0;
};

std::string predicate_name(std::size_t i);
std::size_t predicate_arity(std::size_t i, std::size_t max_arity);

}  // namespace bfoml

#endif  // BFOML_GENERATOR_HPP_
