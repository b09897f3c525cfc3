// Exhaustive model enumeration over tiny bounds. Shares nothing with the
// SAT-backed oracle except the model checker.

#ifndef BFOML_TESTS_BRUTE_FORCE_HPP_
#define BFOML_TESTS_BRUTE_FORCE_HPP_

#include <cstddef>
#include <vector>

#include "bfoml/kripke.hpp"
#include "bfoml/syntax.hpp"

namespace bfoml::testing {

// True iff some model with at most 2 worlds and 2 elements satisfies f at
// some world under some relevant assignment of its free variables. Predicates
// must be unary.
inline bool brute_force_sat(const Formula& f, DomainSemantics sem) {
  const auto sig = signature(f);
  const VarSet fv = free_vars(f);
  for (std::size_t nw = 1; nw <= 2; ++nw) {
    for (std::size_t nd = 1; nd <= 2; ++nd) {
      std::vector<std::string> worlds, domain;
      for (std::size_t i = 0; i < nw; ++i) worlds.push_back("w" + std::to_string(i));
      for (std::size_t i = 0; i < nd; ++i) domain.push_back("d" + std::to_string(i));
      const std::size_t edge_bits = nw * nw;
      const std::size_t local_bits = nw * nd;
      const std::size_t fact_bits = nw * sig.size() * nd;
      for (std::size_t e = 0; e < (1u << edge_bits); ++e) {
        for (std::size_t l = 0; l < (1u << local_bits); ++l) {
          if (sem == DomainSemantics::Constant && l != (1u << local_bits) - 1) continue;
          KripkeModel base;
          base.worlds = worlds;
          base.domain = domain;
          for (std::size_t w = 0; w < nw; ++w) {
            for (std::size_t v = 0; v < nw; ++v) {
              if (e >> (w * nw + v) & 1) base.edges.emplace_back(worlds[w], worlds[v]);
            }
            auto& loc = base.local[worlds[w]];
            for (std::size_t d = 0; d < nd; ++d) {
              if (l >> (w * nd + d) & 1) loc.insert(domain[d]);
            }
          }
          if (validate(base)) continue;
          for (std::size_t r = 0; r < (1u << fact_bits); ++r) {
            KripkeModel m = base;
            std::size_t bit = 0;
            for (std::size_t w = 0; w < nw; ++w) {
              for (const auto& [p, arity] : sig) {
                for (std::size_t d = 0; d < nd; ++d, ++bit) {
                  if (r >> bit & 1) m.rho[worlds[w]][p].insert({domain[d]});
                }
              }
            }
            ModelChecker mc(m);
            for (const auto& w : worlds) {
              // Every assignment of fv into delta(w).
              std::vector<std::string> loc(m.local[w].begin(), m.local[w].end());
              std::vector<std::size_t> idx(fv.size(), 0);
              while (true) {
                Assignment sigma;
                std::size_t i = 0;
                for (const Var& v : fv) sigma[v] = loc[idx[i++]];
                if (mc.holds(w, sigma, f)) return true;
                std::size_t k = 0;
                while (k < idx.size() && ++idx[k] == loc.size()) idx[k++] = 0;
                if (k == idx.size()) break;
              }
            }
          }
        }
      }
    }
  }
  return false;
}

}  // namespace bfoml::testing

#endif  // BFOML_TESTS_BRUTE_FORCE_HPP_
