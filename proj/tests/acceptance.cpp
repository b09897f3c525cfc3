// Acceptance run: one PASS/FAIL line per criterion, supplementary lines
// marked with a letter suffix. Exit status is 0 iff every numbered criterion
// passes.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bfoml/error.hpp"
#include "bfoml/fo.hpp"
#include "bfoml/generator.hpp"
#include "bfoml/kripke.hpp"
#include "bfoml/oracle.hpp"
#include "bfoml/parser.hpp"
#include "bfoml/syntax.hpp"
#include "bfoml/tableau.hpp"

namespace {

using namespace bfoml;
using Clock = std::chrono::steady_clock;

// Pinned limits.
constexpr double kGoldenSecondsPerFormula = 1.0;
constexpr double kOracleAgreementSeconds = 600.0;
constexpr std::size_t kDepthFactor = 8;
constexpr std::size_t kOracleWorlds = 4, kOracleDomain = 3;
constexpr std::uint64_t kSeed = 20240601;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Tally {
  int passed = 0, failed = 0;
  void line(const std::string& id, bool ok, const std::string& what, bool counts = true) {
    std::printf("%s %-4s %s\n", ok ? "PASS" : "FAIL", id.c_str(), what.c_str());
    std::fflush(stdout);
    if (counts) (ok ? passed : failed)++;
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---------------------------------------------------------------------------
// Golden suite. Verdicts were computed once by the increasing tableau,
// cross-checked against the bounded oracle and by hand, then frozen.

struct Golden {
  const char* text;
  bool sat;
};

const Golden kGolden[] = {
    {"E x [] P(x)", true},
    {"(E x [] P(x) & A y <> !P(y))", false},
    {"(P(x) & !P(x))", false},
    {"E x <> P(x)", true},
    {"A y <> P(y)", true},
    {"(E x [] P(x) & Q(z))", true},
    {"A x <> !P(x)", true},
    {"E x [] (P(x) & E y [] Q(x,y))", true},
    {"(E x [] P(x) & A y <> Q(y))", true},
    {"(E x [] P(x) & R(z))", true},
    {"(P(x) & E y [] Q(y))", true},
    {"E x <> (P(x) & Q(y))", true},
    {"!E x [] P(x)", true},
    {"!(P(x) & Q(y))", true},
    {"!A x <> !P(x)", true},
    {"(E x [] P(x) | E x [] Q(x))", true},
    {"(P(x) & E x [] Q(x))", true},
    {"A x [] P(x)", true},
    {"(E x [] P(x) & A y [] Q(y))", true},
    {"E x [] E y [] Q(x,y)", true},
    {"(A x [] A y [] !P(x) & A z [] E u <> P(u))", true},
    {"(A x [] A y [] !P(x) & A z [] E u <> !P(u))", true},
    {"((A x [] A y [] !P(x) & A z [] E u <> P(u)) & E v <> T)", true},
    // Epistemic readings; the constant Mary is an outer exists-box variable
    // and both agents share one modality.
    {"E m [] !E x [] Kill(x,m)", true},
    {"E x [] !E y [] Prove(x,y)", true},
    {"A x <> E y [] Friend(x,y)", true},
    {"E x [] (E y [] Key(x,y) & !E y [] Key(x,y))", true},
    {"(E x <> P(x) & A y [] !P(y))", false},
    {"(E x <> T & A y [] F)", false},
    {"(A x [] P(x) & E y <> !P(y))", false},
    {"E x <> E y <> (P(x) & !P(y))", true},
    {"(E x <> A y [] P(y) & E z <> A u [] !P(u))", true},
    {"(A x [] (P(x) -> E y <> Q(y)) & E z <> P(z))", true},
    {"(E x <> (P(x) & E y <> T) & A z [] A u [] F)", false},
    {"E x [] F", true},
    {"E x <> F", false},
    {"T", true},
    {"F", false},
    {"(E x <> P(x,x) & A y [] !P(y,y))", false},
    {"(A x [] !E y <> P(x,y) & E z <> E u <> P(z,u))", false},
    {"(E x <> E y <> T & A z [] A u [] E v <> T)", true},
    {"((A x [] E y <> P(x,y) & E z <> T) & A u [] A v [] !P(u,v))", false},
};

// ---------------------------------------------------------------------------
// Shared checks

// Why an extracted model is not a witness, or empty.
std::string model_defect(const Formula& f, const TableauResult& r, bool constant) {
  if (!r.model) return "no model";
  if (auto v = validate(*r.model)) return "invalid: " + v->message;
  if (constant && !is_constant_domain(*r.model)) return "not constant-domain";
  try {
    if (!check(*r.model, r.root, identity_assignment(free_vars(f)), f)) return "root fails";
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

struct DepthTracker {
  std::size_t worst_excess = 0, checked = 0, violations = 0;
  double worst_ratio = 0;
  void add(const TableauResult& r) {
    ++checked;
    const std::size_t bound = kDepthFactor * r.theta.size();
    worst_ratio = std::max(worst_ratio, double(r.max_depth) / double(r.theta.size()));
    if (r.max_depth > bound) ++violations;
  }
};

std::vector<Formula> corpus(std::uint64_t seed, Fragment fragment, std::size_t n) {
  GeneratorOptions o;
  o.max_modal_depth = 3;
  o.predicates = 2;
  o.max_arity = 2;
  o.fragment = fragment;
  Generator gen(seed, o);
  std::vector<Formula> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(gen.formula());
  return out;
}

// ---------------------------------------------------------------------------

void golden_suite(Tally& t, DepthTracker& depth, std::size_t& sound_checked,
                  std::vector<std::string>& sound_failures) {
  std::size_t match = 0;
  double slowest = 0;
  std::string first_bad;
  for (const Golden& g : kGolden) {
    const Formula f = parse_formula(g.text);
    const auto start = Clock::now();
    const TableauResult r = decide_increasing(f);
    const double secs = seconds_since(start);
    slowest = std::max(slowest, secs);
    depth.add(r);
    const bool ok = r.sat == g.sat && secs < kGoldenSecondsPerFormula;
    match += ok;
    if (!ok && first_bad.empty()) first_bad = g.text;
    if (r.sat) {
      ++sound_checked;
      if (auto d = model_defect(f, r, false); !d.empty()) sound_failures.push_back(d);
    }
    if (classify(f) == Fragment::ExistsBox) {
      const TableauResult c = decide_constant_eb(f);
      depth.add(c);
      if (c.sat) {
        ++sound_checked;
        if (auto d = model_defect(f, c, true); !d.empty()) sound_failures.push_back(d);
      }
    }
  }
  const std::size_t n = std::size(kGolden);
  t.line("1", match == n && n >= 30,
         fmt("golden suite: %zu/%zu verdicts match, slowest %.3f s (limit %.0f s)%s%s", match, n,
             slowest, kGoldenSecondsPerFormula, first_bad.empty() ? "" : "; first mismatch ",
             first_bad.c_str()));
}

void soundness(Tally& t, DepthTracker& depth, std::size_t sound_checked,
               std::vector<std::string> failures) {
  // 1000 formulas: half full fragment, half exists-box.
  std::size_t checked = sound_checked, limits = 0;
  for (Fragment frag : {Fragment::Full, Fragment::ExistsBox}) {
    for (const Formula& f : corpus(kSeed + 2, frag, 500)) {
      try {
        const TableauResult r = decide_increasing(f);
        depth.add(r);
        if (r.sat) {
          ++checked;
          if (auto d = model_defect(f, r, false); !d.empty()) failures.push_back(d);
        }
        if (frag == Fragment::ExistsBox) {
          const TableauResult c = decide_constant_eb(f);
          depth.add(c);
          if (c.sat) {
            ++checked;
            if (auto d = model_defect(f, c, true); !d.empty()) failures.push_back(d);
          }
        }
      } catch (const ResourceLimit&) {
        ++limits;
      } catch (const std::logic_error& e) {
        failures.push_back(e.what());
      }
    }
  }
  t.line("2", failures.empty() && limits == 0,
         fmt("soundness: %zu/%zu SAT models validate and satisfy the root (golden + 1000 fuzzed), "
             "%zu resource limits%s%s",
             checked - failures.size(), checked, limits, failures.empty() ? "" : "; first: ",
             failures.empty() ? "" : failures.front().c_str()));
}

void oracle_agreement(Tally& t, DepthTracker& depth) {
  const auto start = Clock::now();
  std::size_t misses = 0, oracle_sat = 0, tableau_sat = 0, limits = 0;
  std::string first;
  for (const Formula& f : corpus(kSeed + 3, Fragment::Full, 500)) {
    try {
      const TableauResult r = decide_increasing(f);
      depth.add(r);
      tableau_sat += r.sat;
      const bool found =
          enumerate_sat(f, kOracleWorlds, kOracleDomain, DomainSemantics::Increasing).has_value();
      oracle_sat += found;
      if (found && !r.sat) {
        ++misses;
        if (first.empty()) first = to_string(f);
      }
    } catch (const ResourceLimit&) {
      ++limits;
    }
  }
  const double secs = seconds_since(start);
  t.line("3", misses == 0 && limits == 0 && secs < kOracleAgreementSeconds,
         fmt("oracle agreement: %zu misses over 500 formulas (oracle SAT %zu, tableau SAT %zu, "
             "%zu resource limits), %.1f s (limit %.0f s)%s%s",
             misses, oracle_sat, tableau_sat, limits, secs, kOracleAgreementSeconds,
             first.empty() ? "" : "; first ", first.c_str()));
}

void constant_equivalence(Tally& t, DepthTracker& depth) {
  std::size_t agree = 0, misses = 0, limits = 0, sat = 0;
  std::string first;
  const auto formulas = corpus(kSeed + 4, Fragment::ExistsBox, 500);
  for (const Formula& f : formulas) {
    try {
      const TableauResult a = decide_increasing(f);
      const TableauResult b = decide_constant_eb(f);
      depth.add(a);
      depth.add(b);
      sat += b.sat;
      if (a.sat == b.sat) {
        ++agree;
      } else if (first.empty()) {
        first = to_string(f);
      }
      if (!b.sat &&
          enumerate_sat(f, kOracleWorlds, kOracleDomain, DomainSemantics::Constant).has_value()) {
        ++misses;
      }
    } catch (const ResourceLimit&) {
      ++limits;
    }
  }
  t.line("4", agree == formulas.size(),
         fmt("increasing vs constant tableau on exists-box: %zu/%zu agree (%zu SAT), %zu resource "
             "limits%s%s",
             agree, formulas.size(), sat, limits, first.empty() ? "" : "; first ", first.c_str()));
  t.line("4b", misses == 0,
         fmt("constant oracle (%zu worlds, %zu elements) finds no model the constant tableau "
             "rejects: %zu misses",
             kOracleWorlds, kOracleDomain, misses),
         false);
}

// ---------------------------------------------------------------------------
// FO reduction

const char* kSentences[] = {
    "EX x . R(x,x)",
    "ALL x . R(x,x)",
    "ALL x . !R(x,x)",
    "EX x . !R(x,x)",
    "EX x . EX y . R(x,y)",
    "EX x . ALL y . R(x,y)",
    "ALL x . EX y . R(x,y)",
    "ALL x . EX y . (R(x,y) & !R(y,x))",
    "EX x . EX y . (R(x,y) & !R(y,x))",
    "ALL x . ALL y . (R(x,y) -> R(y,x))",
    "EX x . ALL y . !R(y,x)",
    "ALL x . ALL y . (R(x,y) | R(y,x))",
    "ALL x . ALL y . ALL z . ((R(x,y) & R(y,z)) -> R(x,z))",
    "ALL x . EX y . EX z . (R(x,y) & (R(y,z) & !R(x,z)))",
    "EX x . ALL y . EX z . (R(x,y) -> (R(y,z) & !R(z,z)))",
};

// Chain v1 -> v2 -> w1 .. wn with out-degree 1, wn fanning out to one u_d per
// element, u_d without successors, n+3 worlds on every root-to-leaf path.
std::string literal_shape_defect(const KripkeModel& k, const FOModel& m, std::size_t n) {
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& [a, b] : k.edges) succ[a].push_back(b);
  std::vector<std::string> chain{"v1", "v2"};
  for (std::size_t i = 1; i <= n; ++i) chain.push_back("w" + std::to_string(i));
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (succ[chain[i]] != std::vector<std::string>{chain[i + 1]}) return chain[i] + " out-degree";
  }
  if (succ[chain.back()].size() != m.domain.size()) return chain.back() + " fan-out";
  for (const auto& d : m.domain) {
    if (!succ["u_" + d].empty()) return "u_" + d + " has successors";
  }
  if (k.worlds.size() != chain.size() + m.domain.size()) return "world count";
  if (chain.size() + 1 != n + 3) return "path length";
  return "";
}

// v1 -> w1 .. wn chain, fan-out at wn, every u_d -> t, t -> t.
std::string repaired_shape_defect(const KripkeModel& k, const FOModel& m, std::size_t n) {
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& [a, b] : k.edges) succ[a].push_back(b);
  std::vector<std::string> chain{"v1"};
  for (std::size_t i = 1; i <= n; ++i) chain.push_back("w" + std::to_string(i));
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (succ[chain[i]] != std::vector<std::string>{chain[i + 1]}) return chain[i] + " out-degree";
  }
  if (succ[chain.back()].size() != m.domain.size()) return chain.back() + " fan-out";
  for (const auto& d : m.domain) {
    if (succ["u_" + d] != std::vector<std::string>{"t"}) return "u_" + d + " successors";
  }
  if (succ["t"] != std::vector<std::string>{"t"}) return "t successors";
  if (k.worlds.size() != n + m.domain.size() + 2) return "world count";
  return "";
}

void fo_reduction(Tally& t) {
  std::size_t models = 0, literal_ok = 0, shape_ok = 0, repaired_ok = 0, repaired_shape_ok = 0;
  std::string first_literal, first_shape;
  for (const char* s : kSentences) {
    const FOFormula alpha = parse_fo(s);
    const Formula psi = translate_sentence(alpha);
    const std::size_t n = alpha.prefix.size();
    for (const FOModel& m : fo_models(alpha, 3)) {
      ++models;
      const KripkeModel lit = build_witness_model(m, alpha);
      if (check(lit, "v1", {}, psi)) {
        ++literal_ok;
      } else if (first_literal.empty()) {
        first_literal = s;
      }
      if (auto d = literal_shape_defect(lit, m, n); d.empty()) {
        ++shape_ok;
      } else if (first_shape.empty()) {
        first_shape = d;
      }
      const KripkeModel rep = build_witness_model_repaired(m, alpha);
      repaired_ok += check(rep, "v1", {}, psi);
      repaired_shape_ok += repaired_shape_defect(rep, m, n).empty();
    }
  }
  t.line("5", literal_ok == models && shape_ok == models,
         fmt("witness model of the forward reduction: psi holds at v1 in %zu/%zu models over 15 "
             "sentences, shape invariants hold in %zu/%zu%s%s",
             literal_ok, models, shape_ok, models,
             first_literal.empty() ? "" : "; first failing sentence ", first_literal.c_str()));
  t.line("5b", repaired_ok == models && repaired_shape_ok == models,
         fmt("repaired witness model (v1 -> w1..wn -> u_d -> t -> t): psi holds at v1 in %zu/%zu, "
             "shape %zu/%zu",
             repaired_ok, models, repaired_shape_ok, models),
         false);

  // Bounded bridge: FO model found iff a constant Kripke model is found.
  std::size_t bridge_ok = 0, bridge_total = 0;
  std::string bridge_bad;
  for (const char* s : {"EX x . R(x,x)", "ALL x . !R(x,x)", "EX x . (R(x,x) & !R(x,x))",
                        "EX x . EX y . (R(x,y) & !R(y,x))", "ALL x . EX y . (R(x,y) & !R(x,x))",
                        "EX x . ALL y . !R(x,y)"}) {
    const FOFormula alpha = parse_fo(s);
    const auto fo = fo_enumerate_sat(alpha, 3);
    const std::size_t d = fo ? fo->domain.size() : 2;
    const std::size_t n = alpha.prefix.size();
    const bool kripke = enumerate_sat(translate_sentence(alpha), n + d + 2, d,
                                      DomainSemantics::Constant)
                            .has_value();
    ++bridge_total;
    if (kripke == fo.has_value()) {
      ++bridge_ok;
    } else if (bridge_bad.empty()) {
      bridge_bad = s;
    }
  }
  t.line("5c", bridge_ok == bridge_total,
         fmt("bounded bridge, FO model iff constant Kripke model of psi: %zu/%zu%s%s", bridge_ok,
             bridge_total, bridge_bad.empty() ? "" : "; first ", bridge_bad.c_str()),
         false);
}

// ---------------------------------------------------------------------------

void depth_bound(Tally& t, const DepthTracker& depth) {
  t.line("6", depth.violations == 0,
         fmt("recursion depth <= %zu * |theta| on %zu tableau runs: %zu violations, worst "
             "depth/|theta| = %.2f",
             kDepthFactor, depth.checked, depth.violations, depth.worst_ratio));
}

// Assignment of the free variables of f into delta(w).
Assignment random_assignment(Generator& gen, const KripkeModel& m, const std::string& w,
                             const Formula& f) {
  const std::vector<std::string> local(m.local.at(w).begin(), m.local.at(w).end());
  Assignment sigma;
  for (const Var& v : free_vars(f)) sigma[v] = local[gen.below(local.size())];
  return sigma;
}

void round_trips(Tally& t) {
  GeneratorOptions o;
  o.surface = true;
  o.max_modal_depth = 3;
  Generator gen(kSeed + 7, o);
  std::size_t printed = 0, nnf_ok = 0, clean_ok = 0, checks = 0;
  std::string first;
  for (int i = 0; i < 1000; ++i) {
    const Formula f = gen.formula();
    if (parse_formula(to_string(f)) == f) {
      ++printed;
    } else if (first.empty()) {
      first = to_string(f);
    }
    const Formula nnf = to_nnf(f);
    const Formula clean = cleanse(f);
    bool nnf_same = true, clean_same = true;
    for (int k = 0; k < 20; ++k) {
      const KripkeModel m = gen.model(signature(f), 3, 3, gen.below(2) == 0);
      const std::string& w = m.worlds[gen.below(m.worlds.size())];
      const Assignment sigma = random_assignment(gen, m, w, f);
      const ModelChecker mc(m);
      const bool truth = mc.holds(w, sigma, f);
      nnf_same = nnf_same && mc.holds(w, sigma, nnf) == truth;
      clean_same = clean_same && mc.holds(w, sigma, clean) == truth;
      ++checks;
    }
    nnf_ok += nnf_same;
    clean_ok += clean_same;
  }
  t.line("7", printed == 1000 && nnf_ok == 1000 && clean_ok == 1000,
         fmt("round trips on 1000 surface formulas: parse(print) %zu/1000, NNF %zu/1000, cleanse "
             "%zu/1000 (%zu model checks each)%s%s",
             printed, nnf_ok, clean_ok, checks, first.empty() ? "" : "; first ", first.c_str()));
}

void separation(Tally& t) {
  const Formula f = parse_formula("(A x [] A y [] !P(x) & A z [] E u <> P(u))");
  const auto inc = enumerate_sat(f, kOracleWorlds, kOracleDomain, DomainSemantics::Increasing);
  const auto con = enumerate_sat(f, kOracleWorlds, kOracleDomain, DomainSemantics::Constant);
  t.line("8", inc && !con,
         fmt("separation by (A x [] A y [] !P(x) & A z [] E u <> P(u)): increasing model %s, "
             "constant model %s%s",
             inc ? "found" : "not found", con ? "found" : "not found",
             con ? fmt(" (%zu world%s: both boxes are vacuous without successors)",
                       con->model.worlds.size(), con->model.worlds.size() == 1 ? "" : "s")
                       .c_str()
                 : ""));

  const Formula g = parse_formula("((A x [] A y [] !P(x) & A z [] E u <> P(u)) & E v <> T)");
  const auto ginc = enumerate_sat(g, kOracleWorlds, kOracleDomain, DomainSemantics::Increasing);
  const auto gcon = enumerate_sat(g, kOracleWorlds, kOracleDomain, DomainSemantics::Constant);
  t.line("8b", ginc && !gcon,
         fmt("separation with a forced successor (& E v <> T): increasing model %s (%zu worlds), "
             "constant model %s",
             ginc ? "found" : "not found", ginc ? ginc->model.worlds.size() : 0,
             gcon ? "found" : "not found"),
         false);
}

}  // namespace

int main() {
  Tally t;
  DepthTracker depth;
  std::size_t sound_checked = 0;
  std::vector<std::string> sound_failures;
  const auto start = Clock::now();

  golden_suite(t, depth, sound_checked, sound_failures);
  soundness(t, depth, sound_checked, sound_failures);
  oracle_agreement(t, depth);
  constant_equivalence(t, depth);
  fo_reduction(t);
  depth_bound(t, depth);
  round_trips(t);
  separation(t);

  std::printf("criteria passed %d/%d in %.1f s\n", t.passed, t.passed + t.failed,
              seconds_since(start));
  return t.failed == 0 ? 0 : 1;
}
