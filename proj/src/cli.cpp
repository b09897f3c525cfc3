#include "bfoml/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bfoml/error.hpp"
#include "bfoml/fo.hpp"
#include "bfoml/generator.hpp"
#include "bfoml/kripke.hpp"
#include "bfoml/model_io.hpp"
#include "bfoml/oracle.hpp"
#include "bfoml/parser.hpp"
#include "bfoml/syntax.hpp"
#include "bfoml/tableau.hpp"

namespace bfoml {

std::string to_string(RunReport::Verdict v) {
  switch (v) {
    case RunReport::Verdict::Sat:
      return "SAT";
    case RunReport::Verdict::Unsat:
      return "UNSAT";
    case RunReport::Verdict::InputError:
      return "VALID-INPUT-ERROR";
  }
  return "";
}

std::string report_to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["verdict"] = to_string(r.verdict);
  j["elapsed_ms"] = r.elapsed_ms;
  j["nodes"] = r.nodes;
  j["model"] = r.model_path ? nlohmann::ordered_json(*r.model_path) : nullptr;
  return j.dump(2);
}

namespace {

using Clock = std::chrono::steady_clock;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

std::size_t default_budget() {
  if (const char* env = std::getenv("BFOML_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    throw Error(std::string("BFOML_BUDGET must be a positive integer, got '") + env + "'");
  }
  return kDefaultNodeBudget;
}

// Positional text or --file, exactly one.
struct Source {
  std::string text;
  std::string file;

  void add_to(CLI::App* app, const char* what) {
    app->add_option("input", text, what);
    app->add_option("--file", file, "read the input from this file");
  }

  std::string get() const {
    if (!text.empty() && !file.empty()) throw Error("give the input either inline or with --file");
    if (!file.empty()) return read_file(file);
    if (text.empty()) throw Error("no input given");
    return text;
  }
};

const std::map<std::string, DomainSemantics> kSemantics = {
    {"increasing", DomainSemantics::Increasing}, {"constant", DomainSemantics::Constant}};

struct Options {
  Source source;
  DomainSemantics semantics = DomainSemantics::Increasing;
  std::string model_out, trace_out, report_out, model_in, world, fo_model, witness_out;
  std::vector<std::string> assign;
  std::optional<std::size_t> budget;
  std::size_t max_worlds = 4, max_domain = 3;
  bool repaired = false;
  std::uint64_t seed = 1;
  std::size_t count = 100, max_depth = 3;
  std::string fragment = "full";
};

// ---------------------------------------------------------------------------

int cmd_sat(const Options& o, std::ostream& out) {
  RunReport report;
  const auto start = Clock::now();
  auto finish = [&](RunReport::Verdict v) {
    report.verdict = v;
    report.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    if (!o.report_out.empty()) write_file(o.report_out, report_to_json(report));
  };
  try {
    const Formula f = parse_formula(o.source.get());
    TableauOptions topts;
    topts.node_budget = o.budget.value_or(default_budget());
    topts.trace = !o.trace_out.empty();
    const TableauResult r = o.semantics == DomainSemantics::Increasing
                                ? decide_increasing(f, topts)
                                : decide_constant_eb(f, topts);
    report.nodes = r.nodes;
    if (topts.trace) write_file(o.trace_out, format_trace(r.trace));
    if (r.sat && !o.model_out.empty()) {
      write_file(o.model_out, model_to_json(*r.model));
      report.model_path = o.model_out;
    }
    finish(r.sat ? RunReport::Verdict::Sat : RunReport::Verdict::Unsat);
    out << (r.sat ? "SAT" : "UNSAT") << '\n';
    return r.sat ? kExitSat : kExitUnsat;
  } catch (const Error&) {
    finish(RunReport::Verdict::InputError);
    throw;
  }
}

Assignment parse_assignment(const std::vector<std::string>& items) {
  Assignment sigma;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      throw Error("assignment must look like var=element, got '" + item + "'");
    }
    sigma[Var(item.substr(0, eq))] = item.substr(eq + 1);
  }
  return sigma;
}

int cmd_check(const Options& o, std::ostream& out) {
  const KripkeModel m = model_from_json(read_file(o.model_in));
  const Formula f = parse_formula(o.source.get());
  const ModelChecker checker(m);
  const std::string world = o.world.empty() ? m.worlds.front() : o.world;
  const bool holds = checker.holds(world, parse_assignment(o.assign), f);
  out << (holds ? "true" : "false") << '\n';
  return holds ? kExitOk : kExitFalse;
}

int cmd_info(const Options& o, std::ostream& out) {
  const Formula f = parse_formula(o.source.get());
  const Formula clean = cleanse(to_nnf(f));
  out << "size " << f.size() << '\n';
  out << "modal depth " << modal_depth(f) << '\n';
  out << "connectives " << connective_count(f) << '\n';
  out << "fragment " << to_string(classify(f)) << '\n';
  out << "clean " << (is_clean(f) ? "yes" : "no") << '\n';
  out << "free";
  for (const Var& v : free_vars(f)) out << ' ' << v;
  out << '\n' << "signature";
  for (const auto& [p, n] : signature(f)) out << ' ' << p << '/' << n;
  out << '\n' << "normal form " << to_string(clean) << '\n';
  return kExitOk;
}

int cmd_translate(const Options& o, std::ostream& out, std::ostream& err) {
  const FOFormula alpha = parse_fo(o.source.get());
  const Formula psi = translate_sentence(alpha);
  out << to_string(psi) << '\n';
  if (o.witness_out.empty()) return kExitOk;
  if (o.fo_model.empty()) throw Error("--witness needs --fo-model");
  const FOModel m = fo_model_from_json(read_file(o.fo_model));
  if (!fo_check(m, alpha)) throw ModelError("the FO model does not satisfy the sentence");
  const KripkeModel k =
      o.repaired ? build_witness_model_repaired(m, alpha) : build_witness_model(m, alpha);
  write_file(o.witness_out, model_to_json(k));
  err << "witness: " << k.worlds.size() << " worlds; v1 satisfies the translation: "
      << (check(k, "v1", {}, psi) ? "true" : "false") << '\n';
  return kExitOk;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  const Formula f = parse_formula(o.source.get());
  const auto r = enumerate_sat(f, o.max_worlds, o.max_domain, o.semantics,
                               o.budget.value_or(kDefaultOracleBudget));
  if (!r) {
    out << "UNSAT within " << o.max_worlds << " worlds and " << o.max_domain << " elements\n";
    return kExitUnsat;
  }
  if (!o.model_out.empty()) write_file(o.model_out, model_to_json(r->model));
  out << "SAT at " << r->root;
  for (const auto& [x, d] : r->assignment) out << ' ' << x << '=' << d;
  out << '\n';
  return kExitSat;
}

int cmd_fuzz(const Options& o, std::ostream& out) {
  GeneratorOptions g;
  g.max_modal_depth = o.max_depth;
  if (o.fragment == "eb") {
    g.fragment = Fragment::ExistsBox;
  } else if (o.fragment != "full") {
    throw Error("--fragment must be full or eb");
  }
  Generator gen(o.seed, g);
  TableauOptions topts;
  topts.node_budget = o.budget.value_or(default_budget());

  std::size_t sat = 0, agree = 0, misses = 0, limits = 0, failures = 0;
  std::optional<std::string> first;
  auto fail = [&](std::size_t i, const Formula& f, const std::string& why) {
    ++failures;
    if (!first) first = "#" + std::to_string(i) + " " + to_string(f) + " (" + why + ")";
  };
  for (std::size_t i = 0; i < o.count; ++i) {
    const Formula f = gen.formula();
    try {
      const bool inc = decide_increasing(f, topts).sat;
      sat += inc;
      if (g.fragment == Fragment::ExistsBox) {
        const bool con = decide_constant_eb(f, topts).sat;
        if (con == inc) {
          ++agree;
        } else {
          fail(i, f, "increasing and constant tableaux disagree");
        }
      }
      const auto model = enumerate_sat(f, o.max_worlds, o.max_domain, DomainSemantics::Increasing);
      if (model && !inc) {
        ++misses;
        fail(i, f, "oracle found a model, tableau says UNSAT");
      }
    } catch (const ResourceLimit&) {
      ++limits;
    } catch (const std::logic_error& e) {
      fail(i, f, e.what());
    }
  }
  out << "fuzz seed " << o.seed << " count " << o.count << " fragment " << o.fragment
      << " max depth " << o.max_depth << '\n';
  out << "sat " << sat << " unsat " << o.count - sat - limits << '\n';
  if (g.fragment == Fragment::ExistsBox) {
    out << "tableau agreement " << agree << '/' << o.count - limits << '\n';
  }
  out << "oracle misses " << misses << '\n';
  out << "resource limits " << limits << '\n';
  out << "failures " << failures << '\n';
  if (first) out << "first counterexample " << *first << '\n';
  return failures == 0 ? kExitOk : kExitError;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Satisfiability toolkit for bundled first-order modal logic", "bfoml"};
  app.require_subcommand(1);
  Options o;

  auto semantics = [&](CLI::App* sub) {
    sub->add_option("--semantics", o.semantics, "increasing or constant domains")
        ->transform(CLI::CheckedTransformer(kSemantics));
  };

  auto* sat = app.add_subcommand("sat", "decide satisfiability with the tableau");
  o.source.add_to(sat, "formula");
  semantics(sat);
  sat->add_option("--model", o.model_out, "write the model of a SAT verdict as JSON");
  sat->add_option("--trace", o.trace_out, "write the tableau trace");
  sat->add_option("--report", o.report_out, "write a JSON run report");
  sat->add_option("--budget", o.budget, "node budget (default BFOML_BUDGET or 5000000)");

  auto* chk = app.add_subcommand("check", "evaluate a formula in a model");
  o.source.add_to(chk, "formula");
  chk->add_option("--model", o.model_in, "model JSON")->required();
  chk->add_option("--world", o.world, "evaluation world (default: first world)");
  chk->add_option("--assign", o.assign, "variable assignment var=element, repeatable");

  auto* nnf = app.add_subcommand("nnf", "print the negation normal form");
  o.source.add_to(nnf, "formula");
  auto* clean = app.add_subcommand("clean", "print the cleansed formula");
  o.source.add_to(clean, "formula");
  auto* info = app.add_subcommand("info", "print measures and fragment");
  o.source.add_to(info, "formula");

  auto* tr = app.add_subcommand("translate", "translate a prenex FO(R) sentence");
  o.source.add_to(tr, "FO sentence");
  tr->add_option("--fo-model", o.fo_model, "FO model JSON for --witness");
  tr->add_option("--witness", o.witness_out, "write the witness Kripke model");
  tr->add_flag("--repaired", o.repaired, "use the repaired witness construction");

  auto* orc = app.add_subcommand("oracle", "search for a bounded model");
  o.source.add_to(orc, "formula");
  semantics(orc);
  orc->add_option("--max-worlds", o.max_worlds, "world bound")->capture_default_str();
  orc->add_option("--max-domain", o.max_domain, "domain bound")->capture_default_str();
  orc->add_option("--budget", o.budget, "grounding budget");
  orc->add_option("--model", o.model_out, "write the model as JSON");

  auto* fz = app.add_subcommand("fuzz", "differential testing on random formulas");
  fz->add_option("--seed", o.seed)->capture_default_str();
  fz->add_option("--count", o.count)->capture_default_str();
  fz->add_option("--max-depth", o.max_depth)->capture_default_str();
  fz->add_option("--fragment", o.fragment, "full or eb")->capture_default_str();
  fz->add_option("--max-worlds", o.max_worlds, "oracle world bound")->capture_default_str();
  fz->add_option("--max-domain", o.max_domain, "oracle domain bound")->capture_default_str();
  fz->add_option("--budget", o.budget, "tableau node budget");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  }

  try {
    if (sat->parsed()) return cmd_sat(o, out);
    if (chk->parsed()) return cmd_check(o, out);
    if (nnf->parsed()) {
      out << to_string(to_nnf(parse_formula(o.source.get()))) << '\n';
      return kExitOk;
    }
    if (clean->parsed()) {
      out << to_string(cleanse(parse_formula(o.source.get()))) << '\n';
      return kExitOk;
    }
    if (info->parsed()) return cmd_info(o, out);
    if (tr->parsed()) return cmd_translate(o, out, err);
    if (orc->parsed()) return cmd_oracle(o, out);
    if (fz->parsed()) return cmd_fuzz(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace bfoml
