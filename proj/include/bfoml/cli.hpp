// Command-line front end. `run_cli` is the whole program minus process
// plumbing, so tests can drive it in-process.

#ifndef BFOML_CLI_HPP_
#define BFOML_CLI_HPP_

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace bfoml {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFalse = 3;  // check: formula is false
inline constexpr int kExitSat = 10;
inline constexpr int kExitUnsat = 20;

struct RunReport {
  enum class Verdict { Sat, Unsat, InputError };
  Verdict verdict = Verdict::InputError;
  double elapsed_ms = 0;
  std::size_t nodes = 0;
  std::optional<std::string> model_path;
};

std::string to_string(RunReport::Verdict v);
std::string report_to_json(const RunReport& r);

// args[0] is the program name. BFOML_BUDGET, if set, is the default node
// budget of the tableau commands.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bfoml

#endif  // BFOML_CLI_HPP_
