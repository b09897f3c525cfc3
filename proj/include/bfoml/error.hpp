#ifndef BFOML_ERROR_HPP_
#define BFOML_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bfoml {

// Base class for every error the library reports to callers. Internal
// invariant violations are reported as std::logic_error instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A predicate used at two different arities inside one formula.
class ArityError : public Error {
 public:
  ArityError(const std::string& predicate, std::size_t expected, std::size_t got)
      : Error("predicate " + predicate + " used with arity " + std::to_string(got) +
              " but earlier with arity " + std::to_string(expected)),
        predicate_(predicate) {}

  const std::string& predicate() const { return predicate_; }

 private:
  std::string predicate_;
};

// Substitution would bind the replacement variable.
class CaptureError : public Error {
 public:
  using Error::Error;
};

// Formula outside the fragment an operation accepts.
class FragmentError : public Error {
 public:
  using Error::Error;
};

// Node/conflict budget exhausted.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

// Irrelevant assignment or unbound free variable during model checking.
class AssignmentError : public Error {
 public:
  using Error::Error;
};

// Malformed or invalid Kripke / FO model.
class ModelError : public Error {
 public:
  using Error::Error;
};

// FO(R) input that is open, not prenex, or otherwise outside FO(R).
class FOFormulaError : public Error {
 public:
  using Error::Error;
};

}  // namespace bfoml

#endif  // BFOML_ERROR_HPP_
