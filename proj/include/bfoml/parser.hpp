#ifndef BFOML_PARSER_HPP_
#define BFOML_PARSER_HPP_

#include <string_view>

#include "bfoml/formula.hpp"

namespace bfoml {

// Parses one formula in the concrete syntax
//
//   formula := "T" | "F" | pred | "!" formula | "(" formula op formula ")"
//            | quant var mod formula
//   op      := "&" | "|" | "->"      quant := "E" | "A"     mod := "[]" | "<>"
//   pred    := UpperIdent "(" var ("," var)* ")"              var := lowerIdent
//
// Whitespace is insignificant and '#' starts a comment running to the end of
// the line. Throws ParseError (with line/column) or ArityError when a
// predicate occurs with two different arities.
Formula parse_formula(std::string_view text);

}  // namespace bfoml

#endif  // BFOML_PARSER_HPP_
