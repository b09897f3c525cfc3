// JSON encoding of Kripke models:
//
//   {"worlds":[...], "domain":[...], "edges":[[w,v],...],
//    "local":{w:[...]}, "rho":{w:{P:[[e,...],...]}}}

#ifndef BFOML_MODEL_IO_HPP_
#define BFOML_MODEL_IO_HPP_

#include <string>
#include <string_view>

#include "bfoml/kripke.hpp"

namespace bfoml {

// Keys are emitted in the order above; worlds without facts are omitted from
// "rho".
std::string model_to_json(const KripkeModel& m, int indent = 2);

// Throws ModelError on malformed JSON or wrong shapes. Does not call validate.
KripkeModel model_from_json(std::string_view text);

}  // namespace bfoml

#endif  // BFOML_MODEL_IO_HPP_
