#pragma once

#include <string>

#include "funcon/term.hpp"
#include "funcon/value.hpp"

namespace funcon {

// Canonical textual rendering. parse_term is the inverse on the canonical
// form (runtime-only values — variables and links — print but do not parse).
std::string print_value(const ValuePtr& v);
std::string print_term(const TermPtr& t);

// `( )` for the empty sequence, `v` for singletons, `(a, b)` otherwise.
std::string print_values(const ValueSeq& vs);

}  // namespace funcon
