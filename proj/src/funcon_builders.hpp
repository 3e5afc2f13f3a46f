#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "funcon/registry.hpp"
#include "funcon/term.hpp"
#include "funcon/value.hpp"

namespace funcon {

// Shared type-contract singletons for funcon signatures.
ValuePtr ty_values();
ValuePtr ty_booleans();
ValuePtr ty_integers();
ValuePtr ty_naturals();
ValuePtr ty_characters();
ValuePtr ty_null();
ValuePtr ty_identifiers();
ValuePtr ty_environments();
ValuePtr ty_value_types();
ValuePtr ty_lists();
ValuePtr ty_sets();
ValuePtr ty_maps();
ValuePtr ty_abstractions();
ValuePtr ty_thunks();
ValuePtr ty_functions();
ValuePtr ty_patterns();

// Flattened argument values when every argument is value-normal.
std::optional<ValueSeq> flat_args(Args args);

// A pure data operation over bound parameter values.
FunconDef data_def(std::string name, std::vector<ParamSpec> params, DataFn fn,
                   Congruence congruence = Congruence::Interleave);

// A value constructor: folds at parse time and rewrites at run time.
FunconDef ctor_def(std::string name, std::vector<ParamSpec> params, FoldFn fold);

// A head-rewrite funcon (entity-free rules only).
FunconDef rewrite_def(std::string name, std::vector<ParamSpec> params, RewriteFn fn,
                      Congruence congruence = Congruence::Ordered);

ValuePtr v_failed();
ValuePtr v_broken();
ValuePtr v_continued();

}  // namespace funcon
