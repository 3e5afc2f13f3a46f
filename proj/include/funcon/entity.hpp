#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "funcon/term.hpp"
#include "funcon/value.hpp"

namespace funcon {

// The auxiliary entities threaded through a run. Environment and given-value
// are contextual (passed down, restored after sub-computations); store and
// links are mutable (threaded sequentially); standard-in is consumed in
// order and standard-out only ever grows.
struct EntityState {
    ValuePtr environment = v_empty_map();
    ValueSeq given;  // empty = unset
    std::map<std::uint64_t, std::optional<ValuePtr>> store;  // nullopt = uninitialised
    std::map<std::uint64_t, std::optional<ValuePtr>> links;  // nullopt = unset
    std::deque<ValuePtr> standard_in;
    std::vector<ValuePtr> standard_out;
    std::uint64_t next_location = 0;
    std::uint64_t next_link = 0;
};

// Contextual slice handed down the step recursion.
struct Ctx {
    ValuePtr environment;
    ValueSeq given;

    Ctx with_env(ValuePtr env) const { return Ctx{std::move(env), given}; }
    Ctx with_given(ValueSeq g) const { return Ctx{environment, std::move(g)}; }
};

// Internal result of stepping a (sub)term once.
struct Stepped {
    TermPtr next;
};
struct DoneValues {
    ValueSeq values;
};
struct Raised {
    ValuePtr reason;  // the abrupted(V) control-entity payload
};
struct StuckRes {
    std::string diagnostic;
};
using StepRes = std::variant<Stepped, DoneValues, Raised, StuckRes>;

// Public outcome of Engine::step.
struct StepOutcome {
    enum class Kind { Stepped, Done, Signalled, Stuck };
    Kind kind;
    TermPtr next;                // Stepped
    ValueSeq result;             // Done
    ValuePtr reason;             // Signalled
    std::string diagnostic;      // Stuck
    std::vector<ValuePtr> out;   // values printed during this step
};

struct RunResult {
    enum class Kind { Normal, Abrupted, Diverged, Stuck };
    Kind kind;
    ValueSeq result;             // Normal
    ValuePtr reason;             // Abrupted
    std::string diagnostic;      // Stuck
    std::vector<ValuePtr> output;
    std::uint64_t steps = 0;
};

}  // namespace funcon
