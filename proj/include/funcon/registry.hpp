#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "funcon/entity.hpp"
#include "funcon/term.hpp"
#include "funcon/value.hpp"

namespace funcon {

class Engine;

struct RegistryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DuplicateNameError : RegistryError {
    explicit DuplicateNameError(const std::string& name)
        : RegistryError("funcon name already registered: " + name) {}
};

// Thrown by rule bodies to surface a stuck state with a tailored diagnostic.
struct StuckException : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Mult { One, Optional, Star };

struct ParamSpec {
    bool strict = true;
    ValuePtr type;  // TypeVal contract for strict params; null accepts any value
    Mult mult = Mult::One;
};

ParamSpec strict_par(ValuePtr type, Mult mult = Mult::One);
ParamSpec lazy_par(Mult mult = Mult::One);

// Which non-value strict argument the engine steps next.
enum class Congruence { Ordered, OrderedRight, Interleave };

struct RewriteCtl {
    bool unfold_used = false;  // while-true self-unfolding budget (one per step)
    bool deferred = false;     // set when a rewrite was withheld by the budget
};

using Args = const std::vector<TermPtr>&;
using RewriteFn = std::function<std::optional<TermPtr>(Args, RewriteCtl&)>;
using StepFn = std::function<std::optional<StepRes>(Engine&, Args, const Ctx&)>;
using SignalFn = std::function<std::optional<TermPtr>(Args, const ValuePtr&)>;
// Value-constructor folding: values in, constructed value out (or nullopt
// when the arguments do not fit the constructor).
using FoldFn = std::function<std::optional<ValuePtr>(const ValueSeq&)>;
// Term-level quoting for constructors that capture an unevaluated argument
// (abstraction); applied at parse time and as a head rewrite.
using QuoteFn = std::function<std::optional<ValuePtr>(const std::vector<TermPtr>&)>;
// Data operation on per-parameter value sequences; empty result sequences
// encode partiality, nullopt means no rule applies.
using DataFn = std::function<std::optional<ValueSeq>(std::vector<ValueSeq>&&)>;

struct FunconDef {
    std::string name;
    std::vector<ParamSpec> params;
    Congruence congruence = Congruence::Ordered;
    int min_args = -1;  // -1: derived from params
    int max_args = -1;  // -1: derived from params (unbounded with a star)
    FoldFn fold;        // value/type constructors (also folded at parse time)
    QuoteFn quote;      // term-capturing constructors (abstraction)
    DataFn data;        // pure data operations
    RewriteFn rewrite;  // entity-free head rewrites
    StepFn step;        // entity-dependent transition rules
    SignalFn on_signal; // handler hook for signals raised by argument 0

    int effective_min_args() const;
    int effective_max_args() const;  // -1 = unbounded
    bool arg_strict(std::size_t index, std::size_t nargs) const;
    const ParamSpec* arg_param(std::size_t index, std::size_t nargs) const;
};

// Splits a flattened value sequence between the funcon's parameters,
// checking multiplicities and type contracts. Returns a diagnostic on
// failure.
struct BoundParams {
    std::vector<ValueSeq> by_param;
};
std::optional<BoundParams> bind_params(const FunconDef& def, const ValueSeq& flat,
                                       std::string* diagnostic = nullptr);

bool is_valid_funcon_name(const std::string& name);

// Append-only funcon registry. Registering new funcons never changes the
// behaviour of existing ones; aliases resolve to exactly one canonical name.
class Registry {
public:
    void register_funcon(FunconDef def);
    void register_alias(const std::string& alias, const std::string& target);

    const FunconDef* lookup(const std::string& name) const;
    // Resolves aliases; returns empty when the name is unknown.
    std::string canonical(const std::string& name) const;
    bool known(const std::string& name) const;

    // Constructs a datatype value through a registered constructor.
    // Throws RegistryError on unknown names or argument mismatch.
    ValuePtr construct(const std::string& ctor, const ValueSeq& args) const;

    std::size_t size() const { return defs_.size(); }

private:
    std::map<std::string, FunconDef> defs_;
    std::map<std::string, std::string> aliases_;
};

// The full Funcons-beta subset this interpreter ships.
Registry make_standard_registry();

void register_data_funcons(Registry& r);
void register_flow_funcons(Registry& r);
void register_context_funcons(Registry& r);

}  // namespace funcon
