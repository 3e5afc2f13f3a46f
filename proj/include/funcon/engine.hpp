#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "funcon/entity.hpp"
#include "funcon/registry.hpp"
#include "funcon/term.hpp"

namespace funcon {

struct EngineOptions {
    // 0 selects the deterministic leftmost-first scheduler; any other value
    // seeds a pseudo-random scheduler that picks a ready argument per step.
    std::uint64_t seed = 0;
    std::uint64_t max_steps = 1'000'000;
    // After a normal run, assert that no unset link remains reachable from
    // the result values.
    bool check_links = true;
    std::ostream* trace = nullptr;
};

// The value-computation transition system: pure rewriting, entity-carrying
// steps with signature-driven congruence, signal propagation, and the
// top-level driver. One engine instance drives one run at a time.
class Engine {
public:
    explicit Engine(const Registry& registry, EngineOptions options = {});

    // Entity-free head rewriting; never touches entities, never emits
    // output. Unfolds while-true at most once. Non-rewritable terms are
    // returned unchanged.
    TermPtr rewrite(const TermPtr& t) const;

    StepOutcome step(const TermPtr& t, EntityState& state);

    RunResult run(const TermPtr& t, EntityState& state);
    RunResult run(const TermPtr& t, EntityState& state, std::uint64_t max_steps);

    // --- services for funcon rules -----------------------------------------

    // Steps a child term under a (possibly overridden) context; child_index
    // extends the redex path for tracing.
    StepRes sub_step(const TermPtr& child, const Ctx& ctx, std::size_t child_index);

    EntityState& state();
    std::uint64_t fresh_location();
    std::uint64_t fresh_link();
    // Appends to the standard-out entity (and the per-step output).
    void emit_output(const ValueSeq& values);
    // Scheduler choice among n candidates.
    std::size_t pick(std::size_t n);

    const Registry& registry() const { return registry_; }
    const EngineOptions& options() const { return options_; }

private:
    struct Scratch {
        RewriteCtl ctl;
        std::vector<std::size_t> path;
        std::vector<std::size_t> redex_path;
        std::string redex_name;
        std::vector<ValuePtr> out;
        ValuePtr signal;
    };

    StepRes step_rec(const TermPtr& t, const Ctx& ctx);
    StepRes step_app(const TermPtr& t, const Ctx& ctx);
    TermPtr apply_rewrites(TermPtr t, RewriteCtl& ctl, bool& progressed) const;
    void record_redex(const std::string& name);
    std::string diagnose_stuck(const FunconDef& def, const std::vector<TermPtr>& args) const;
    void trace_step(std::uint64_t n) const;

    const Registry& registry_;
    EngineOptions options_;
    EntityState* state_ = nullptr;
    Scratch scratch_;
    std::uint64_t rng_ = 0;
};

// Scans values for links that are still unset in the given state.
bool has_unset_link(const ValuePtr& v, const EntityState& state);

}  // namespace funcon
