#include "funcon/engine.hpp"

#include <ostream>
#include <sstream>

#include "funcon/format.hpp"

namespace funcon {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

Engine::Engine(const Registry& registry, EngineOptions options)
    : registry_(registry), options_(options) {}

std::size_t Engine::pick(std::size_t n) {
    if (n <= 1) return 0;
    if (options_.seed == 0) return 0;
    return static_cast<std::size_t>(splitmix64(rng_) % n);
}

EntityState& Engine::state() {
    if (!state_) throw std::logic_error("entity state accessed outside a step");
    return *state_;
}

std::uint64_t Engine::fresh_location() {
    auto& s = state();
    return s.next_location++;
}

std::uint64_t Engine::fresh_link() {
    auto& s = state();
    return s.next_link++;
}

void Engine::emit_output(const ValueSeq& values) {
    auto& s = state();
    for (const auto& v : values) {
        s.standard_out.push_back(v);
        scratch_.out.push_back(v);
    }
}

void Engine::record_redex(const std::string& name) {
    scratch_.redex_path = scratch_.path;
    scratch_.redex_name = name;
}

TermPtr Engine::apply_rewrites(TermPtr t, RewriteCtl& ctl, bool& progressed) const {
    for (;;) {
        const auto* app = t->get_if<Term::App>();
        if (!app) return t;
        const FunconDef* def = registry_.lookup(app->head);
        if (!def) return t;

        std::optional<TermPtr> next;
        if (def->quote) {
            if (auto v = def->quote(app->args)) next = t_val(*v);
        }
        if (!next && def->rewrite) {
            next = def->rewrite(app->args, ctl);
        }
        if (!next && (def->fold || def->data)) {
            ValueSeq flat;
            bool all_values = true;
            for (const auto& a : app->args) {
                if (!term_values(a, flat)) {
                    all_values = false;
                    break;
                }
            }
            if (all_values) {
                if (def->fold) {
                    int mn = def->effective_min_args();
                    int mx = def->effective_max_args();
                    if (static_cast<int>(flat.size()) >= mn &&
                        (mx < 0 || static_cast<int>(flat.size()) <= mx)) {
                        if (auto v = def->fold(flat)) next = t_val(*v);
                    }
                } else if (auto bound = bind_params(*def, flat)) {
                    if (auto result = def->data(std::move(bound->by_param)))
                        next = t_of_values(*result);
                }
            }
        }
        if (!next) return t;
        progressed = true;
        t = *next;
    }
}

TermPtr Engine::rewrite(const TermPtr& t) const {
    RewriteCtl ctl;
    bool progressed = false;
    try {
        return apply_rewrites(t, ctl, progressed);
    } catch (const StuckException&) {
        return t;  // surfaced as a stuck outcome when stepped
    }
}

StepRes Engine::sub_step(const TermPtr& child, const Ctx& ctx, std::size_t child_index) {
    scratch_.path.push_back(child_index);
    StepRes r = step_rec(child, ctx);
    scratch_.path.pop_back();
    return r;
}

StepRes Engine::step_rec(const TermPtr& t, const Ctx& ctx) {
    bool progressed = false;
    const auto* orig = t->get_if<Term::App>();
    TermPtr cur;
    try {
        cur = apply_rewrites(t, scratch_.ctl, progressed);
    } catch (const StuckException& e) {
        return StuckRes{e.what()};
    }

    ValueSeq values;
    if (term_values(cur, values)) {
        if (progressed) record_redex(orig ? orig->head : "value");
        return DoneValues{std::move(values)};
    }

    if (const auto* seq = cur->get_if<Term::Seq>()) {
        // A sequence of computations; items evaluate under the scheduler and
        // their value sequences concatenate in item order.
        std::vector<std::size_t> ready;
        for (std::size_t i = 0; i < seq->items.size(); ++i)
            if (!is_value_term(seq->items[i])) ready.push_back(i);
        std::size_t i = ready[pick(ready.size())];
        StepRes r = sub_step(seq->items[i], ctx, i);
        if (auto* stepped = std::get_if<Stepped>(&r)) {
            auto items = seq->items;
            items[i] = stepped->next;
            return Stepped{t_seq(std::move(items))};
        }
        if (auto* done = std::get_if<DoneValues>(&r)) {
            std::vector<TermPtr> items;
            items.reserve(seq->items.size() + done->values.size());
            for (std::size_t k = 0; k < seq->items.size(); ++k) {
                if (k == i)
                    for (const auto& v : done->values) items.push_back(t_val(v));
                else
                    items.push_back(seq->items[k]);
            }
            return Stepped{t_seq(std::move(items))};
        }
        return r;
    }

    return step_app(cur, ctx);
}

StepRes Engine::step_app(const TermPtr& t, const Ctx& ctx) {
    const auto* app = t->get_if<Term::App>();
    const FunconDef* def = registry_.lookup(app->head);
    if (!def) return StuckRes{"unknown funcon: " + app->head};

    if (def->step) {
        try {
            if (auto r = def->step(*this, app->args, ctx)) {
                if (std::holds_alternative<Raised>(*r) || std::holds_alternative<Stepped>(*r))
                    record_redex(def->name);
                return *r;
            }
        } catch (const StuckException& e) {
            return StuckRes{e.what()};
        }
    }

    // Generic congruence: step one non-value strict argument.
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < app->args.size(); ++i) {
        if (!def->arg_strict(i, app->args.size())) continue;
        if (!is_value_term(app->args[i])) ready.push_back(i);
    }
    if (ready.empty()) {
        if (scratch_.ctl.deferred) {
            // A while-true unfolding was withheld by the per-step budget;
            // spend the step and retry.
            record_redex(def->name);
            return Stepped{t};
        }
        return StuckRes{diagnose_stuck(*def, app->args)};
    }

    std::size_t i;
    switch (def->congruence) {
        case Congruence::Ordered: i = ready.front(); break;
        case Congruence::OrderedRight: i = ready.back(); break;
        case Congruence::Interleave: i = ready[pick(ready.size())]; break;
        default: i = ready.front(); break;
    }

    StepRes r = sub_step(app->args[i], ctx, i);
    if (auto* stepped = std::get_if<Stepped>(&r)) {
        auto args = app->args;
        args[i] = stepped->next;
        return Stepped{t_app(app->head, std::move(args))};
    }
    if (auto* done = std::get_if<DoneValues>(&r)) {
        auto args = app->args;
        args[i] = t_of_values(done->values);
        return Stepped{t_app(app->head, std::move(args))};
    }
    if (auto* raised = std::get_if<Raised>(&r)) {
        if (i == 0 && def->on_signal) {
            if (auto handled = def->on_signal(app->args, raised->reason)) {
                record_redex(def->name);
                return Stepped{*handled};
            }
        }
        return r;  // signal transparency: propagate with state deltas intact
    }
    return r;
}

std::string Engine::diagnose_stuck(const FunconDef& def,
                                   const std::vector<TermPtr>& args) const {
    ValueSeq flat;
    bool all_values = true;
    for (const auto& a : args) {
        if (!term_values(a, flat)) {
            all_values = false;
            break;
        }
    }
    if (all_values && !def.params.empty()) {
        std::string diagnostic;
        if (!bind_params(def, flat, &diagnostic)) return diagnostic;
    }
    return def.name + ": no rule applies";
}

StepOutcome Engine::step(const TermPtr& t, EntityState& state) {
    struct StateGuard {
        EntityState** slot;
        ~StateGuard() { *slot = nullptr; }
    } guard{&state_};
    state_ = &state;
    scratch_ = Scratch{};
    Ctx ctx{state.environment, state.given};
    StepRes r = step_rec(t, ctx);

    StepOutcome out;
    out.out = scratch_.out;
    if (auto* stepped = std::get_if<Stepped>(&r)) {
        out.kind = StepOutcome::Kind::Stepped;
        out.next = stepped->next;
    } else if (auto* done = std::get_if<DoneValues>(&r)) {
        out.kind = StepOutcome::Kind::Done;
        out.result = done->values;
    } else if (auto* raised = std::get_if<Raised>(&r)) {
        out.kind = StepOutcome::Kind::Signalled;
        out.reason = raised->reason;
        scratch_.signal = raised->reason;
    } else {
        out.kind = StepOutcome::Kind::Stuck;
        out.diagnostic = std::get<StuckRes>(r).diagnostic;
    }
    return out;
}

void Engine::trace_step(std::uint64_t n) const {
    if (!options_.trace) return;
    std::ostream& os = *options_.trace;
    os << "step " << n << ": ";
    if (scratch_.redex_path.empty())
        os << "/";
    else
        for (std::size_t i : scratch_.redex_path) os << "/" << i;
    os << " " << (scratch_.redex_name.empty() ? "-" : scratch_.redex_name);
    os << " | out=[";
    for (std::size_t i = 0; i < scratch_.out.size(); ++i) {
        if (i) os << ", ";
        os << print_value(scratch_.out[i]);
    }
    os << "] | signal=" << (scratch_.signal ? print_value(scratch_.signal) : "-") << "\n";
}

RunResult Engine::run(const TermPtr& t, EntityState& state) {
    return run(t, state, options_.max_steps);
}

RunResult Engine::run(const TermPtr& t, EntityState& state, std::uint64_t max_steps) {
    rng_ = options_.seed;
    RunResult result;
    std::size_t out_mark = state.standard_out.size();
    TermPtr term = t;

    auto finish = [&](RunResult::Kind kind) {
        result.kind = kind;
        result.output.assign(state.standard_out.begin() + out_mark, state.standard_out.end());
        if (options_.trace) {
            std::ostream& os = *options_.trace;
            os << "result: ";
            switch (kind) {
                case RunResult::Kind::Normal:
                    os << "Normal(" << print_values(result.result) << ")";
                    break;
                case RunResult::Kind::Abrupted:
                    os << "Abrupted(" << print_value(result.reason) << ")";
                    break;
                case RunResult::Kind::Diverged: os << "Diverged"; break;
                case RunResult::Kind::Stuck: os << "Stuck(" << result.diagnostic << ")"; break;
            }
            os << "\n";
        }
        return result;
    };

    for (;;) {
        StepOutcome outcome = step(term, state);
        switch (outcome.kind) {
            case StepOutcome::Kind::Done:
                result.result = outcome.result;
                if (options_.check_links) {
                    for (const auto& v : result.result) {
                        if (has_unset_link(v, state)) {
                            result.diagnostic = "unset link reachable from the result";
                            return finish(RunResult::Kind::Stuck);
                        }
                    }
                }
                return finish(RunResult::Kind::Normal);
            case StepOutcome::Kind::Signalled:
                result.steps += 1;
                trace_step(result.steps);
                result.reason = outcome.reason;
                return finish(RunResult::Kind::Abrupted);
            case StepOutcome::Kind::Stuck:
                result.diagnostic = outcome.diagnostic;
                return finish(RunResult::Kind::Stuck);
            case StepOutcome::Kind::Stepped:
                result.steps += 1;
                trace_step(result.steps);
                term = outcome.next;
                if (result.steps >= max_steps) return finish(RunResult::Kind::Diverged);
                break;
        }
    }
}

bool has_unset_link(const ValuePtr& v, const EntityState& state) {
    if (const auto* l = v->get_if<LinkVal>()) {
        auto it = state.links.find(l->id);
        return it == state.links.end() || !it->second.has_value();
    }
    if (const auto* d = v->get_if<DatatypeVal>()) {
        for (const auto& a : d->args)
            if (has_unset_link(a, state)) return true;
        return false;
    }
    if (const auto* m = v->get_if<MapVal>()) {
        for (const auto& e : m->entries)
            for (const auto& x : e.value)
                if (has_unset_link(x, state)) return true;
        return false;
    }
    return false;
}

}  // namespace funcon
