#include <utility>

#include "funcon/engine.hpp"
#include "funcon/format.hpp"
#include "funcon_builders.hpp"

namespace funcon {

namespace {

// Wraps a sub-step of child index `i` back into the parent application.
StepRes rebuild(StepRes sub, const std::string& head, Args args, std::size_t i) {
    if (auto* stepped = std::get_if<Stepped>(&sub)) {
        std::vector<TermPtr> next(args.begin(), args.end());
        next[i] = stepped->next;
        return Stepped{t_app(head, std::move(next))};
    }
    if (auto* done = std::get_if<DoneValues>(&sub)) {
        std::vector<TermPtr> next(args.begin(), args.end());
        next[i] = t_of_values(done->values);
        return Stepped{t_app(head, std::move(next))};
    }
    return sub;
}

// --- binding -----------------------------------------------------------------------

void register_binding(Registry& r) {
    r.register_funcon(data_def("bind-value",
                               {strict_par(ty_identifiers()), strict_par(nullptr)},
                               [](std::vector<ValueSeq>&& a) {
                                   return ValueSeq{v_map({MapEntry{a[0][0], {a[1][0]}}})};
                               }));
    r.register_funcon(data_def("unbind", {strict_par(ty_identifiers())},
                               [](std::vector<ValueSeq>&& a) {
                                   return ValueSeq{v_map({MapEntry{a[0][0], {}}})};
                               }));
    {
        FunconDef def;
        def.name = "bound-value";
        def.params = {strict_par(ty_identifiers())};
        def.step = [](Engine& eng, Args args, const Ctx& ctx) -> std::optional<StepRes> {
            ValueSeq vals;
            if (!term_values(args[0], vals)) return std::nullopt;
            if (vals.size() != 1) return std::nullopt;
            const auto* env = as_map(ctx.environment);
            const ValueSeq* hit = map_find(*env, vals[0]);
            if (!hit || hit->empty()) return StepRes{Raised{v_failed()}};
            ValuePtr v = (*hit)[0];
            // Dereference through links, possibly transitively.
            int depth = 0;
            while (const auto* link = v->get_if<LinkVal>()) {
                auto it = eng.state().links.find(link->id);
                if (it == eng.state().links.end())
                    return StepRes{StuckRes{"bound-value: link does not exist"}};
                if (!it->second.has_value())
                    return StepRes{StuckRes{"bound-value: link read before set"}};
                v = *it->second;
                if (++depth > 10000)
                    return StepRes{StuckRes{"bound-value: cyclic link chain"}};
            }
            return StepRes{Stepped{t_val(v)}};
        };
        r.register_funcon(std::move(def));
    }
    {
        // scope(D, X): run X with the environment overridden by the
        // environment computed by D; the outer bindings are restored after.
        FunconDef def;
        def.name = "scope";
        def.params = {strict_par(ty_environments()), lazy_par()};
        def.rewrite = [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
            if (is_value_term(args[0]) && is_value_term(args[1])) return args[1];
            return std::nullopt;
        };
        def.step = [](Engine& eng, Args args, const Ctx& ctx) -> std::optional<StepRes> {
            ValueSeq vals;
            if (!term_values(args[0], vals)) return std::nullopt;
            if (vals.size() != 1 || !as_map(vals[0]))
                return StepRes{StuckRes{"scope: first argument must compute an environment"}};
            Ctx inner = ctx.with_env(map_override(vals[0], ctx.environment));
            return rebuild(eng.sub_step(args[1], inner, 1), "scope", args, 1);
        };
        r.register_funcon(std::move(def));
    }
    {
        FunconDef def;
        def.name = "closed";
        def.params = {lazy_par()};
        def.rewrite = [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
            if (is_value_term(args[0])) return args[0];
            return std::nullopt;
        };
        def.step = [](Engine& eng, Args args, const Ctx& ctx) -> std::optional<StepRes> {
            return rebuild(eng.sub_step(args[0], ctx.with_env(v_empty_map()), 0), "closed",
                           args, 0);
        };
        r.register_funcon(std::move(def));
    }
    {
        FunconDef def;
        def.name = "accumulate";
        def.params = {strict_par(ty_environments()), lazy_par()};
        def.rewrite = [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
            ValueSeq r1, r2;
            if (!term_values(args[0], r1) || !term_values(args[1], r2)) return std::nullopt;
            if (r1.size() != 1 || r2.size() != 1) return std::nullopt;
            if (!as_map(r1[0]) || !as_map(r2[0])) return std::nullopt;
            return t_val(map_override(r2[0], r1[0]));
        };
        def.step = [](Engine& eng, Args args, const Ctx& ctx) -> std::optional<StepRes> {
            ValueSeq vals;
            if (!term_values(args[0], vals)) return std::nullopt;
            if (vals.size() != 1 || !as_map(vals[0]))
                return StepRes{StuckRes{"accumulate: first argument must compute an environment"}};
            if (is_value_term(args[1]))
                return StepRes{StuckRes{"accumulate: second argument must compute an environment"}};
            Ctx inner = ctx.with_env(map_override(vals[0], ctx.environment));
            return rebuild(eng.sub_step(args[1], inner, 1), "accumulate", args, 1);
        };
        r.register_funcon(std::move(def));
    }
    r.register_funcon(rewrite_def(
        "collateral", {strict_par(ty_environments(), Mult::Star)},
        [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
            auto flat = flat_args(args);
            if (!flat) return std::nullopt;
            ValuePtr acc = v_empty_map();
            for (const auto& v : *flat) {
                if (!as_map(v)) return std::nullopt;
                ValuePtr joined = map_disjoint_union(acc, v);
                if (!joined) return t_app("fail");  // domains not pairwise disjoint
                acc = joined;
            }
            return t_val(acc);
        },
        Congruence::Interleave));
    {
        FunconDef def;
        def.name = "bind-recursively";
        def.params = {strict_par(ty_identifiers()), lazy_par()};
        def.step = [](Engine& eng, Args args, const Ctx&) -> std::optional<StepRes> {
            ValueSeq vals;
            if (!term_values(args[0], vals)) return std::nullopt;
            if (vals.size() != 1) return std::nullopt;
            std::uint64_t link = eng.fresh_link();
            eng.state().links.emplace(link, std::nullopt);
            ValuePtr env = v_map({MapEntry{vals[0], {v_link(link)}}});
            TermPtr compute = t_app("scope", {t_val(env), args[1]});
            TermPtr tie = t_app("set-link", {t_val(v_link(link)), compute});
            return StepRes{Stepped{
                t_app("sequential", {t_app("effect", {tie}), t_val(env)})}};
        };
        r.register_funcon(std::move(def));
    }
    {
        FunconDef def;
        def.name = "recursive";
        def.params = {strict_par(ty_sets()), lazy_par()};
        def.step = [](Engine& eng, Args args, const Ctx&) -> std::optional<StepRes> {
            ValueSeq vals;
            if (!term_values(args[0], vals)) return std::nullopt;
            if (vals.size() != 1) return std::nullopt;
            const auto* ids = as_set(vals[0]);
            if (!ids) return std::nullopt;
            std::vector<MapEntry> entries;
            for (const auto& id : ids->elems) {
                std::string ignored;
                if (!identifier_text(id, ignored))
                    return StepRes{StuckRes{"recursive: set must contain identifiers"}};
                std::uint64_t link = eng.fresh_link();
                eng.state().links.emplace(link, std::nullopt);
                entries.push_back(MapEntry{id, {v_link(link)}});
            }
            ValuePtr link_env = v_map(std::move(entries));
            TermPtr compute = t_app("scope", {t_val(link_env), args[1]});
            return StepRes{Stepped{t_app("seal-links", {t_val(link_env), compute})}};
        };
        r.register_funcon(std::move(def));
    }
    {
        // Internal plumbing: stores a computed value in a fresh link.
        FunconDef def;
        def.name = "set-link";
        def.params = {strict_par(nullptr), strict_par(nullptr)};
        def.step = [](Engine& eng, Args args, const Ctx&) -> std::optional<StepRes> {
            auto flat = flat_args(args);
            if (!flat || flat->size() != 2) return std::nullopt;
            const auto* link = (*flat)[0]->get_if<LinkVal>();
            if (!link) return std::nullopt;
            auto it = eng.state().links.find(link->id);
            if (it == eng.state().links.end())
                return StepRes{StuckRes{"set-link: link does not exist"}};
            if (it->second.has_value())
                return StepRes{StuckRes{"set-link: link already set"}};
            it->second = (*flat)[1];
            return StepRes{Stepped{t_seq({})}};
        };
        r.register_funcon(std::move(def));
    }
    {
        // Internal plumbing: ties each link in the first environment to the
        // value of the same identifier in the second, then yields the second.
        FunconDef def;
        def.name = "seal-links";
        def.params = {strict_par(ty_environments()), strict_par(ty_environments())};
        def.step = [](Engine& eng, Args args, const Ctx&) -> std::optional<StepRes> {
            auto flat = flat_args(args);
            if (!flat || flat->size() != 2) return std::nullopt;
            const auto* link_env = as_map((*flat)[0]);
            const auto* result_env = as_map((*flat)[1]);
            if (!link_env || !result_env) return std::nullopt;
            for (const auto& entry : link_env->entries) {
                if (entry.value.size() != 1) continue;
                const auto* link = entry.value[0]->get_if<LinkVal>();
                if (!link) continue;
                const ValueSeq* hit = map_find(*result_env, entry.key);
                if (!hit || hit->empty()) return StepRes{Raised{v_failed()}};
                auto it = eng.state().links.find(link->id);
                if (it == eng.state().links.end())
                    return StepRes{StuckRes{"seal-links: link does not exist"}};
                if (it->second.has_value())
                    return StepRes{StuckRes{"seal-links: link already set"}};
                it->second = (*hit)[0];
            }
            return StepRes{Stepped{t_val((*flat)[1])}};
        };
        r.register_funcon(std::move(def));
    }
}

// --- storing -----------------------------------------------------------------------

void register_storing(Registry& r) {
    {
        FunconDef def;
        def.name = "allocate-variable";
        def.params = {strict_par(ty_value_types())};
        def.step = [](Engine& eng, Args args, const Ctx&) -> std::optional<StepRes> {
            ValueSeq vals;
            if (!term_values(args[0], vals)) return std::nullopt;
            if (vals.size() != 1 || !as_type(vals[0])) return std::nullopt;
            std::uint64_t loc = eng.fresh_location();
            eng.state().store.emplace(loc, std::nullopt);
            return StepRes{Stepped{t_val(v_var(loc, vals[0]))}};
        };
        r.register_funcon(std::move(def));
    }

    auto assign_step = [](const char* name) {
        std::string self = name;
        return [self](Engine& eng, Args args, const Ctx&) -> std::optional<StepRes> {
            auto flat = flat_args(args);
            if (!flat || flat->size() != 2) return std::nullopt;
            const auto* var = as_var((*flat)[0]);
            if (!var)
                return StepRes{StuckRes{self + ": first argument is not a simple variable"}};
            auto it = eng.state().store.find(var->location);
            if (it == eng.state().store.end())
                return StepRes{StuckRes{self + ": variable is not allocated"}};
            if (!type_member((*flat)[1], var->type)) return StepRes{Raised{v_failed()}};
            it->second = (*flat)[1];
            return StepRes{Stepped{t_null()}};
        };
    };
    {
        FunconDef def;
        def.name = "assign";
        def.params = {strict_par(nullptr), strict_par(nullptr)};
        def.step = assign_step("assign");
        r.register_funcon(std::move(def));
    }
    {
        FunconDef def;
        def.name = "initialise-variable";
        def.params = {strict_par(nullptr), strict_par(nullptr)};
        def.step = assign_step("initialise-variable");
        r.register_funcon(std::move(def));
    }
    {
        FunconDef def;
        def.name = "assigned";
        def.params = {strict_par(nullptr)};
        def.step = [](Engine& eng, Args args, const Ctx&) -> std::optional<StepRes> {
            ValueSeq vals;
            if (!term_values(args[0], vals)) return std::nullopt;
            if (vals.size() != 1) return std::nullopt;
            const auto* var = as_var(vals[0]);
            if (!var)
                return StepRes{StuckRes{"assigned: argument is not a simple variable"}};
            auto it = eng.state().store.find(var->location);
            if (it == eng.state().store.end())
                return StepRes{StuckRes{"assigned: variable is not allocated"}};
            if (!it->second.has_value()) return StepRes{Raised{v_failed()}};
            return StepRes{Stepped{t_val(*it->second)}};
        };
        r.register_funcon(std::move(def));
    }
    {
        FunconDef def;
        def.name = "un-assign";
        def.params = {strict_par(nullptr)};
        def.step = [](Engine& eng, Args args, const Ctx&) -> std::optional<StepRes> {
            ValueSeq vals;
            if (!term_values(args[0], vals)) return std::nullopt;
            if (vals.size() != 1) return std::nullopt;
            const auto* var = as_var(vals[0]);
            if (!var)
                return StepRes{StuckRes{"un-assign: argument is not a simple variable"}};
            auto it = eng.state().store.find(var->location);
            if (it == eng.state().store.end())
                return StepRes{StuckRes{"un-assign: variable is not allocated"}};
            it->second = std::nullopt;
            return StepRes{Stepped{t_null()}};
        };
        r.register_funcon(std::move(def));
    }
    {
        FunconDef def;
        def.name = "recycle-variables";
        def.params = {strict_par(nullptr, Mult::Star)};
        def.step = [](Engine& eng, Args args, const Ctx&) -> std::optional<StepRes> {
            auto flat = flat_args(args);
            if (!flat) return std::nullopt;
            for (const auto& v : *flat) {
                const auto* var = as_var(v);
                if (!var)
                    return StepRes{StuckRes{"recycle-variables: argument is not a variable"}};
                if (!eng.state().store.count(var->location))
                    return StepRes{StuckRes{"recycle-variables: variable already recycled"}};
            }
            for (const auto& v : *flat) eng.state().store.erase(as_var(v)->location);
            return StepRes{Stepped{t_null()}};
        };
        r.register_funcon(std::move(def));
    }
    r.register_funcon(rewrite_def(
        "allocate-initialised-variable", {strict_par(ty_value_types()), strict_par(nullptr)},
        [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
            auto flat = flat_args(args);
            if (!flat || flat->size() != 2) return std::nullopt;
            if (!as_type((*flat)[0])) return std::nullopt;
            TermPtr alloc = t_app("allocate-variable", {t_val((*flat)[0])});
            TermPtr init = t_app("initialise-variable", {t_app("given"), t_val((*flat)[1])});
            return t_app("give", {alloc, t_app("sequential", {init, t_app("given")})});
        }));
    r.register_alias("alloc-init", "allocate-initialised-variable");
    r.register_funcon(rewrite_def("current-value", {strict_par(nullptr)},
                                  [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
                                      auto flat = flat_args(args);
                                      if (!flat || flat->size() != 1) return std::nullopt;
                                      if (as_var((*flat)[0]))
                                          return t_app("assigned", {t_val((*flat)[0])});
                                      return t_val((*flat)[0]);
                                  }));
    {
        // structural-assign(V1, V2): componentwise; simple variables in V1
        // receive the matching parts of V2, immutable parts must be equal.
        // Assignments happen left to right and are not rolled back.
        FunconDef def;
        def.name = "structural-assign";
        def.params = {strict_par(nullptr), strict_par(nullptr)};
        def.step = [](Engine& eng, Args args, const Ctx&) -> std::optional<StepRes> {
            auto flat = flat_args(args);
            if (!flat || flat->size() != 2) return std::nullopt;

            std::function<StepRes(const ValuePtr&, const ValuePtr&)> walk =
                [&](const ValuePtr& target, const ValuePtr& source) -> StepRes {
                if (const auto* var = as_var(target)) {
                    auto it = eng.state().store.find(var->location);
                    if (it == eng.state().store.end())
                        return StuckRes{"structural-assign: variable is not allocated"};
                    if (!type_member(source, var->type)) return Raised{v_failed()};
                    it->second = source;
                    return Stepped{t_null()};
                }
                const auto* dt = as_datatype(target);
                const auto* ds = as_datatype(source);
                if (dt && ds) {
                    if (dt->ctor != ds->ctor || dt->args.size() != ds->args.size())
                        return Raised{v_failed()};
                    for (std::size_t i = 0; i < dt->args.size(); ++i) {
                        StepRes sub = walk(dt->args[i], ds->args[i]);
                        if (!std::holds_alternative<Stepped>(sub)) return sub;
                    }
                    return Stepped{t_null()};
                }
                try {
                    if (value_equal(target, source)) return Stepped{t_null()};
                    return Raised{v_failed()};
                } catch (const NotGroundError&) {
                    return StuckRes{"structural-assign: cannot compare non-ground components"};
                }
            };
            return walk((*flat)[0], (*flat)[1]);
        };
        r.register_funcon(std::move(def));
    }
    {
        FunconDef def;
        def.name = "structural-assigned";
        def.params = {strict_par(nullptr)};
        def.step = [](Engine& eng, Args args, const Ctx&) -> std::optional<StepRes> {
            ValueSeq vals;
            if (!term_values(args[0], vals)) return std::nullopt;
            if (vals.size() != 1) return std::nullopt;

            struct Failure {
                StepRes res;
            };
            std::function<ValuePtr(const ValuePtr&)> walk =
                [&](const ValuePtr& v) -> ValuePtr {
                if (const auto* var = as_var(v)) {
                    auto it = eng.state().store.find(var->location);
                    if (it == eng.state().store.end())
                        throw Failure{StuckRes{"structural-assigned: variable is not allocated"}};
                    if (!it->second.has_value()) throw Failure{Raised{v_failed()}};
                    return *it->second;
                }
                if (const auto* d = as_datatype(v)) {
                    ValueSeq next;
                    next.reserve(d->args.size());
                    for (const auto& a : d->args) next.push_back(walk(a));
                    return v_datatype(d->ctor, std::move(next));
                }
                if (const auto* m = as_map(v)) {
                    std::vector<MapEntry> entries;
                    for (const auto& e : m->entries) {
                        MapEntry out{e.key, {}};
                        for (const auto& x : e.value) out.value.push_back(walk(x));
                        entries.push_back(std::move(out));
                    }
                    return v_map(std::move(entries));
                }
                return v;
            };
            try {
                return StepRes{Stepped{t_val(walk(vals[0]))}};
            } catch (const Failure& f) {
                return f.res;
            }
        };
        r.register_funcon(std::move(def));
    }
}

// --- interaction --------------------------------------------------------------------

void register_interaction(Registry& r) {
    {
        FunconDef def;
        def.name = "read";
        def.params = {};
        def.step = [](Engine& eng, Args, const Ctx&) -> std::optional<StepRes> {
            auto& in = eng.state().standard_in;
            // null-value marks the end of the input and is never consumed.
            if (in.empty() || is_null(in.front())) return StepRes{Raised{v_failed()}};
            ValuePtr v = in.front();
            in.pop_front();
            return StepRes{Stepped{t_val(v)}};
        };
        r.register_funcon(std::move(def));
    }
    {
        FunconDef def;
        def.name = "print";
        def.params = {strict_par(nullptr, Mult::Star)};
        def.step = [](Engine& eng, Args args, const Ctx&) -> std::optional<StepRes> {
            auto flat = flat_args(args);
            if (!flat) return std::nullopt;
            for (const auto& v : *flat) {
                if (!is_ground(v))
                    return StepRes{StuckRes{"print: arguments must be ground values"}};
            }
            eng.emit_output(*flat);
            return StepRes{Stepped{t_seq({})}};
        };
        r.register_funcon(std::move(def));
    }
}

}  // namespace

void register_context_funcons(Registry& r) {
    register_binding(r);
    register_storing(r);
    register_interaction(r);
    r.register_alias("assigned-value", "assigned");
}

}  // namespace funcon
