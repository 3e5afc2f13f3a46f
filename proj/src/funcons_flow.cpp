#include <utility>

#include "funcon/engine.hpp"
#include "funcon/format.hpp"
#include "funcon_builders.hpp"

namespace funcon {

namespace {

bool is_reason(const ValuePtr& v, const char* ctor) {
    const auto* d = as_datatype(v, ctor);
    return d && d->args.empty();
}

// The payload of thrown(V) / returned(V), if the reason has that shape.
const ValuePtr* reason_payload(const ValuePtr& v, const char* ctor) {
    const auto* d = as_datatype(v, ctor);
    if (!d || d->args.size() != 1) return nullptr;
    return &d->args[0];
}

std::optional<ValueSeq> first_arg_values(Args args) {
    ValueSeq vals;
    if (!term_values(args[0], vals)) return std::nullopt;
    return vals;
}

// --- control flow -----------------------------------------------------------------

void register_control(Registry& r) {
    r.register_funcon(data_def("left-to-right", {strict_par(nullptr, Mult::Star)},
                               [](std::vector<ValueSeq>&& a) { return a[0]; },
                               Congruence::Ordered));
    r.register_funcon(data_def("right-to-left", {strict_par(nullptr, Mult::Star)},
                               [](std::vector<ValueSeq>&& a) { return a[0]; },
                               Congruence::OrderedRight));
    r.register_funcon(data_def("interleave", {strict_par(nullptr, Mult::Star)},
                               [](std::vector<ValueSeq>&& a) { return a[0]; }));
    r.register_funcon(data_def("effect", {strict_par(nullptr, Mult::Star)},
                               [](std::vector<ValueSeq>&&) { return ValueSeq{v_null()}; }));

    {
        // sequential(X, ...): leading arguments are commands computing
        // null-value; the last argument gives the result.
        FunconDef def;
        def.name = "sequential";
        def.params = {strict_par(ty_null(), Mult::Star), strict_par(nullptr)};
        def.congruence = Congruence::Ordered;
        def.rewrite = [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
            if (args.size() == 1) return args[0];
            ValueSeq vals;
            if (!term_values(args[0], vals)) return std::nullopt;
            // Commands compute null-value or nothing at all; either way the
            // computed result is discarded.
            if (!vals.empty() && !(vals.size() == 1 && is_null(vals[0]))) return std::nullopt;
            return t_app("sequential",
                         std::vector<TermPtr>(args.begin() + 1, args.end()));
        };
        def.step = [](Engine&, Args args, const Ctx&) -> std::optional<StepRes> {
            if (args.size() < 2) return std::nullopt;
            if (auto vals = first_arg_values(args)) {
                return StepRes{StuckRes{"sequential: command computed " + print_values(*vals) +
                                        " instead of null-value"}};
            }
            return std::nullopt;
        };
        r.register_funcon(std::move(def));
    }
    {
        FunconDef def;
        def.name = "choice";
        def.params = {lazy_par(Mult::Star)};
        def.min_args = 1;
        def.step = [](Engine& eng, Args args, const Ctx&) -> std::optional<StepRes> {
            if (args.empty()) return StepRes{StuckRes{"choice: no alternatives"}};
            return StepRes{Stepped{args[eng.pick(args.size())]}};
        };
        r.register_funcon(std::move(def));
    }
    r.register_funcon(rewrite_def(
        "if-true-else", {strict_par(ty_booleans()), lazy_par(), lazy_par()},
        [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
            ValueSeq vals;
            if (!term_values(args[0], vals)) return std::nullopt;
            if (vals.size() != 1) return std::nullopt;
            const auto* b = as_bool(vals[0]);
            if (!b) return std::nullopt;
            return b->value ? args[1] : args[2];
        }));
    r.register_funcon(rewrite_def(
        "while-true", {lazy_par(), lazy_par()},
        [](Args args, RewriteCtl& ctl) -> std::optional<TermPtr> {
            // Duplicates B so it can be re-evaluated after X; the unfolding
            // budget keeps rewriting terminating within one engine step.
            if (ctl.unfold_used) {
                ctl.deferred = true;
                return std::nullopt;
            }
            ctl.unfold_used = true;
            TermPtr again = t_app("while-true", {args[0], args[1]});
            return t_app("if-true-else",
                         {args[0], t_app("sequential", {args[1], again}), t_null()});
        }));
}

// --- data flow ---------------------------------------------------------------------

void register_data_flow(Registry& r) {
    {
        FunconDef def;
        def.name = "given";
        def.params = {};
        def.step = [](Engine&, Args, const Ctx& ctx) -> std::optional<StepRes> {
            if (ctx.given.empty())
                return StepRes{StuckRes{"given: no given value in this context"}};
            return StepRes{Stepped{t_of_values(ctx.given)}};
        };
        r.register_funcon(std::move(def));
    }
    {
        FunconDef def;
        def.name = "give";
        def.params = {strict_par(nullptr), lazy_par()};
        def.rewrite = [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
            if (is_value_term(args[0]) && is_value_term(args[1])) return args[1];
            return std::nullopt;
        };
        def.step = [](Engine& eng, Args args, const Ctx& ctx) -> std::optional<StepRes> {
            ValueSeq vals;
            if (!term_values(args[0], vals)) return std::nullopt;  // congruence on X
            if (vals.size() != 1)
                return StepRes{StuckRes{"give: first argument computed " + print_values(vals) +
                                        " instead of one value"}};
            StepRes sub = eng.sub_step(args[1], ctx.with_given({vals[0]}), 1);
            if (auto* stepped = std::get_if<Stepped>(&sub))
                return StepRes{Stepped{t_app("give", {args[0], stepped->next})}};
            if (auto* done = std::get_if<DoneValues>(&sub))
                return StepRes{Stepped{t_app("give", {args[0], t_of_values(done->values)})}};
            return sub;
        };
        r.register_funcon(std::move(def));
    }

    auto map_like = [&r](const char* name, const char* order) {
        std::string ord = order;
        r.register_funcon(rewrite_def(
            name, {strict_par(ty_functions()), strict_par(nullptr, Mult::Star)},
            [ord](Args args, RewriteCtl&) -> std::optional<TermPtr> {
                auto flat = flat_args(args);
                if (!flat || flat->empty()) return std::nullopt;
                const auto* f = as_datatype((*flat)[0], "function");
                if (!f) return std::nullopt;
                std::vector<TermPtr> apps;
                for (std::size_t i = 1; i < flat->size(); ++i)
                    apps.push_back(t_app("apply", {t_val((*flat)[0]), t_val((*flat)[i])}));
                return t_app(ord, std::move(apps));
            }));
    };
    map_like("left-to-right-map", "left-to-right");
    map_like("interleave-map", "interleave");

    auto repeat_like = [&r](const char* name, const char* order) {
        std::string ord = order;
        r.register_funcon(rewrite_def(
            name,
            {strict_par(ty_functions()), strict_par(ty_integers()), strict_par(ty_integers())},
            [ord](Args args, RewriteCtl&) -> std::optional<TermPtr> {
                auto flat = flat_args(args);
                if (!flat || flat->size() != 3) return std::nullopt;
                const auto* f = as_datatype((*flat)[0], "function");
                const auto* m = as_int((*flat)[1]);
                const auto* n = as_int((*flat)[2]);
                if (!f || !m || !n) return std::nullopt;
                std::vector<TermPtr> apps;
                for (BigInt i = m->value; i <= n->value; ++i)
                    apps.push_back(t_app("apply", {t_val((*flat)[0]), t_val(v_int(i))}));
                return t_app(ord, std::move(apps));
            }));
    };
    repeat_like("left-to-right-repeat", "left-to-right");
    repeat_like("interleave-repeat", "interleave");

    auto filter_like = [&r](const char* name, const char* order) {
        std::string ord = order;
        r.register_funcon(rewrite_def(
            name, {strict_par(ty_functions()), strict_par(nullptr, Mult::Star)},
            [ord](Args args, RewriteCtl&) -> std::optional<TermPtr> {
                auto flat = flat_args(args);
                if (!flat || flat->empty()) return std::nullopt;
                const auto* f = as_datatype((*flat)[0], "function");
                if (!f) return std::nullopt;
                std::vector<TermPtr> picks;
                for (std::size_t i = 1; i < flat->size(); ++i) {
                    TermPtr keep = t_app("apply", {t_val((*flat)[0]), t_val((*flat)[i])});
                    picks.push_back(
                        t_app("if-true-else", {keep, t_val((*flat)[i]), t_seq({})}));
                }
                return t_app(ord, std::move(picks));
            }));
    };
    filter_like("left-to-right-filter", "left-to-right");
    filter_like("interleave-filter", "interleave");

    auto fold_like = [&r](const char* name, bool from_left) {
        std::string self = name;
        r.register_funcon(rewrite_def(
            name,
            {strict_par(ty_functions()), strict_par(nullptr), strict_par(nullptr, Mult::Star)},
            [self, from_left](Args args, RewriteCtl&) -> std::optional<TermPtr> {
                auto flat = flat_args(args);
                if (!flat || flat->size() < 2) return std::nullopt;
                const auto* f = as_datatype((*flat)[0], "function");
                if (!f) return std::nullopt;
                const ValuePtr& acc = (*flat)[1];
                if (flat->size() == 2) return t_val(acc);
                std::vector<TermPtr> next;
                next.push_back(t_val((*flat)[0]));
                if (from_left) {
                    ValuePtr pair = v_datatype("tuple", {acc, (*flat)[2]});
                    next.push_back(t_app("apply", {t_val((*flat)[0]), t_val(pair)}));
                    for (std::size_t i = 3; i < flat->size(); ++i)
                        next.push_back(t_val((*flat)[i]));
                } else {
                    ValuePtr pair = v_datatype("tuple", {flat->back(), acc});
                    next.push_back(t_app("apply", {t_val((*flat)[0]), t_val(pair)}));
                    for (std::size_t i = 2; i + 1 < flat->size(); ++i)
                        next.push_back(t_val((*flat)[i]));
                }
                return t_app(self, std::move(next));
            }));
    };
    fold_like("fold-left", true);
    fold_like("fold-right", false);
}

// --- abrupt termination ---------------------------------------------------------------

void register_abrupt(Registry& r) {
    {
        FunconDef def;
        def.name = "abrupt";
        def.params = {strict_par(nullptr)};
        def.step = [](Engine&, Args args, const Ctx&) -> std::optional<StepRes> {
            ValueSeq vals;
            if (!term_values(args[0], vals)) return std::nullopt;
            if (vals.size() != 1)
                return StepRes{StuckRes{"abrupt: reason must be one value"}};
            return StepRes{Raised{vals[0]}};
        };
        r.register_funcon(std::move(def));
    }
    r.register_funcon(rewrite_def("fail", {}, [](Args, RewriteCtl&) -> std::optional<TermPtr> {
        return t_app("abrupt", {t_val(v_failed())});
    }));
    r.register_funcon(rewrite_def("break", {}, [](Args, RewriteCtl&) -> std::optional<TermPtr> {
        return t_app("abrupt", {t_val(v_broken())});
    }));
    r.register_funcon(rewrite_def("continue", {},
                                  [](Args, RewriteCtl&) -> std::optional<TermPtr> {
                                      return t_app("abrupt", {t_val(v_continued())});
                                  }));
    r.register_funcon(rewrite_def("throw", {strict_par(nullptr)},
                                  [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
                                      auto flat = flat_args(args);
                                      if (!flat || flat->size() != 1) return std::nullopt;
                                      return t_app("abrupt",
                                                   {t_val(v_datatype("thrown", *flat))});
                                  }));
    r.register_funcon(rewrite_def("return", {strict_par(nullptr)},
                                  [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
                                      auto flat = flat_args(args);
                                      if (!flat || flat->size() != 1) return std::nullopt;
                                      return t_app("abrupt",
                                                   {t_val(v_datatype("returned", *flat))});
                                  }));

    auto passthrough_rewrite = [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
        if (is_value_term(args[0])) return args[0];
        return std::nullopt;
    };

    {
        FunconDef def;
        def.name = "handle-abrupt";
        def.params = {strict_par(nullptr), lazy_par()};
        def.rewrite = passthrough_rewrite;
        def.on_signal = [](Args args, const ValuePtr& reason) -> std::optional<TermPtr> {
            return t_app("give", {t_val(reason), args[1]});
        };
        r.register_funcon(std::move(def));
    }
    {
        FunconDef def;
        def.name = "finally";
        def.params = {strict_par(nullptr), lazy_par()};
        def.rewrite = [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
            if (!is_value_term(args[0])) return std::nullopt;
            return t_app("sequential", {t_app("effect", {args[1]}), args[0]});
        };
        def.on_signal = [](Args args, const ValuePtr& reason) -> std::optional<TermPtr> {
            return t_app("sequential",
                         {t_app("effect", {args[1]}), t_app("abrupt", {t_val(reason)})});
        };
        r.register_funcon(std::move(def));
    }
    {
        FunconDef def;
        def.name = "else";
        def.params = {strict_par(nullptr), lazy_par(Mult::Star)};
        def.min_args = 0;  // zero alternatives is a stuck term, not a parse error
        def.rewrite = [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
            if (args.size() == 1) return args[0];
            if (!args.empty() && is_value_term(args[0])) return args[0];
            return std::nullopt;
        };
        def.on_signal = [](Args args, const ValuePtr& reason) -> std::optional<TermPtr> {
            if (!is_reason(reason, "failed")) return std::nullopt;
            return t_app("else", std::vector<TermPtr>(args.begin() + 1, args.end()));
        };
        r.register_funcon(std::move(def));
    }
    {
        FunconDef def;
        def.name = "else-choice";
        def.params = {lazy_par(Mult::Star)};
        def.step = [](Engine& eng, Args args, const Ctx&) -> std::optional<StepRes> {
            if (args.empty()) return StepRes{StuckRes{"else-choice: no alternatives"}};
            if (args.size() == 1) return StepRes{Stepped{args[0]}};
            std::size_t k = eng.pick(args.size());
            std::vector<TermPtr> rest;
            for (std::size_t i = 0; i < args.size(); ++i)
                if (i != k) rest.push_back(args[i]);
            return StepRes{
                Stepped{t_app("else", {args[k], t_app("else-choice", std::move(rest))})}};
        };
        r.register_funcon(std::move(def));
    }
    r.register_funcon(rewrite_def("check-true", {strict_par(ty_booleans())},
                                  [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
                                      ValueSeq vals;
                                      if (!term_values(args[0], vals)) return std::nullopt;
                                      if (vals.size() != 1) return std::nullopt;
                                      const auto* b = as_bool(vals[0]);
                                      if (!b) return std::nullopt;
                                      return b->value ? t_null() : t_app("fail");
                                  }));
    {
        FunconDef def = rewrite_def("checked", {strict_par(nullptr, Mult::Optional)},
                                    [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
                                        if (args.size() != 1) return std::nullopt;
                                        ValueSeq vals;
                                        if (!term_values(args[0], vals)) return std::nullopt;
                                        if (vals.empty()) return t_app("fail");
                                        return args[0];
                                    });
        def.min_args = 1;
        def.max_args = 1;
        r.register_funcon(std::move(def));
    }
    {
        FunconDef def;
        def.name = "handle-thrown";
        def.params = {strict_par(nullptr), lazy_par()};
        def.rewrite = passthrough_rewrite;
        def.on_signal = [](Args args, const ValuePtr& reason) -> std::optional<TermPtr> {
            const ValuePtr* payload = reason_payload(reason, "thrown");
            if (!payload) return std::nullopt;
            return t_app("give", {t_val(*payload), args[1]});
        };
        r.register_funcon(std::move(def));
    }
    {
        // handle-recursively: another copy of the handler guards the handler
        // body itself.
        FunconDef def;
        def.name = "handle-recursively";
        def.params = {strict_par(nullptr), lazy_par()};
        def.rewrite = passthrough_rewrite;
        def.on_signal = [](Args args, const ValuePtr& reason) -> std::optional<TermPtr> {
            const ValuePtr* payload = reason_payload(reason, "thrown");
            if (!payload) return std::nullopt;
            return t_app("handle-recursively",
                         {t_app("give", {t_val(*payload), args[1]}), args[1]});
        };
        r.register_funcon(std::move(def));
    }
    {
        FunconDef def;
        def.name = "handle-return";
        def.params = {strict_par(nullptr)};
        def.rewrite = passthrough_rewrite;
        def.on_signal = [](Args, const ValuePtr& reason) -> std::optional<TermPtr> {
            const ValuePtr* payload = reason_payload(reason, "returned");
            if (!payload) return std::nullopt;
            return t_val(*payload);
        };
        r.register_funcon(std::move(def));
    }
    {
        FunconDef def;
        def.name = "handle-break";
        def.params = {strict_par(nullptr)};
        def.rewrite = passthrough_rewrite;
        def.on_signal = [](Args, const ValuePtr& reason) -> std::optional<TermPtr> {
            if (!is_reason(reason, "broken")) return std::nullopt;
            return t_null();
        };
        r.register_funcon(std::move(def));
    }
    {
        FunconDef def;
        def.name = "handle-continue";
        def.params = {strict_par(nullptr)};
        def.rewrite = passthrough_rewrite;
        def.on_signal = [](Args, const ValuePtr& reason) -> std::optional<TermPtr> {
            if (!is_reason(reason, "continued")) return std::nullopt;
            return t_null();
        };
        r.register_funcon(std::move(def));
    }
}

}  // namespace

void register_flow_funcons(Registry& r) {
    register_control(r);
    register_data_flow(r);
    register_abrupt(r);
}

}  // namespace funcon
