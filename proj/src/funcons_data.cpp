#include <algorithm>
#include <utility>

#include "funcon_builders.hpp"

namespace funcon {

namespace {

ValuePtr make_type_singleton(const char* name) { return v_type(name); }

}  // namespace

ValuePtr ty_values() { static const ValuePtr t = make_type_singleton("values"); return t; }
ValuePtr ty_booleans() { static const ValuePtr t = make_type_singleton("booleans"); return t; }
ValuePtr ty_integers() { static const ValuePtr t = make_type_singleton("integers"); return t; }
ValuePtr ty_naturals() { static const ValuePtr t = make_type_singleton("naturals"); return t; }
ValuePtr ty_characters() { static const ValuePtr t = make_type_singleton("characters"); return t; }
ValuePtr ty_null() { static const ValuePtr t = make_type_singleton("null-type"); return t; }
ValuePtr ty_identifiers() { static const ValuePtr t = make_type_singleton("identifiers"); return t; }
ValuePtr ty_environments() { static const ValuePtr t = make_type_singleton("environments"); return t; }
ValuePtr ty_value_types() { static const ValuePtr t = make_type_singleton("value-types"); return t; }
ValuePtr ty_lists() { static const ValuePtr t = make_type_singleton("lists"); return t; }
ValuePtr ty_sets() { static const ValuePtr t = make_type_singleton("sets"); return t; }
ValuePtr ty_maps() { static const ValuePtr t = make_type_singleton("maps"); return t; }
ValuePtr ty_abstractions() { static const ValuePtr t = make_type_singleton("abstractions"); return t; }
ValuePtr ty_thunks() { static const ValuePtr t = make_type_singleton("thunks"); return t; }
ValuePtr ty_functions() { static const ValuePtr t = make_type_singleton("functions"); return t; }
ValuePtr ty_patterns() { static const ValuePtr t = make_type_singleton("patterns"); return t; }

ValuePtr v_failed() { static const ValuePtr v = v_datatype("failed", {}); return v; }
ValuePtr v_broken() { static const ValuePtr v = v_datatype("broken", {}); return v; }
ValuePtr v_continued() { static const ValuePtr v = v_datatype("continued", {}); return v; }

std::optional<ValueSeq> flat_args(Args args) {
    ValueSeq flat;
    for (const auto& a : args) {
        if (!term_values(a, flat)) return std::nullopt;
    }
    return flat;
}

FunconDef data_def(std::string name, std::vector<ParamSpec> params, DataFn fn,
                   Congruence congruence) {
    FunconDef def;
    def.name = std::move(name);
    def.params = std::move(params);
    def.congruence = congruence;
    def.data = std::move(fn);
    return def;
}

FunconDef ctor_def(std::string name, std::vector<ParamSpec> params, FoldFn fold) {
    FunconDef def;
    def.name = std::move(name);
    def.params = std::move(params);
    def.congruence = Congruence::Interleave;
    def.fold = std::move(fold);
    return def;
}

FunconDef rewrite_def(std::string name, std::vector<ParamSpec> params, RewriteFn fn,
                      Congruence congruence) {
    FunconDef def;
    def.name = std::move(name);
    def.params = std::move(params);
    def.congruence = congruence;
    def.rewrite = std::move(fn);
    return def;
}

namespace {

ValueSeq one(ValuePtr v) { return ValueSeq{std::move(v)}; }

const DatatypeVal* list_of(const ValuePtr& v) { return as_datatype(v, "list"); }

// --- booleans ----------------------------------------------------------------

void register_booleans(Registry& r) {
    r.register_funcon(ctor_def("true", {}, [](const ValueSeq&) { return v_bool(true); }));
    r.register_funcon(ctor_def("false", {}, [](const ValueSeq&) { return v_bool(false); }));

    r.register_funcon(data_def("not", {strict_par(ty_booleans())},
                               [](std::vector<ValueSeq>&& a) {
                                   return one(v_bool(!as_bool(a[0][0])->value));
                               }));
    r.register_funcon(data_def("and", {strict_par(ty_booleans(), Mult::Star)},
                               [](std::vector<ValueSeq>&& a) {
                                   bool acc = true;
                                   for (const auto& v : a[0]) acc = acc && as_bool(v)->value;
                                   return one(v_bool(acc));
                               }));
    r.register_funcon(data_def("or", {strict_par(ty_booleans(), Mult::Star)},
                               [](std::vector<ValueSeq>&& a) {
                                   bool acc = false;
                                   for (const auto& v : a[0]) acc = acc || as_bool(v)->value;
                                   return one(v_bool(acc));
                               }));
    r.register_funcon(data_def("implies", {strict_par(ty_booleans()), strict_par(ty_booleans())},
                               [](std::vector<ValueSeq>&& a) {
                                   return one(v_bool(!as_bool(a[0][0])->value ||
                                                     as_bool(a[1][0])->value));
                               }));
    r.register_funcon(data_def("exclusive-or",
                               {strict_par(ty_booleans()), strict_par(ty_booleans())},
                               [](std::vector<ValueSeq>&& a) {
                                   return one(v_bool(as_bool(a[0][0])->value !=
                                                     as_bool(a[1][0])->value));
                               }));
    r.register_funcon(data_def("is-equal", {strict_par(nullptr), strict_par(nullptr)},
                               [](std::vector<ValueSeq>&& a) -> std::optional<ValueSeq> {
                                   try {
                                       return one(v_bool(value_equal(a[0][0], a[1][0])));
                                   } catch (const NotGroundError&) {
                                       throw StuckException(
                                           "is-equal: arguments must be ground values");
                                   }
                               }));
}

// --- integers ----------------------------------------------------------------

void register_integers(Registry& r) {
    r.register_funcon(data_def("integer-add", {strict_par(ty_integers(), Mult::Star)},
                               [](std::vector<ValueSeq>&& a) {
                                   BigInt acc = 0;
                                   for (const auto& v : a[0]) acc += as_int(v)->value;
                                   return one(v_int(acc));
                               }));
    r.register_funcon(data_def("integer-multiply", {strict_par(ty_integers(), Mult::Star)},
                               [](std::vector<ValueSeq>&& a) {
                                   BigInt acc = 1;
                                   for (const auto& v : a[0]) acc *= as_int(v)->value;
                                   return one(v_int(acc));
                               }));
    r.register_funcon(data_def("integer-subtract",
                               {strict_par(ty_integers()), strict_par(ty_integers())},
                               [](std::vector<ValueSeq>&& a) {
                                   return one(v_int(BigInt(as_int(a[0][0])->value -
                                                           as_int(a[1][0])->value)));
                               }));
    r.register_funcon(data_def("integer-negate", {strict_par(ty_integers())},
                               [](std::vector<ValueSeq>&& a) {
                                   return one(v_int(BigInt(-as_int(a[0][0])->value)));
                               }));
    r.register_funcon(data_def(
        "integer-divide", {strict_par(ty_integers()), strict_par(ty_integers())},
        [](std::vector<ValueSeq>&& a) -> std::optional<ValueSeq> {
            const BigInt& num = as_int(a[0][0])->value;
            const BigInt& den = as_int(a[1][0])->value;
            if (sgn(den) == 0) return ValueSeq{};  // not in the domain of definition
            BigInt q;
            mpz_tdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            return one(v_int(q));
        }));
    r.register_funcon(data_def(
        "integer-modulo", {strict_par(ty_integers()), strict_par(ty_integers())},
        [](std::vector<ValueSeq>&& a) -> std::optional<ValueSeq> {
            const BigInt& num = as_int(a[0][0])->value;
            const BigInt& den = as_int(a[1][0])->value;
            if (sgn(den) == 0) return ValueSeq{};
            BigInt m;
            mpz_tdiv_r(m.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            return one(v_int(m));
        }));

    auto compare = [&r](const char* name, auto test) {
        r.register_funcon(data_def(name, {strict_par(ty_integers()), strict_par(ty_integers())},
                                   [test](std::vector<ValueSeq>&& a) {
                                       int c = cmp(as_int(a[0][0])->value, as_int(a[1][0])->value);
                                       return one(v_bool(test(c)));
                                   }));
    };
    compare("is-less", [](int c) { return c < 0; });
    compare("is-less-or-equal", [](int c) { return c <= 0; });
    compare("is-greater", [](int c) { return c > 0; });
    compare("is-greater-or-equal", [](int c) { return c >= 0; });

    r.register_funcon(data_def("natural-successor", {strict_par(ty_naturals())},
                               [](std::vector<ValueSeq>&& a) {
                                   return one(v_int(BigInt(as_int(a[0][0])->value + 1)));
                               }));
    r.register_funcon(data_def("natural-predecessor", {strict_par(ty_naturals())},
                               [](std::vector<ValueSeq>&& a) -> std::optional<ValueSeq> {
                                   const BigInt& n = as_int(a[0][0])->value;
                                   if (sgn(n) == 0) return ValueSeq{};
                                   return one(v_int(BigInt(n - 1)));
                               }));
    r.register_funcon(data_def("bounded-cast",
                               {strict_par(ty_value_types()), strict_par(nullptr)},
                               [](std::vector<ValueSeq>&& a) -> std::optional<ValueSeq> {
                                   if (type_member(a[1][0], a[0][0])) return one(a[1][0]);
                                   return ValueSeq{};
                               }));
}

// --- null --------------------------------------------------------------------

void register_null(Registry& r) {
    r.register_funcon(ctor_def("null-value", {}, [](const ValueSeq&) { return v_null(); }));
    r.register_alias("null", "null-value");
}

// --- sequences, tuples, lists --------------------------------------------------

void register_sequences(Registry& r) {
    r.register_funcon(ctor_def("tuple", {strict_par(nullptr, Mult::Star)},
                               [](const ValueSeq& args) { return v_datatype("tuple", args); }));
    r.register_funcon(data_def("tuple-elements", {strict_par(nullptr)},
                               [](std::vector<ValueSeq>&& a) -> std::optional<ValueSeq> {
                                   const auto* d = as_datatype(a[0][0], "tuple");
                                   if (!d) return std::nullopt;
                                   return d->args;
                               }));

    r.register_funcon(ctor_def("list", {strict_par(nullptr, Mult::Star)},
                               [](const ValueSeq& args) { return v_datatype("list", args); }));
    r.register_funcon(data_def("list-elements", {strict_par(ty_lists())},
                               [](std::vector<ValueSeq>&& a) {
                                   return list_of(a[0][0])->args;
                               }));
    r.register_funcon(data_def("length", {strict_par(ty_lists())},
                               [](std::vector<ValueSeq>&& a) {
                                   return one(v_int(static_cast<long>(list_of(a[0][0])->args.size())));
                               }));
    r.register_funcon(data_def("head", {strict_par(ty_lists())},
                               [](std::vector<ValueSeq>&& a) -> std::optional<ValueSeq> {
                                   const auto& elems = list_of(a[0][0])->args;
                                   if (elems.empty()) return ValueSeq{};
                                   return one(elems.front());
                               }));
    r.register_funcon(data_def("tail", {strict_par(ty_lists())},
                               [](std::vector<ValueSeq>&& a) -> std::optional<ValueSeq> {
                                   const auto& elems = list_of(a[0][0])->args;
                                   if (elems.empty()) return ValueSeq{};
                                   return one(v_datatype("list",
                                                         ValueSeq(elems.begin() + 1, elems.end())));
                               }));
    r.register_funcon(data_def("cons", {strict_par(nullptr), strict_par(ty_lists())},
                               [](std::vector<ValueSeq>&& a) {
                                   ValueSeq elems;
                                   elems.push_back(a[0][0]);
                                   const auto& rest = list_of(a[1][0])->args;
                                   elems.insert(elems.end(), rest.begin(), rest.end());
                                   return one(v_datatype("list", std::move(elems)));
                               }));
    r.register_funcon(data_def("concatenate", {strict_par(ty_lists(), Mult::Star)},
                               [](std::vector<ValueSeq>&& a) {
                                   ValueSeq elems;
                                   for (const auto& l : a[0]) {
                                       const auto& part = list_of(l)->args;
                                       elems.insert(elems.end(), part.begin(), part.end());
                                   }
                                   return one(v_datatype("list", std::move(elems)));
                               }));
    r.register_funcon(data_def("reverse", {strict_par(ty_lists())},
                               [](std::vector<ValueSeq>&& a) {
                                   ValueSeq elems = list_of(a[0][0])->args;
                                   std::reverse(elems.begin(), elems.end());
                                   return one(v_datatype("list", std::move(elems)));
                               }));
    // index(N, V*): the N-th value of the sequence, 1-based; partial.
    r.register_funcon(data_def("index",
                               {strict_par(ty_integers()), strict_par(nullptr, Mult::Star)},
                               [](std::vector<ValueSeq>&& a) -> std::optional<ValueSeq> {
                                   const BigInt& n = as_int(a[0][0])->value;
                                   if (sgn(n) <= 0 || n > static_cast<long>(a[1].size()))
                                       return ValueSeq{};
                                   return one(a[1][n.get_ui() - 1]);
                               }));
}

// --- sets and maps -------------------------------------------------------------

void register_sets_maps(Registry& r) {
    r.register_funcon(ctor_def("set", {strict_par(nullptr, Mult::Star)},
                               [](const ValueSeq& args) -> std::optional<ValuePtr> {
                                   try {
                                       return v_set(args);
                                   } catch (const NotGroundError&) {
                                       return std::nullopt;
                                   }
                               }));
    r.register_funcon(data_def("set-elements", {strict_par(ty_sets())},
                               [](std::vector<ValueSeq>&& a) { return as_set(a[0][0])->elems; }));
    r.register_funcon(data_def("is-in-set", {strict_par(nullptr), strict_par(ty_sets())},
                               [](std::vector<ValueSeq>&& a) -> std::optional<ValueSeq> {
                                   try {
                                       for (const auto& e : as_set(a[1][0])->elems)
                                           if (value_equal(e, a[0][0])) return one(v_bool(true));
                                       return one(v_bool(false));
                                   } catch (const NotGroundError&) {
                                       throw StuckException("is-in-set: element must be ground");
                                   }
                               }));
    r.register_funcon(data_def("set-insert", {strict_par(nullptr), strict_par(ty_sets())},
                               [](std::vector<ValueSeq>&& a) -> std::optional<ValueSeq> {
                                   try {
                                       ValueSeq elems = as_set(a[1][0])->elems;
                                       elems.push_back(a[0][0]);
                                       return one(v_set(std::move(elems)));
                                   } catch (const NotGroundError&) {
                                       throw StuckException("set-insert: element must be ground");
                                   }
                               }));
    r.register_funcon(data_def("set-unite", {strict_par(ty_sets(), Mult::Star)},
                               [](std::vector<ValueSeq>&& a) {
                                   ValueSeq elems;
                                   for (const auto& s : a[0]) {
                                       const auto& part = as_set(s)->elems;
                                       elems.insert(elems.end(), part.begin(), part.end());
                                   }
                                   return one(v_set(std::move(elems)));
                               }));
    r.register_funcon(data_def("set-intersect", {strict_par(ty_sets()), strict_par(ty_sets())},
                               [](std::vector<ValueSeq>&& a) {
                                   ValueSeq out;
                                   const auto& rhs = as_set(a[1][0])->elems;
                                   for (const auto& e : as_set(a[0][0])->elems) {
                                       for (const auto& f : rhs)
                                           if (compare_ground(e, f) == 0) {
                                               out.push_back(e);
                                               break;
                                           }
                                   }
                                   return one(v_set(std::move(out)));
                               }));
    r.register_funcon(data_def("set-difference", {strict_par(ty_sets()), strict_par(ty_sets())},
                               [](std::vector<ValueSeq>&& a) {
                                   ValueSeq out;
                                   const auto& rhs = as_set(a[1][0])->elems;
                                   for (const auto& e : as_set(a[0][0])->elems) {
                                       bool drop = false;
                                       for (const auto& f : rhs)
                                           if (compare_ground(e, f) == 0) {
                                               drop = true;
                                               break;
                                           }
                                       if (!drop) out.push_back(e);
                                   }
                                   return one(v_set(std::move(out)));
                               }));
    r.register_funcon(data_def("set-size", {strict_par(ty_sets())},
                               [](std::vector<ValueSeq>&& a) {
                                   return one(v_int(static_cast<long>(as_set(a[0][0])->elems.size())));
                               }));

    // map(pairs*): builds a map from 2-tuples (1-tuples hide the key);
    // duplicate keys are outside the domain of definition.
    r.register_funcon(data_def(
        "map", {strict_par(nullptr, Mult::Star)},
        [](std::vector<ValueSeq>&& a) -> std::optional<ValueSeq> {
            std::vector<MapEntry> entries;
            for (const auto& pair : a[0]) {
                const auto* d = as_datatype(pair, "tuple");
                if (!d || d->args.empty() || d->args.size() > 2) return std::nullopt;
                MapEntry e;
                e.key = d->args[0];
                if (d->args.size() == 2) e.value.push_back(d->args[1]);
                entries.push_back(std::move(e));
            }
            try {
                return one(v_map(std::move(entries)));
            } catch (const NotGroundError&) {
                throw StuckException("map: keys must be ground values");
            } catch (const std::invalid_argument&) {
                return ValueSeq{};  // duplicate keys
            }
        }));
    r.register_funcon(data_def("map-lookup", {strict_par(ty_maps()), strict_par(nullptr)},
                               [](std::vector<ValueSeq>&& a) -> std::optional<ValueSeq> {
                                   try {
                                       const ValueSeq* hit = map_find(*as_map(a[0][0]), a[1][0]);
                                       return hit ? *hit : ValueSeq{};
                                   } catch (const NotGroundError&) {
                                       throw StuckException("map-lookup: key must be ground");
                                   }
                               }));
    r.register_funcon(data_def("map-domain", {strict_par(ty_maps())},
                               [](std::vector<ValueSeq>&& a) {
                                   ValueSeq keys;
                                   for (const auto& e : as_map(a[0][0])->entries)
                                       keys.push_back(e.key);
                                   return one(v_set(std::move(keys)));
                               }));
    r.register_funcon(data_def("map-override", {strict_par(ty_maps(), Mult::Star)},
                               [](std::vector<ValueSeq>&& a) {
                                   ValuePtr acc = v_empty_map();
                                   for (auto it = a[0].rbegin(); it != a[0].rend(); ++it)
                                       acc = map_override(*it, acc);
                                   return one(acc);
                               }));
    r.register_funcon(rewrite_def(
        "map-unite", {strict_par(ty_maps(), Mult::Star)},
        [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
            auto flat = flat_args(args);
            if (!flat) return std::nullopt;
            ValuePtr acc = v_empty_map();
            for (const auto& m : *flat) {
                if (!as_map(m)) return std::nullopt;
                ValuePtr joined = map_disjoint_union(acc, m);
                if (!joined) return t_app("fail");  // overlapping domains
                acc = joined;
            }
            return t_val(acc);
        },
        Congruence::Interleave));
    r.register_funcon(data_def("map-delete", {strict_par(ty_maps()), strict_par(ty_sets())},
                               [](std::vector<ValueSeq>&& a) {
                                   const auto& drop = as_set(a[1][0])->elems;
                                   std::vector<MapEntry> entries;
                                   for (const auto& e : as_map(a[0][0])->entries) {
                                       bool erase = false;
                                       for (const auto& k : drop)
                                           if (compare_ground(e.key, k) == 0) {
                                               erase = true;
                                               break;
                                           }
                                       if (!erase) entries.push_back(e);
                                   }
                                   return one(v_map(std::move(entries)));
                               }));
}

// --- algebraic datatype constructors -------------------------------------------

void register_datatypes(Registry& r) {
    r.register_funcon(ctor_def("identifier", {strict_par(nullptr)},
                               [](const ValueSeq& args) -> std::optional<ValuePtr> {
                                   std::string ignored;
                                   if (!string_text(args[0], ignored)) return std::nullopt;
                                   return v_datatype("identifier", args);
                               }));
    r.register_funcon(ctor_def("broken", {}, [](const ValueSeq&) { return v_broken(); }));
    r.register_funcon(ctor_def("continued", {}, [](const ValueSeq&) { return v_continued(); }));
    r.register_funcon(ctor_def("failed", {}, [](const ValueSeq&) { return v_failed(); }));
    r.register_funcon(ctor_def("thrown", {strict_par(nullptr)}, [](const ValueSeq& args) {
        return v_datatype("thrown", args);
    }));
    r.register_funcon(ctor_def("returned", {strict_par(nullptr)}, [](const ValueSeq& args) {
        return v_datatype("returned", args);
    }));
}

// --- types as values -------------------------------------------------------------

void register_types(Registry& r) {
    auto nullary_type = [&r](const char* name) {
        std::string n = name;
        r.register_funcon(ctor_def(n, {}, [n](const ValueSeq&) { return v_type(n); }));
    };
    for (const char* name : {"booleans", "integers", "naturals", "characters", "strings",
                             "null-type", "identifiers", "environments", "patterns", "values",
                             "value-types"})
        nullary_type(name);

    r.register_funcon(ctor_def("bounded", {strict_par(ty_integers()), strict_par(ty_integers())},
                               [](const ValueSeq& args) -> std::optional<ValuePtr> {
                                   if (!as_int(args[0]) || !as_int(args[1])) return std::nullopt;
                                   return v_type("bounded", args);
                               }));

    auto type_args = [](const ValueSeq& args) {
        for (const auto& a : args)
            if (!as_type(a)) return false;
        return true;
    };
    auto parametric = [&](const char* name, std::vector<ParamSpec> params) {
        std::string n = name;
        auto check = type_args;
        r.register_funcon(ctor_def(n, std::move(params),
                                   [n, check](const ValueSeq& args) -> std::optional<ValuePtr> {
                                       if (!check(args)) return std::nullopt;
                                       return v_type(n, args);
                                   }));
    };
    parametric("tuples", {strict_par(ty_value_types(), Mult::Star)});
    parametric("lists", {strict_par(ty_value_types())});
    parametric("sets", {strict_par(ty_value_types())});
    parametric("maps", {strict_par(ty_value_types()), strict_par(ty_value_types(), Mult::Optional)});
    parametric("abstractions", {strict_par(ty_value_types())});
    parametric("thunks", {strict_par(ty_value_types())});
    parametric("functions", {strict_par(ty_value_types()), strict_par(ty_value_types())});
}

// --- abstractions, thunks, functions --------------------------------------------

const AbsVal* abs_of_wrapper(const ValuePtr& v, const char* wrapper) {
    const auto* d = as_datatype(v, wrapper);
    if (!d || d->args.size() != 1) return nullptr;
    return as_abs(d->args[0]);
}

void register_abstractions(Registry& r) {
    {
        FunconDef def;
        def.name = "abstraction";
        def.params = {lazy_par()};
        def.quote = [](const std::vector<TermPtr>& args) -> std::optional<ValuePtr> {
            if (args.size() != 1) return std::nullopt;
            return v_abs(args[0]);
        };
        r.register_funcon(std::move(def));
    }
    {
        // closure(X) captures the full current environment; enacting the
        // result restores the captured bindings and ignores current ones.
        FunconDef def;
        def.name = "closure";
        def.params = {lazy_par()};
        def.step = [](Engine&, Args args, const Ctx& ctx) -> std::optional<StepRes> {
            if (args.size() != 1) return std::nullopt;
            TermPtr body = t_app("closed", {t_app("scope", {t_val(ctx.environment), args[0]})});
            return StepRes{Stepped{t_val(v_abs(body))}};
        };
        r.register_funcon(std::move(def));
    }
    r.register_funcon(rewrite_def("enact", {strict_par(ty_abstractions())},
                                  [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
                                      auto flat = flat_args(args);
                                      if (!flat || flat->size() != 1) return std::nullopt;
                                      const auto* a = as_abs((*flat)[0]);
                                      if (!a) return std::nullopt;
                                      return a->body;
                                  }));

    auto wrap_ctor = [&r](const char* name) {
        std::string n = name;
        r.register_funcon(ctor_def(n, {strict_par(ty_abstractions())},
                                   [n](const ValueSeq& args) -> std::optional<ValuePtr> {
                                       if (!as_abs(args[0])) return std::nullopt;
                                       return v_datatype(n, args);
                                   }));
    };
    wrap_ctor("thunk");
    wrap_ctor("function");
    wrap_ctor("pattern");

    r.register_funcon(rewrite_def("force", {strict_par(ty_thunks())},
                                  [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
                                      auto flat = flat_args(args);
                                      if (!flat || flat->size() != 1) return std::nullopt;
                                      const auto* a = abs_of_wrapper((*flat)[0], "thunk");
                                      if (!a) return std::nullopt;
                                      return a->body;
                                  }));

    r.register_funcon(rewrite_def(
        "apply", {strict_par(ty_functions()), strict_par(nullptr)},
        [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
            auto flat = flat_args(args);
            if (!flat || flat->size() != 2) return std::nullopt;
            const auto* a = abs_of_wrapper((*flat)[0], "function");
            if (!a) return std::nullopt;
            return t_app("give", {t_val((*flat)[1]), a->body});
        }));
    r.register_funcon(rewrite_def(
        "supply", {strict_par(ty_functions()), strict_par(nullptr)},
        [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
            auto flat = flat_args(args);
            if (!flat || flat->size() != 2) return std::nullopt;
            const auto* a = abs_of_wrapper((*flat)[0], "function");
            if (!a) return std::nullopt;
            TermPtr body = t_app("give", {t_val((*flat)[1]), a->body});
            return t_val(v_datatype("thunk", {v_abs(body)}));
        }));
    r.register_funcon(rewrite_def(
        "compose", {strict_par(ty_functions()), strict_par(ty_functions())},
        [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
            auto flat = flat_args(args);
            if (!flat || flat->size() != 2) return std::nullopt;
            if (!abs_of_wrapper((*flat)[0], "function") ||
                !abs_of_wrapper((*flat)[1], "function"))
                return std::nullopt;
            TermPtr body = t_app(
                "apply", {t_val((*flat)[0]), t_app("apply", {t_val((*flat)[1]), t_app("given")})});
            return t_val(v_datatype("function", {v_abs(body)}));
        }));
    r.register_funcon(rewrite_def(
        "partial-apply", {strict_par(ty_functions()), strict_par(nullptr)},
        [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
            auto flat = flat_args(args);
            if (!flat || flat->size() != 2) return std::nullopt;
            if (!abs_of_wrapper((*flat)[0], "function")) return std::nullopt;
            TermPtr pair = t_app("tuple", {t_val((*flat)[1]), t_app("given")});
            TermPtr body = t_app("apply", {t_val((*flat)[0]), pair});
            return t_val(v_datatype("function", {v_abs(body)}));
        }));
    r.register_funcon(rewrite_def(
        "curry", {strict_par(ty_functions())},
        [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
            auto flat = flat_args(args);
            if (!flat || flat->size() != 1) return std::nullopt;
            if (!abs_of_wrapper((*flat)[0], "function")) return std::nullopt;
            TermPtr body = t_app("partial-apply", {t_val((*flat)[0]), t_app("given")});
            return t_val(v_datatype("function", {v_abs(body)}));
        }));
    r.register_funcon(rewrite_def(
        "uncurry", {strict_par(ty_functions())},
        [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
            auto flat = flat_args(args);
            if (!flat || flat->size() != 1) return std::nullopt;
            if (!abs_of_wrapper((*flat)[0], "function")) return std::nullopt;
            auto component = [](long i) {
                return t_app("index",
                             {t_int(i), t_app("tuple-elements", {t_app("given")})});
            };
            TermPtr body = t_app(
                "apply", {t_app("apply", {t_val((*flat)[0]), component(1)}), component(2)});
            return t_val(v_datatype("function", {v_abs(body)}));
        }));
}

// --- patterns ---------------------------------------------------------------------

void register_patterns(Registry& r) {
    auto pattern_of = [](TermPtr body) {
        return t_val(v_datatype("pattern", {v_abs(std::move(body))}));
    };

    r.register_funcon(rewrite_def("pattern-bind", {strict_par(ty_identifiers())},
                                  [pattern_of](Args args, RewriteCtl&) -> std::optional<TermPtr> {
                                      auto flat = flat_args(args);
                                      if (!flat || flat->size() != 1) return std::nullopt;
                                      std::string ignored;
                                      if (!identifier_text((*flat)[0], ignored)) return std::nullopt;
                                      return pattern_of(t_app(
                                          "bind-value", {t_val((*flat)[0]), t_app("given")}));
                                  }));
    r.register_funcon(rewrite_def("pattern-any", {},
                                  [pattern_of](Args, RewriteCtl&) -> std::optional<TermPtr> {
                                      return pattern_of(t_val(v_empty_map()));
                                  }));
    r.register_funcon(rewrite_def(
        "pattern-value", {strict_par(nullptr)},
        [pattern_of](Args args, RewriteCtl&) -> std::optional<TermPtr> {
            auto flat = flat_args(args);
            if (!flat || flat->size() != 1) return std::nullopt;
            TermPtr body =
                t_app("if-true-else", {t_app("is-equal", {t_app("given"), t_val((*flat)[0])}),
                                       t_val(v_empty_map()), t_app("fail")});
            return pattern_of(body);
        }));
    r.register_funcon(rewrite_def("pattern-tuple", {strict_par(nullptr, Mult::Star)},
                                  [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
                                      auto flat = flat_args(args);
                                      if (!flat) return std::nullopt;
                                      return t_val(v_datatype("tuple", *flat));
                                  }));

    // match(X, P): enact a pattern with X as the given value, or match
    // structured values componentwise (union of the computed environments).
    r.register_funcon(rewrite_def(
        "match", {strict_par(nullptr), strict_par(nullptr)},
        [](Args args, RewriteCtl&) -> std::optional<TermPtr> {
            auto flat = flat_args(args);
            if (!flat || flat->size() != 2) return std::nullopt;
            const ValuePtr& scrutinee = (*flat)[0];
            const ValuePtr& pat = (*flat)[1];
            if (const auto* a = abs_of_wrapper(pat, "pattern")) {
                return t_app("give", {t_val(scrutinee), a->body});
            }
            if (const auto* pd = as_datatype(pat)) {
                const auto* sd = as_datatype(scrutinee);
                if (!sd || sd->ctor != pd->ctor || sd->args.size() != pd->args.size())
                    return t_app("fail");
                std::vector<TermPtr> parts;
                for (std::size_t i = 0; i < pd->args.size(); ++i)
                    parts.push_back(t_app("match", {t_val(sd->args[i]), t_val(pd->args[i])}));
                return t_app("collateral", std::move(parts));
            }
            if (pat->get_if<AbsVal>() || pat->get_if<VarVal>() || pat->get_if<LinkVal>())
                return std::nullopt;
            try {
                return value_equal(scrutinee, pat) ? t_val(v_empty_map()) : t_app("fail");
            } catch (const NotGroundError&) {
                return t_app("fail");  // structures cannot match
            }
        }));
}

}  // namespace

void register_data_funcons(Registry& r) {
    register_booleans(r);
    register_integers(r);
    register_null(r);
    register_sequences(r);
    register_sets_maps(r);
    register_datatypes(r);
    register_types(r);
    register_abstractions(r);
    register_patterns(r);
}

}  // namespace funcon
