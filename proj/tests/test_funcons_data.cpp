#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace funcon;
using fts::outcome_text;
using fts::parse;

TEST_CASE("boolean operations") {
    CHECK(outcome_text("and(true, false)") == "Normal(false)");
    CHECK(outcome_text("and(true, true, true)") == "Normal(true)");
    CHECK(outcome_text("and( )") == "Normal(true)");
    CHECK(outcome_text("or(false, true)") == "Normal(true)");
    CHECK(outcome_text("not(not(true))") == "Normal(true)");
    CHECK(outcome_text("implies(false, false)") == "Normal(true)");
    CHECK(outcome_text("exclusive-or(true, true)") == "Normal(false)");
    CHECK(outcome_text("is-equal(broken, broken)") == "Normal(true)");
    CHECK(outcome_text("is-equal(0, null-value)") == "Normal(false)");
    CHECK(outcome_text("is-equal({1, 2}, {2, 1})") == "Normal(true)");
    CHECK(fts::run_text("is-equal(abstraction(given), abstraction(given))").kind ==
          RunResult::Kind::Stuck);
    CHECK(fts::run_text("and(1, true)").kind == RunResult::Kind::Stuck);
}

TEST_CASE("integer operations are exact and partial where documented") {
    CHECK(outcome_text("integer-add(1, 2, 3)") == "Normal(6)");
    CHECK(outcome_text("integer-add( )") == "Normal(0)");
    CHECK(outcome_text("integer-multiply(2, 3, 4)") == "Normal(24)");
    CHECK(outcome_text("integer-subtract(3, 5)") == "Normal(-2)");
    CHECK(outcome_text("integer-negate(-4)") == "Normal(4)");
    CHECK(outcome_text("integer-divide(7, 2)") == "Normal(3)");
    CHECK(outcome_text("integer-divide(-7, 2)") == "Normal(-3)");
    CHECK(outcome_text("integer-divide(7, 0)") == "Normal(( ))");
    CHECK(outcome_text("integer-modulo(7, 2)") == "Normal(1)");
    CHECK(outcome_text("integer-modulo(7, 0)") == "Normal(( ))");
    CHECK(outcome_text("is-less(1, 2)") == "Normal(true)");
    CHECK(outcome_text("is-less-or-equal(2, 2)") == "Normal(true)");
    CHECK(outcome_text("is-greater(1, 2)") == "Normal(false)");
    CHECK(outcome_text("is-greater-or-equal(2, 3)") == "Normal(false)");
    CHECK(outcome_text("natural-successor(4)") == "Normal(5)");
    CHECK(outcome_text("natural-predecessor(0)") == "Normal(( ))");
    CHECK(outcome_text("natural-predecessor(3)") == "Normal(2)");
    CHECK(fts::run_text("natural-successor(-1)").kind == RunResult::Kind::Stuck);
}

TEST_CASE("bounded casts follow type membership") {
    // Oracle: the type_member operation itself.
    fts::Gen gen(3);
    for (int i = 0; i < 50; ++i) {
        long n = static_cast<long>(gen.pick(600)) - 300;
        bool in_range = type_member(v_int(n), parse("bounded(0, 255)")->get_if<Term::Val>()->value);
        std::string expected = in_range ? "Normal(" + std::to_string(n) + ")" : "Normal(( ))";
        CHECK(outcome_text("bounded-cast(bounded(0, 255), " + std::to_string(n) + ")") ==
              expected);
    }
    CHECK(outcome_text("bounded-cast(bounded(0, 255), 300)") == "Normal(( ))");
    CHECK(outcome_text("bounded-cast(naturals, -1)") == "Normal(( ))");
}

TEST_CASE("sequences flatten into argument positions") {
    CHECK(outcome_text("integer-add(1, (2, 3))") == "Normal(6)");
    CHECK(outcome_text("integer-add(1, list-elements([2, 3]))") == "Normal(6)");
    CHECK(outcome_text("tuple(list-elements([1, 2]))") == "Normal(tuple(1, 2))");
    // A required value that evaluates away leaves the operation stuck.
    CHECK(fts::run_text("not(head([]))").kind == RunResult::Kind::Stuck);
}

TEST_CASE("list operations") {
    CHECK(outcome_text("list-elements([1, 2])") == "Normal((1, 2))");
    CHECK(outcome_text("list(list-elements([1, 2]))") == "Normal([1, 2])");
    CHECK(outcome_text("head([])") == "Normal(( ))");
    CHECK(outcome_text("tail([])") == "Normal(( ))");
    CHECK(outcome_text("head([5, 6])") == "Normal(5)");
    CHECK(outcome_text("tail([5, 6])") == "Normal([6])");
    CHECK(outcome_text("cons(1, [2, 3])") == "Normal([1, 2, 3])");
    CHECK(outcome_text("concatenate([1], [], [2, 3])") == "Normal([1, 2, 3])");
    CHECK(outcome_text("reverse([1, 2, 3])") == "Normal([3, 2, 1])");
    CHECK(outcome_text("length([1, 2, 3])") == "Normal(3)");
    CHECK(outcome_text("length(\"abc\")") == "Normal(3)");
    CHECK(outcome_text("index(2, (7, 8, 9))") == "Normal(8)");
    CHECK(outcome_text("index(4, (7, 8, 9))") == "Normal(( ))");
    CHECK(outcome_text("index(0, (7, 8, 9))") == "Normal(( ))");
    CHECK(outcome_text("tuple-elements(tuple(1, 2))") == "Normal((1, 2))");
    CHECK(outcome_text("tuple-elements(tuple( ))") == "Normal(( ))");
}

TEST_CASE("list round-trip on generated lists") {
    fts::Gen gen(17);
    for (int i = 0; i < 100; ++i) {
        ValueSeq elems;
        for (std::uint64_t k = 0, n = gen.pick(6); k < n; ++k)
            elems.push_back(gen.ground_value(1));
        ValuePtr list = v_datatype("list", elems);
        TermPtr t = t_app("list", {t_app("list-elements", {t_val(list)})});
        RunResult r = fts::run_term(t);
        REQUIRE(r.kind == RunResult::Kind::Normal);
        REQUIRE(r.result.size() == 1);
        CHECK(structural_equal(r.result[0], list));
    }
}

TEST_CASE("set operations") {
    CHECK(outcome_text("set-unite({1}, {2})") == "Normal({1, 2})");
    CHECK(outcome_text("set-unite( )") == "Normal(set( ))");
    CHECK(outcome_text("set-elements({2, 1})") == "Normal((1, 2))");
    CHECK(outcome_text("is-in-set(1, {1, 2})") == "Normal(true)");
    CHECK(outcome_text("is-in-set(3, {1, 2})") == "Normal(false)");
    CHECK(outcome_text("set-insert(3, {1})") == "Normal({1, 3})");
    CHECK(outcome_text("set-insert(1, {1})") == "Normal({1})");
    CHECK(outcome_text("set-intersect({1, 2, 3}, {2, 3, 4})") == "Normal({2, 3})");
    CHECK(outcome_text("set-difference({1, 2, 3}, {2})") == "Normal({1, 3})");
    CHECK(outcome_text("set-size({1, 2, 3})") == "Normal(3)");
    CHECK(outcome_text("set(1, 2, 1)") == "Normal({1, 2})");
}

TEST_CASE("map operations") {
    CHECK(outcome_text("map-override({identifier(\"x\") |-> 1}, "
                       "{identifier(\"x\") |-> 2, identifier(\"y\") |-> 3})") ==
          "Normal({identifier(\"x\") |-> 1, identifier(\"y\") |-> 3})");
    CHECK(outcome_text("map-lookup({ }, identifier(\"x\"))") == "Normal(( ))");
    CHECK(outcome_text("map-lookup({1 |-> 2}, 1)") == "Normal(2)");
    CHECK(outcome_text("map-domain({1 |-> 2, 3 |-> 4})") == "Normal({1, 3})");
    CHECK(outcome_text("map-unite({1 |-> 2}, {3 |-> 4})") ==
          "Normal({1 |-> 2, 3 |-> 4})");
    CHECK(outcome_text("map-unite({1 |-> 2}, {1 |-> 4})") == "Abrupted(failed)");
    CHECK(outcome_text("map-delete({1 |-> 2, 3 |-> 4}, {1})") == "Normal({3 |-> 4})");
    CHECK(outcome_text("map(tuple(1, 2), tuple(3, 4))") == "Normal({1 |-> 2, 3 |-> 4})");
    CHECK(outcome_text("map(tuple(1, 2), tuple(1, 4))") == "Normal(( ))");  // duplicate keys
    CHECK(outcome_text("map(tuple(1))") == "Normal({1 |-> ( )})");
    CHECK(outcome_text("map-override( )") == "Normal({ })");
}

TEST_CASE("map-override laws") {
    fts::Gen gen(23);
    for (int i = 0; i < 100; ++i) {
        ValuePtr a = gen.environment();
        ValuePtr b = gen.environment();
        ValuePtr c = gen.environment();
        // Associativity.
        CHECK(value_equal(map_override(a, map_override(b, c)),
                          map_override(map_override(a, b), c)));
        // Left bias: override agrees with a on dom(a).
        ValuePtr joined = map_override(a, b);
        for (const auto& e : as_map(a)->entries) {
            const ValueSeq* hit = map_find(*as_map(joined), e.key);
            REQUIRE(hit != nullptr);
            CHECK(structural_equal_seq(*hit, e.value));
        }
        // Empty map is a right and left unit.
        CHECK(value_equal(map_override(a, v_empty_map()), a));
        CHECK(value_equal(map_override(v_empty_map(), a), a));
    }
}

TEST_CASE("datatype construction through the registry") {
    const Registry& r = fts::reg();
    CHECK(print_value(r.construct("thrown", {v_int(5L)})) == "thrown(5)");
    CHECK(print_value(r.construct("returned", {v_int(7L)})) == "returned(7)");
    CHECK(is_null(r.construct("null-value", {})));
    CHECK(is_null(r.construct("null", {})));  // alias resolves
    CHECK(print_value(r.construct("tuple", {})) == "tuple( )");
    CHECK_THROWS_AS(r.construct("thrown", ValueSeq{}), RegistryError);
    CHECK_THROWS_AS(r.construct("no-such-thing", ValueSeq{}), RegistryError);
    CHECK_THROWS_AS(r.construct("integer-add", ValueSeq{}), RegistryError);
    // Constructed values are inert: they are normal forms.
    Engine engine(fts::reg());
    EntityState s;
    StepOutcome out = engine.step(t_val(r.construct("thrown", {v_int(5L)})), s);
    CHECK(out.kind == StepOutcome::Kind::Done);
}

TEST_CASE("abstraction and closure capture") {
    // Dynamic bindings: the abstraction body reads the enactment-time value.
    EntityState state;
    state.environment = v_map({MapEntry{v_identifier("x"), {v_int(3L)}}});
    RunResult r =
        fts::run_text("enact(abstraction(bound-value(identifier(\"x\"))))", &state);
    CHECK(fts::outcome(r) == "Normal(3)");

    // Static bindings: closure restores its construction-time environment.
    std::string program =
        "scope({identifier(\"x\") |-> 1},"
        " give(closure(bound-value(identifier(\"x\"))),"
        "  scope({identifier(\"x\") |-> 2}, enact(given))))";
    CHECK(outcome_text(program) == "Normal(1)");

    // Enacting the same closure twice gives identical results when all free
    // names are captured.
    std::string twice =
        "scope({identifier(\"x\") |-> 1},"
        " give(closure(bound-value(identifier(\"x\"))),"
        "  left-to-right(scope({identifier(\"x\") |-> 2}, enact(given)),"
        "                scope({identifier(\"x\") |-> 3}, enact(given)))))";
    CHECK(outcome_text(twice) == "Normal((1, 1))");
}

TEST_CASE("function application and supply") {
    CHECK(outcome_text("apply(function(closure(given)), 9)") == "Normal(9)");
    CHECK(outcome_text(
              "apply(function(closure(integer-add(given, 1))), 41)") == "Normal(42)");
    // supply defers the body: no output happens until forced.
    std::string deferred =
        "give(supply(function(closure(sequential(effect(print(1)), given))), 5),"
        " sequential(effect(print(0)), force(given)))";
    RunResult r = fts::run_text(deferred);
    CHECK(fts::outcome(r) == "Normal(5)");
    REQUIRE(r.output.size() == 2);
    CHECK(print_value(r.output[0]) == "0");  // printed before the thunk ran
    CHECK(print_value(r.output[1]) == "1");
}

TEST_CASE("compose, curry, uncurry, partial-apply") {
    std::string inc = "function(closure(integer-add(given, 1)))";
    std::string dbl = "function(closure(integer-multiply(given, 2)))";
    CHECK(outcome_text("apply(compose(" + inc + ", " + dbl + "), 5)") == "Normal(11)");
    std::string subtract = "function(closure(integer-subtract(tuple-elements(given))))";
    CHECK(outcome_text("apply(apply(curry(" + subtract + "), 10), 3)") == "Normal(7)");
    CHECK(outcome_text("apply(partial-apply(" + subtract + ", 10), 4)") == "Normal(6)");
    CHECK(outcome_text("apply(uncurry(curry(" + subtract + ")), tuple(10, 3))") ==
          "Normal(7)");
}

TEST_CASE("a 1-tuple is not a degenerate pair") {
    std::string subtract = "function(closure(integer-subtract(tuple-elements(given))))";
    RunResult r = fts::run_text("apply(uncurry(curry(" + subtract + ")), tuple(5))");
    CHECK(r.kind == RunResult::Kind::Stuck);
}

TEST_CASE("the given value flows through enact") {
    // Abstractions constructed outside supply still see the current given.
    CHECK(outcome_text("give(5, enact(abstraction(given)))") == "Normal(5)");
    CHECK(outcome_text("give(5, force(thunk(abstraction(given))))") == "Normal(5)");
}

TEST_CASE("curry and uncurry are observationally inverse on generated pairs") {
    fts::Gen gen(29);
    std::string subtract = "function(closure(integer-subtract(tuple-elements(given))))";
    for (int i = 0; i < 25; ++i) {
        long x = static_cast<long>(gen.pick(100)) - 50;
        long y = static_cast<long>(gen.pick(100)) - 50;
        std::string pair = "tuple(" + std::to_string(x) + ", " + std::to_string(y) + ")";
        CHECK(outcome_text("apply(uncurry(curry(" + subtract + ")), " + pair + ")") ==
              outcome_text("apply(" + subtract + ", " + pair + ")"));
    }
}

TEST_CASE("patterns compute environments or fail") {
    CHECK(outcome_text("match(5, pattern-bind(identifier(\"x\")))") ==
          "Normal({identifier(\"x\") |-> 5})");
    CHECK(outcome_text("match(5, pattern-value(6))") == "Abrupted(failed)");
    CHECK(outcome_text("match(5, pattern-value(5))") == "Normal({ })");
    CHECK(outcome_text("match(5, pattern-any)") == "Normal({ })");
    CHECK(outcome_text("match(tuple(1, 2), pattern-tuple(pattern-bind(identifier(\"x\")), "
                       "pattern-bind(identifier(\"y\"))))") ==
          "Normal({identifier(\"x\") |-> 1, identifier(\"y\") |-> 2})");
    // Structure mismatch: wrong arity and wrong constructor both fail.
    CHECK(outcome_text("match(tuple(1), pattern-tuple(pattern-bind(identifier(\"x\")), "
                       "pattern-bind(identifier(\"y\"))))") == "Abrupted(failed)");
    CHECK(outcome_text("match(thrown(1), returned(1))") == "Abrupted(failed)");
    CHECK(outcome_text("match(thrown(1), thrown(1))") == "Normal({ })");
    // Overlapping binds in a structured match fail (environment union).
    CHECK(outcome_text("match(tuple(1, 2), pattern-tuple(pattern-bind(identifier(\"x\")), "
                       "pattern-bind(identifier(\"x\"))))") == "Abrupted(failed)");
    // The scrutinee value reaches the pattern body as the given value.
    CHECK(outcome_text("scope(match(tuple(1, 2), pattern-tuple(pattern-bind(identifier(\"x\")), "
                       "pattern-any)), bound-value(identifier(\"x\")))") == "Normal(1)");
}

TEST_CASE("match failures are handled like any failure") {
    CHECK(outcome_text("else(match(5, pattern-value(6)), 7)") == "Normal(7)");
    CHECK(outcome_text("checked(head([]))") == "Abrupted(failed)");
}
