#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace funcon;
using fts::outcome_text;

TEST_CASE("bind-value, unbind, and bound-value") {
    CHECK(outcome_text("bind-value(identifier(\"x\"), 1)") ==
          "Normal({identifier(\"x\") |-> 1})");
    CHECK(outcome_text("unbind(identifier(\"x\"))") == "Normal({identifier(\"x\") |-> ( )})");
    CHECK(outcome_text("scope(bind-value(identifier(\"x\"), 1),"
                       " bound-value(identifier(\"x\")))") == "Normal(1)");
    // Unbound lookup fails (A.4 "otherwise fails").
    CHECK(outcome_text("bound-value(identifier(\"x\"))") == "Abrupted(failed)");
    // A hidden binding survives overriding and reads as unbound.
    CHECK(outcome_text("scope(bind-value(identifier(\"x\"), 1),"
                       " scope(unbind(identifier(\"x\")), bound-value(identifier(\"x\"))))") ==
          "Abrupted(failed)");
}

TEST_CASE("scope shadows and restores") {
    std::string inner =
        "scope({identifier(\"x\") |-> 1},"
        " left-to-right(scope({identifier(\"x\") |-> 2}, bound-value(identifier(\"x\"))),"
        "               bound-value(identifier(\"x\"))))";
    CHECK(outcome_text(inner) == "Normal((2, 1))");
}

TEST_CASE("closed blocks non-local references") {
    CHECK(outcome_text("scope(bind-value(identifier(\"x\"), 1),"
                       " closed(bound-value(identifier(\"x\"))))") == "Abrupted(failed)");
    CHECK(outcome_text("closed(integer-add(1, 2))") == "Normal(3)");
}

TEST_CASE("accumulate lets later bindings see earlier ones") {
    CHECK(outcome_text("accumulate(bind-value(identifier(\"x\"), 1),"
                       " bind-value(identifier(\"y\"), bound-value(identifier(\"x\"))))") ==
          "Normal({identifier(\"x\") |-> 1, identifier(\"y\") |-> 1})");
    // The second environment overrides the first in the result.
    CHECK(outcome_text("accumulate(bind-value(identifier(\"x\"), 1),"
                       " bind-value(identifier(\"x\"), 2))") ==
          "Normal({identifier(\"x\") |-> 2})");
}

TEST_CASE("collateral unions disjoint environments and fails on clashes") {
    CHECK(outcome_text("collateral(bind-value(identifier(\"x\"), 1),"
                       " bind-value(identifier(\"y\"), 2))") ==
          "Normal({identifier(\"x\") |-> 1, identifier(\"y\") |-> 2})");
    CHECK(outcome_text("collateral(bind-value(identifier(\"x\"), 1),"
                       " bind-value(identifier(\"x\"), 2))") == "Abrupted(failed)");
    CHECK(outcome_text("collateral( )") == "Normal({ })");
    // Unlike collateral, the declarations of accumulate may overlap.
    CHECK(outcome_text("collateral(bind-value(identifier(\"x\"), 1))") ==
          "Normal({identifier(\"x\") |-> 1})");
}

TEST_CASE("bind-recursively ties a link through the environment") {
    // The factorial example: the recursive reference lives inside a
    // procedural abstraction, so the link is set before it is read.
    std::string factorial = fts::slurp(fts::data_path("corpus/09_factorial.fct"));
    CHECK(outcome_text(factorial) == "Normal(120)");

    // The computed environment maps the identifier to a link, which
    // bound-value dereferences transitively.
    CHECK(outcome_text("scope(bind-recursively(identifier(\"x\"), 5),"
                       " bound-value(identifier(\"x\")))") == "Normal(5)");

    // Reading the link before it is set is a stuck term, not a failure.
    RunResult r = fts::run_text(
        "scope(bind-recursively(identifier(\"x\"), bound-value(identifier(\"x\"))), 1)");
    REQUIRE(r.kind == RunResult::Kind::Stuck);
    CHECK(r.diagnostic.find("link read before set") != std::string::npos);
}

TEST_CASE("recursive ties a set of identifiers") {
    CHECK(outcome_text("scope(recursive({identifier(\"g\")},"
                       " bind-value(identifier(\"g\"), function(closure(given)))),"
                       " apply(bound-value(identifier(\"g\")), 3))") == "Normal(3)");
    // Mutual recursion: even(4) through odd/even closures.
    std::string mutual =
        "scope(recursive({identifier(\"even\"), identifier(\"odd\")},"
        " collateral("
        "  bind-value(identifier(\"even\"), function(closure("
        "   if-true-else(is-equal(given, 0), true,"
        "    apply(bound-value(identifier(\"odd\")), integer-subtract(given, 1)))))),"
        "  bind-value(identifier(\"odd\"), function(closure("
        "   if-true-else(is-equal(given, 0), false,"
        "    apply(bound-value(identifier(\"even\")), integer-subtract(given, 1)))))))),"
        " apply(bound-value(identifier(\"even\")), 4))";
    CHECK(outcome_text(mutual) == "Normal(true)");
    // A declaration that misses one identifier fails.
    CHECK(outcome_text("scope(recursive({identifier(\"a\"), identifier(\"b\")},"
                       " bind-value(identifier(\"a\"), 1)), 0)") == "Abrupted(failed)");
}

TEST_CASE("allocation, assignment, and inspection") {
    CHECK(outcome_text("give(allocate-initialised-variable(integers, 5),"
                       " sequential(assign(given, 7), assigned(given)))") == "Normal(7)");
    CHECK(outcome_text("give(alloc-init(integers, 5), assigned(given))") == "Normal(5)");
    // Assignment checks the variable's type and fails otherwise.
    CHECK(outcome_text("give(allocate-initialised-variable(integers, 5),"
                       " assign(given, true))") == "Abrupted(failed)");
    CHECK(outcome_text("give(allocate-initialised-variable(bounded(0, 9), 5),"
                       " assign(given, 12))") == "Abrupted(failed)");
    // Initialisation also checks the type.
    CHECK(outcome_text("allocate-initialised-variable(booleans, 3)") == "Abrupted(failed)");
    // Reading an uninitialised variable fails.
    CHECK(outcome_text("give(allocate-variable(integers), assigned(given))") ==
          "Abrupted(failed)");
    CHECK(outcome_text("give(allocate-initialised-variable(integers, 5),"
                       " sequential(un-assign(given), assigned(given)))") ==
          "Abrupted(failed)");
}

TEST_CASE("variables are values; aliasing works through bindings") {
    // Two names bound to the same variable observe each other's writes.
    std::string aliasing =
        "give(allocate-initialised-variable(integers, 1),"
        " scope(collateral(bind-value(identifier(\"a\"), given),"
        "                  bind-value(identifier(\"b\"), given)),"
        "  sequential(assign(bound-value(identifier(\"a\")), 9),"
        "             assigned(bound-value(identifier(\"b\"))))))";
    CHECK(outcome_text(aliasing) == "Normal(9)");
    // Variables themselves can be stored in variables.
    std::string nested =
        "give(allocate-initialised-variable(integers, 3),"
        " give(allocate-initialised-variable(values, given),"
        "  assigned(assigned(given))))";
    CHECK(outcome_text(nested) == "Normal(3)");
}

TEST_CASE("recycled variables are gone") {
    RunResult r = fts::run_text(
        "give(allocate-initialised-variable(integers, 5),"
        " sequential(recycle-variables(given), assigned(given)))");
    REQUIRE(r.kind == RunResult::Kind::Stuck);
    CHECK(r.diagnostic.find("assigned") != std::string::npos);
    r = fts::run_text(
        "give(allocate-initialised-variable(integers, 5),"
        " sequential(recycle-variables(given), recycle-variables(given)))");
    REQUIRE(r.kind == RunResult::Kind::Stuck);
    CHECK(r.diagnostic.find("already recycled") != std::string::npos);
}

TEST_CASE("allocation never reuses a live location") {
    EntityState state;
    RunResult r = fts::run_text(
        "left-to-right(allocate-variable(integers), allocate-variable(integers),"
        " allocate-variable(integers))",
        &state);
    REQUIRE(r.kind == RunResult::Kind::Normal);
    REQUIRE(r.result.size() == 3);
    CHECK(as_var(r.result[0])->location != as_var(r.result[1])->location);
    CHECK(as_var(r.result[1])->location != as_var(r.result[2])->location);
    CHECK(state.store.size() == 3);
}

TEST_CASE("current-value") {
    CHECK(outcome_text("current-value(5)") == "Normal(5)");
    CHECK(outcome_text("give(allocate-initialised-variable(integers, 5),"
                       " current-value(given))") == "Normal(5)");
}

TEST_CASE("structural assignment updates embedded variables componentwise") {
    std::string ok =
        "give(allocate-initialised-variable(integers, 0),"
        " sequential(structural-assign(tuple(given, 1), tuple(9, 1)), assigned(given)))";
    CHECK(outcome_text(ok) == "Normal(9)");
    std::string immutable_mismatch =
        "give(allocate-initialised-variable(integers, 0),"
        " structural-assign(tuple(given, 1), tuple(9, 2)))";
    CHECK(outcome_text(immutable_mismatch) == "Abrupted(failed)");
    std::string shape_mismatch =
        "give(allocate-initialised-variable(integers, 0),"
        " structural-assign(tuple(given, 1), tuple(9)))";
    CHECK(outcome_text(shape_mismatch) == "Abrupted(failed)");
    std::string type_violation =
        "give(allocate-initialised-variable(integers, 0),"
        " structural-assign(tuple(given), tuple(true)))";
    CHECK(outcome_text(type_violation) == "Abrupted(failed)");
}

TEST_CASE("structural-assigned replaces embedded variables by their values") {
    CHECK(outcome_text("give(allocate-initialised-variable(integers, 5),"
                       " structural-assigned(tuple(given, 1)))") == "Normal(tuple(5, 1))");
    CHECK(outcome_text("give(allocate-variable(integers),"
                       " structural-assigned(tuple(given)))") == "Abrupted(failed)");
    // For simple variables and variable-free values it agrees with
    // current-value (A.5).
    CHECK(outcome_text("give(allocate-initialised-variable(integers, 5),"
                       " structural-assigned(given))") ==
          outcome_text("give(allocate-initialised-variable(integers, 5),"
                       " current-value(given))"));
    fts::Gen gen(37);
    for (int i = 0; i < 30; ++i) {
        std::string v = print_value(gen.ground_value(1));
        CHECK(outcome_text("structural-assigned(" + v + ")") ==
              outcome_text("current-value(" + v + ")"));
    }
}

TEST_CASE("environment and store are independent entities") {
    // Binding-only program: the store stays untouched.
    EntityState s1;
    RunResult r1 = fts::run_text(
        "scope(accumulate(bind-value(identifier(\"x\"), 1), unbind(identifier(\"x\"))),"
        " else(bound-value(identifier(\"x\")), 0))",
        &s1);
    CHECK(r1.kind == RunResult::Kind::Normal);
    CHECK(s1.store.empty());
    // Storing-only program: the environment stays untouched.
    EntityState s2;
    s2.environment = v_map({MapEntry{v_identifier("q"), {v_int(1L)}}});
    RunResult r2 = fts::run_text(
        "give(allocate-initialised-variable(integers, 1),"
        " sequential(assign(given, 2), assigned(given)))",
        &s2);
    CHECK(r2.kind == RunResult::Kind::Normal);
    CHECK(print_value(s2.environment) == "{identifier(\"q\") |-> 1}");
}

TEST_CASE("read consumes standard-in until the null end marker") {
    EntityState state;
    state.standard_in = {v_int(3L)};
    CHECK(fts::outcome(fts::run_text("give(read, integer-add(given, 1))", &state)) ==
          "Normal(4)");
    CHECK(state.standard_in.empty());

    EntityState ended;
    ended.standard_in = {v_null()};
    CHECK(fts::outcome(fts::run_text("read", &ended)) == "Abrupted(failed)");
    CHECK(ended.standard_in.size() == 1);  // the end marker is not consumed

    EntityState empty;
    CHECK(fts::outcome(fts::run_text("read", &empty)) == "Abrupted(failed)");
}

TEST_CASE("print emits to standard-out in order") {
    EntityState state;
    RunResult r = fts::run_text("effect(print(1, 2), print(3))", &state);
    CHECK(fts::outcome(r) == "Normal(null-value)");
    REQUIRE(r.output.size() == 3);
    CHECK(print_value(r.output[0]) == "1");
    CHECK(print_value(r.output[1]) == "2");
    CHECK(print_value(r.output[2]) == "3");
    CHECK(state.standard_out.size() == 3);
    // print itself computes the empty sequence.
    CHECK(outcome_text("print(7)") == "Normal(( ))");
    // Arguments must be ground.
    CHECK(fts::run_text("print(abstraction(given))").kind == RunResult::Kind::Stuck);
}

TEST_CASE("output is never retracted") {
    // Even a failed branch's output stays; else does not roll it back.
    RunResult r = fts::run_text("else(sequential(effect(print(1)), fail), 7)");
    CHECK(fts::outcome(r) == "Normal(7)");
    REQUIRE(r.output.size() == 1);
    CHECK(print_value(r.output[0]) == "1");
}

TEST_CASE("links created by recursion machinery end up set") {
    EntityState state;
    RunResult r = fts::run_text(
        "scope(bind-recursively(identifier(\"x\"), 5), bound-value(identifier(\"x\")))",
        &state);
    REQUIRE(r.kind == RunResult::Kind::Normal);
    for (const auto& [id, value] : state.links) CHECK(value.has_value());
    // An environment carrying the link can be the result; the link-soundness
    // check accepts it because the link is set.
    RunResult env_result = fts::run_text("bind-recursively(identifier(\"x\"), 5)");
    CHECK(env_result.kind == RunResult::Kind::Normal);
}
