#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace funcon;
using fts::outcome_text;

namespace {

// A fresh counter variable bound to id "c", running `body` in its scope.
std::string with_counter(const std::string& body) {
    return "scope(bind-value(identifier(\"c\"), allocate-initialised-variable(integers, 0)), " +
           body + ")";
}

const char* kBump =
    "effect(assign(bound-value(identifier(\"c\")),"
    " integer-add(assigned(bound-value(identifier(\"c\"))), 1)))";

}  // namespace

TEST_CASE("sequential gives the last argument's values") {
    RunResult r = fts::run_text("sequential(effect(print(1)), 42)");
    CHECK(fts::outcome(r) == "Normal(42)");
    REQUIRE(r.output.size() == 1);
    CHECK(print_value(r.output[0]) == "1");

    CHECK(outcome_text("sequential(null-value, null-value, 7)") == "Normal(7)");
    CHECK(outcome_text("sequential(print(1), (8, 9))") == "Normal((8, 9))");
    // Leading commands must not compute a proper value.
    CHECK(fts::run_text("sequential(5, 6)").kind == RunResult::Kind::Stuck);
}

TEST_CASE("effect discards values and computes null") {
    CHECK(outcome_text("effect(1, 2, 3)") == "Normal(null-value)");
    CHECK(outcome_text("effect( )") == "Normal(null-value)");
    RunResult r = fts::run_text("effect(print(7))");
    CHECK(fts::outcome(r) == "Normal(null-value)");
    CHECK(r.output.size() == 1);
}

TEST_CASE("if-true-else leaves the untaken branch unexecuted") {
    RunResult r = fts::run_text("if-true-else(false, abrupt(broken), null-value)");
    CHECK(fts::outcome(r) == "Normal(null-value)");
    r = fts::run_text("if-true-else(false, effect(print(1)), effect(print(2)))");
    REQUIRE(r.output.size() == 1);
    CHECK(print_value(r.output[0]) == "2");
}

TEST_CASE("while-true iterates through the store") {
    // Hand-unfolded oracle: three iterations, final counter 3.
    std::string loop =
        "scope(bind-value(identifier(\"v\"), allocate-initialised-variable(integers, 0)),"
        " sequential(while-true(is-less(assigned(bound-value(identifier(\"v\"))), 3),"
        "   effect(assign(bound-value(identifier(\"v\")),"
        "     integer-add(assigned(bound-value(identifier(\"v\"))), 1)))),"
        "  assigned(bound-value(identifier(\"v\")))))";
    CHECK(outcome_text(loop) == "Normal(3)");
    // A body computing a proper non-null value leaves the loop stuck.
    CHECK(fts::run_text("while-true(true, 5)").kind == RunResult::Kind::Stuck);
}

TEST_CASE("choice commits to one alternative") {
    CHECK(outcome_text("choice(7)") == "Normal(7)");
    CHECK(outcome_text("choice(7, abrupt(broken))") == "Normal(7)");  // leftmost default
    // Under a seed, whichever branch is selected is the one that runs.
    for (std::uint64_t seed = 0; seed <= 10; ++seed) {
        EngineOptions opt;
        opt.seed = seed;
        RunResult r = fts::run_text("choice(1, 2, 3)", nullptr, opt);
        REQUIRE(r.kind == RunResult::Kind::Normal);
        std::string v = print_values(r.result);
        CHECK((v == "1" || v == "2" || v == "3"));
    }
}

TEST_CASE("interleave concatenates in argument order") {
    for (std::uint64_t seed : {0ULL, 5ULL, 77ULL}) {
        EngineOptions opt;
        opt.seed = seed;
        CHECK(fts::outcome(fts::run_text(
                  "interleave(integer-add(1, 0), integer-add(2, 0), integer-add(3, 0))",
                  nullptr, opt)) == "Normal((1, 2, 3))");
    }
}

TEST_CASE("given and give") {
    CHECK(outcome_text("give(3, integer-add(given, given))") == "Normal(6)");
    // Inside X of give(X, Y) the outer given is still visible; inside Y the
    // new one is; afterwards the outer value is restored.
    CHECK(outcome_text("give(5, integer-add(give(6, given), given))") == "Normal(11)");
    EntityState state;
    state.given = {v_int(9L)};
    RunResult r = fts::run_text("give(integer-add(given, 1), given)", &state);
    CHECK(fts::outcome(r) == "Normal(10)");
    REQUIRE(state.given.size() == 1);
    CHECK(print_value(state.given[0]) == "9");
    // give requires exactly one computed value.
    CHECK(fts::run_text("give(( ), given)").kind == RunResult::Kind::Stuck);
}

TEST_CASE("maps, filters, repeats, folds") {
    std::string inc = "function(closure(integer-add(given, 1)))";
    CHECK(outcome_text("left-to-right-map(" + inc + ", 1, 2, 3)") == "Normal((2, 3, 4))");
    CHECK(outcome_text("left-to-right-map(" + inc + ")") == "Normal(( ))");
    CHECK(outcome_text("interleave-map(" + inc + ", 5)") == "Normal(6)");
    CHECK(outcome_text("left-to-right-repeat(function(closure(given)), 1, 3)") ==
          "Normal((1, 2, 3))");
    CHECK(outcome_text("left-to-right-repeat(function(closure(given)), 3, 1)") ==
          "Normal(( ))");
    CHECK(outcome_text("interleave-repeat(" + inc + ", 0, 2)") == "Normal((1, 2, 3))");
    std::string small = "function(closure(is-less(given, 3)))";
    CHECK(outcome_text("left-to-right-filter(" + small + ", 1, 5, 2, 7)") ==
          "Normal((1, 2))");
    CHECK(outcome_text("interleave-filter(" + small + ", 5, 6)") == "Normal(( ))");
    std::string add_pair = "function(closure(integer-add(tuple-elements(given))))";
    CHECK(outcome_text("fold-left(" + add_pair + ", 0, 1, 2, 3)") == "Normal(6)");
    CHECK(outcome_text("fold-left(" + add_pair + ", 41)") == "Normal(41)");
    std::string sub_pair = "function(closure(integer-subtract(tuple-elements(given))))";
    // fold-left: ((10-1)-2)-3 = 4; fold-right: 1-(2-(3-10)) = -8
    CHECK(outcome_text("fold-left(" + sub_pair + ", 10, 1, 2, 3)") == "Normal(4)");
    CHECK(outcome_text("fold-right(" + sub_pair + ", 10, 1, 2, 3)") == "Normal(-8)");
}

TEST_CASE("fold-left matches an iterative oracle") {
    fts::Gen gen(31);
    std::string sub_pair = "function(closure(integer-subtract(tuple-elements(given))))";
    for (int trial = 0; trial < 20; ++trial) {
        long acc = static_cast<long>(gen.pick(20));
        long expect = acc;
        std::string args;
        for (std::uint64_t i = 0, n = gen.pick(6); i < n; ++i) {
            long v = static_cast<long>(gen.pick(10));
            expect = expect - v;
            args += ", " + std::to_string(v);
        }
        CHECK(outcome_text("fold-left(" + sub_pair + ", " + std::to_string(acc) + args + ")") ==
              "Normal(" + std::to_string(expect) + ")");
    }
}

TEST_CASE("abrupt constructors and shorthands") {
    CHECK(outcome_text("abrupt(broken)") == "Abrupted(broken)");
    CHECK(outcome_text("abrupt(42)") == "Abrupted(42)");
    CHECK(outcome_text("fail") == "Abrupted(failed)");
    CHECK(outcome_text("break") == "Abrupted(broken)");
    CHECK(outcome_text("continue") == "Abrupted(continued)");
    CHECK(outcome_text("throw(5)") == "Abrupted(thrown(5))");
    CHECK(outcome_text("return(5)") == "Abrupted(returned(5))");
}

TEST_CASE("handle-abrupt runs the handler with the reason as given") {
    CHECK(outcome_text("handle-abrupt(abrupt(broken),"
                       " if-true-else(is-equal(given, broken), null-value, abrupt(given)))") ==
          "Normal(null-value)");
    CHECK(outcome_text("handle-abrupt(abrupt(continued),"
                       " if-true-else(is-equal(given, broken), null-value, abrupt(given)))") ==
          "Abrupted(continued)");
    CHECK(outcome_text("handle-abrupt(7, abrupt(given))") == "Normal(7)");
    // Re-raise is the identity on reasons.
    for (const char* reason : {"broken", "failed", "thrown(3)", "tuple(1, 2)", "42"}) {
        std::string re = std::string("handle-abrupt(abrupt(") + reason + "), abrupt(given))";
        CHECK(outcome_text(re) == outcome_text(std::string("abrupt(") + reason + ")"));
    }
}

TEST_CASE("finally runs its second argument exactly once on both exits") {
    std::string normal = with_counter(
        std::string("sequential(effect(finally(11, ") + kBump +
        ")), assigned(bound-value(identifier(\"c\"))))");
    CHECK(outcome_text(normal) == "Normal(1)");
    std::string abrupt = with_counter(
        std::string("sequential(effect(handle-thrown(finally(throw(1), ") + kBump +
        "), given)), assigned(bound-value(identifier(\"c\"))))");
    CHECK(outcome_text(abrupt) == "Normal(1)");
    // On a normal exit the cleanup's value is ignored and X's kept.
    CHECK(outcome_text("finally(11, 99)") == "Normal(11)");
    // A cleanup that itself terminates abruptly wins.
    CHECK(outcome_text("finally(11, abrupt(broken))") == "Abrupted(broken)");
    CHECK(outcome_text("finally(throw(1), abrupt(broken))") == "Abrupted(broken)");
}

TEST_CASE("else tries alternatives until one does not fail") {
    CHECK(outcome_text("else(fail, 7)") == "Normal(7)");
    CHECK(outcome_text("else(7, fail)") == "Normal(7)");
    CHECK(outcome_text("else(fail, fail)") == "Abrupted(failed)");  // last one decides
    CHECK(outcome_text("else(fail, fail, 9)") == "Normal(9)");
    CHECK(outcome_text("else(abrupt(broken), 7)") == "Abrupted(broken)");  // only failure is caught
    CHECK(fts::run_text("else( )").kind == RunResult::Kind::Stuck);
    // else does not roll back store effects of a failed branch.
    std::string no_rollback = with_counter(
        std::string("sequential(effect(else(sequential(") + kBump +
        ", fail), 7)), assigned(bound-value(identifier(\"c\"))))");
    CHECK(outcome_text(no_rollback) == "Normal(1)");
}

TEST_CASE("else-choice behaves like else under the default scheduler") {
    CHECK(outcome_text("else-choice(fail, 7)") == "Normal(7)");
    CHECK(outcome_text("else-choice(3)") == "Normal(3)");
    for (std::uint64_t seed = 0; seed <= 8; ++seed) {
        EngineOptions opt;
        opt.seed = seed;
        RunResult r = fts::run_text("else-choice(fail, 7, 8)", nullptr, opt);
        REQUIRE(r.kind == RunResult::Kind::Normal);
        std::string v = print_values(r.result);
        CHECK((v == "7" || v == "8"));
    }
}

TEST_CASE("check-true and checked bridge partiality to failure") {
    CHECK(outcome_text("check-true(true)") == "Normal(null-value)");
    CHECK(outcome_text("check-true(false)") == "Abrupted(failed)");
    CHECK(outcome_text("checked(7)") == "Normal(7)");
    CHECK(outcome_text("checked(integer-divide(7, 0))") == "Abrupted(failed)");
    CHECK(outcome_text("checked(head([]))") == "Abrupted(failed)");
}

TEST_CASE("throw handlers") {
    CHECK(outcome_text("handle-thrown(throw(5), integer-add(given, 1))") == "Normal(6)");
    CHECK(outcome_text("handle-thrown(7, given)") == "Normal(7)");
    CHECK(outcome_text("handle-thrown(return(5), given)") == "Abrupted(returned(5))");
    // The plain handler does not guard its own body.
    CHECK(outcome_text("handle-thrown(throw(5), throw(integer-add(given, 1)))") ==
          "Abrupted(thrown(6))");
    // handle-recursively re-wraps the handler around its own throws.
    CHECK(outcome_text("handle-recursively(throw(5),"
                       " if-true-else(is-less(given, 8), throw(integer-add(given, 1)), given))") ==
          "Normal(8)");
}

TEST_CASE("return, break, and continue handlers") {
    RunResult r = fts::run_text("handle-return(sequential(return(5), effect(print(99))))");
    CHECK(fts::outcome(r) == "Normal(5)");
    CHECK(r.output.empty());
    CHECK(outcome_text("handle-return(7)") == "Normal(7)");
    CHECK(outcome_text("handle-return(abrupt(broken))") == "Abrupted(broken)");
    CHECK(outcome_text("handle-break(while-true(true, break))") == "Normal(null-value)");
    CHECK(outcome_text("handle-break(abrupt(continued))") == "Abrupted(continued)");
    CHECK(outcome_text("handle-continue(continue)") == "Normal(null-value)");
    CHECK(outcome_text("handle-continue(null-value)") == "Normal(null-value)");
}

TEST_CASE("break skips the rest of the body and exactly one loop level") {
    RunResult r =
        fts::run_text("handle-break(while-true(true, sequential(break, effect(print(0)))))");
    CHECK(fts::outcome(r) == "Normal(null-value)");
    CHECK(r.output.empty());
}

TEST_CASE("an inner break leaves the outer loop running") {
    // The outer loop increments the counter to 2; each iteration contains an
    // inner forever-loop that breaks immediately.
    std::string program = with_counter(
        "sequential("
        "handle-break(while-true(is-less(assigned(bound-value(identifier(\"c\"))), 2),"
        " sequential(handle-break(while-true(true, break)), " +
        std::string(kBump) + "))),"
        " assigned(bound-value(identifier(\"c\"))))");
    CHECK(outcome_text(program) == "Normal(2)");
}

TEST_CASE("loops do not auto-handle continue") {
    CHECK(outcome_text("handle-break(while-true(true, continue))") == "Abrupted(continued)");
    // A translation that wraps the body in handle-continue turns continue
    // into "skip the rest of this iteration": the print never runs and the
    // loop keeps iterating.
    EngineOptions opt;
    opt.max_steps = 500;
    RunResult r = fts::run_text(
        "handle-break(while-true(true, handle-continue(sequential(continue,"
        " effect(print(1))))))",
        nullptr, opt);
    CHECK(r.kind == RunResult::Kind::Diverged);
    CHECK(r.output.empty());
}
