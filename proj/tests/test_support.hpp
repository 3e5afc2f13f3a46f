#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "funcon/engine.hpp"
#include "funcon/format.hpp"
#include "funcon/parse.hpp"
#include "funcon/registry.hpp"

namespace fts {

using namespace funcon;

inline const Registry& reg() {
    static const Registry r = make_standard_registry();
    return r;
}

inline TermPtr parse(const std::string& text) { return parse_term(text, reg()); }

inline RunResult run_term(const TermPtr& t, EntityState* state = nullptr,
                          EngineOptions opt = {}) {
    Engine engine(reg(), opt);
    if (state) return engine.run(t, *state);
    EntityState fresh;
    return engine.run(t, fresh);
}

inline RunResult run_text(const std::string& text, EntityState* state = nullptr,
                          EngineOptions opt = {}) {
    return run_term(parse(text), state, opt);
}

// The printed result, or a tagged outcome for non-normal runs.
inline std::string outcome(const RunResult& r) {
    switch (r.kind) {
        case RunResult::Kind::Normal: return "Normal(" + print_values(r.result) + ")";
        case RunResult::Kind::Abrupted: return "Abrupted(" + print_value(r.reason) + ")";
        case RunResult::Kind::Diverged: return "Diverged";
        case RunResult::Kind::Stuck: return "Stuck(" + r.diagnostic + ")";
    }
    return "?";
}

inline std::string outcome_text(const std::string& text) { return outcome(run_text(text)); }

inline bool same_observation(const RunResult& a, const RunResult& b) {
    if (a.kind != b.kind) return false;
    if (a.result.size() != b.result.size()) return false;
    for (std::size_t i = 0; i < a.result.size(); ++i)
        if (!structural_equal(a.result[i], b.result[i])) return false;
    if (a.output.size() != b.output.size()) return false;
    for (std::size_t i = 0; i < a.output.size(); ++i)
        if (!structural_equal(a.output[i], b.output[i])) return false;
    if (a.kind == RunResult::Kind::Abrupted && !structural_equal(a.reason, b.reason))
        return false;
    return true;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file: ", path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::string data_path(const std::string& name) {
    return std::string(TEST_DATA_DIR) + "/" + name;
}

// Deterministic generator for ground values and small opaque terms.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t pick(std::uint64_t n) { return rng_() % n; }

    ValuePtr ground_value(int depth = 2) {
        switch (pick(depth > 0 ? 8 : 5)) {
            case 0: return v_bool(pick(2) == 0);
            case 1: return v_int(static_cast<long>(pick(201)) - 100);
            case 2: return v_char(static_cast<unsigned char>('a' + pick(26)));
            case 3: return v_null();
            case 4: return v_identifier(ident_text());
            case 5: {  // list / tuple
                ValueSeq args;
                for (std::uint64_t i = 0, n = pick(4); i < n; ++i)
                    args.push_back(ground_value(depth - 1));
                return v_datatype(pick(2) == 0 ? "list" : "tuple", std::move(args));
            }
            case 6: {
                ValueSeq elems;
                for (std::uint64_t i = 0, n = pick(4); i < n; ++i)
                    elems.push_back(ground_value(depth - 1));
                return v_set(std::move(elems));
            }
            default: {
                std::vector<MapEntry> entries;
                for (std::uint64_t i = 0, n = pick(3); i < n; ++i) {
                    MapEntry e;
                    e.key = v_identifier(ident_text());
                    if (pick(4) != 0) e.value.push_back(ground_value(depth - 1));
                    entries.push_back(std::move(e));
                }
                return map_of(std::move(entries));
            }
        }
    }

    // An environment mapping identifiers from a small pool to integers.
    ValuePtr environment() {
        std::vector<MapEntry> entries;
        for (std::uint64_t i = 0, n = pick(5); i < n; ++i) {
            MapEntry e;
            e.key = v_identifier(ident_text());
            e.value.push_back(v_int(static_cast<long>(pick(100))));
            entries.push_back(std::move(e));
        }
        return map_of(std::move(entries));
    }

    std::string ident_text() {
        static const char* pool[] = {"a", "b", "c", "x", "y", "z", "f", "g"};
        return pool[pick(8)];
    }

    // A term that is not a value and whose head needs a transition.
    TermPtr opaque_term(int depth = 2) {
        switch (pick(depth > 0 ? 5 : 3)) {
            case 0: return t_app("given");
            case 1: return t_app("read");
            case 2:
                return t_app("bound-value", {t_val(v_identifier(ident_text()))});
            case 3:
                return t_app("integer-add", {opaque_term(depth - 1), t_int(static_cast<long>(pick(10)))});
            default:
                return t_app("effect", {opaque_term(depth - 1)});
        }
    }

private:
    // Duplicate identifier keys are rerolled rather than rejected.
    ValuePtr map_of(std::vector<MapEntry> entries) {
        for (;;) {
            try {
                return v_map(entries);
            } catch (const std::invalid_argument&) {
                entries.pop_back();
            }
        }
    }

    std::mt19937_64 rng_;
};

}  // namespace fts
