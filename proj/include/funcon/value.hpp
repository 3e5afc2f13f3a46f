#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace funcon {

// Arbitrary-precision integers back the `integers` type.
using BigInt = mpz_class;

struct Term;
using TermPtr = std::shared_ptr<const Term>;

class Value;
using ValuePtr = std::shared_ptr<const Value>;

// The general result of a computation: a finite (possibly empty) sequence
// of values. The empty sequence encodes partiality.
using ValueSeq = std::vector<ValuePtr>;

// Raised by operations that require ground values (no abstractions,
// variables, or links anywhere inside).
struct NotGroundError : std::runtime_error {
    explicit NotGroundError(const std::string& what) : std::runtime_error(what) {}
};

struct BoolVal {
    bool value;
};

struct IntVal {
    BigInt value;
};

// ASCII only; code points 0..127.
struct CharVal {
    unsigned char code;
};

struct NullVal {};

// Generic algebraic-datatype representation. Covers tuples, lists,
// identifiers, thunks, functions, patterns, and the abrupt-termination
// reasons (broken, thrown(V), ...). Constructors are inert.
struct DatatypeVal {
    std::string ctor;
    ValueSeq args;
};

// Finite set of ground values; elements kept sorted and deduplicated.
struct SetVal {
    ValueSeq elems;
};

struct MapEntry {
    ValuePtr key;    // ground
    ValueSeq value;  // length 0 or 1; length 0 encodes a hidden binding
};

// Finite map from ground values to optional values; entries sorted by key.
struct MapVal {
    std::vector<MapEntry> entries;
};

// Unevaluated term captured by `abstraction`.
struct AbsVal {
    TermPtr body;
};

// A simple imperative variable: a storage location plus element type.
struct VarVal {
    std::uint64_t location;
    ValuePtr type;  // a TypeVal
};

// Set-once cut-point used to tie recursive bindings.
struct LinkVal {
    std::uint64_t id;
};

// Types are first-class values; a type expression is a type-constructor
// name applied to argument values (types, or integers for bounded(M,N)).
struct TypeVal {
    std::string ctor;
    ValueSeq args;
};

class Value {
public:
    using Node = std::variant<BoolVal, IntVal, CharVal, NullVal, DatatypeVal,
                              SetVal, MapVal, AbsVal, VarVal, LinkVal, TypeVal>;

    explicit Value(Node node) : node_(std::move(node)) {}

    const Node& node() const { return node_; }

    template <typename T>
    const T* get_if() const {
        return std::get_if<T>(&node_);
    }

private:
    Node node_;
};

// --- constructors -----------------------------------------------------------

ValuePtr v_bool(bool b);
ValuePtr v_int(BigInt n);
ValuePtr v_int(long n);
ValuePtr v_char(unsigned char code);
ValuePtr v_null();
ValuePtr v_datatype(std::string ctor, ValueSeq args);
ValuePtr v_abs(TermPtr body);
ValuePtr v_var(std::uint64_t location, ValuePtr type);
ValuePtr v_link(std::uint64_t id);
ValuePtr v_type(std::string ctor, ValueSeq args = {});

// Sorts and deduplicates; throws NotGroundError on non-ground elements.
ValuePtr v_set(ValueSeq elems);

// Entries need not be sorted; keys must be ground and distinct.
// Later duplicates are rejected with std::invalid_argument.
ValuePtr v_map(std::vector<MapEntry> entries);

ValuePtr v_empty_map();

// Strings are lists of characters; identifiers wrap a string.
ValuePtr v_string(const std::string& text);
ValuePtr v_identifier(const std::string& text);

// --- queries ----------------------------------------------------------------

const BoolVal* as_bool(const ValuePtr& v);
const IntVal* as_int(const ValuePtr& v);
const MapVal* as_map(const ValuePtr& v);
const SetVal* as_set(const ValuePtr& v);
const DatatypeVal* as_datatype(const ValuePtr& v, const char* ctor = nullptr);
const TypeVal* as_type(const ValuePtr& v);
const VarVal* as_var(const ValuePtr& v);
const AbsVal* as_abs(const ValuePtr& v);
bool is_null(const ValuePtr& v);

// If v is a list of characters, returns its text.
bool string_text(const ValuePtr& v, std::string& out);
// If v is an identifier value, returns its text.
bool identifier_text(const ValuePtr& v, std::string& out);

// True iff v contains no abstraction, variable, or link.
bool is_ground(const ValuePtr& v);

// Total order on ground values; throws NotGroundError otherwise.
// Used for the canonical representation of sets and maps.
int compare_ground(const ValuePtr& a, const ValuePtr& b);

// Extensional equality on ground values; throws NotGroundError otherwise.
bool value_equal(const ValuePtr& a, const ValuePtr& b);

// Total structural equality (abstractions by body structure, variables by
// location, links by id). Not a semantic notion; used by tests and printing.
bool structural_equal(const ValuePtr& a, const ValuePtr& b);
bool structural_equal_seq(const ValueSeq& a, const ValueSeq& b);

// Membership of v in the type t (t must be a TypeVal).
bool type_member(const ValuePtr& v, const ValuePtr& t);

// --- map helpers ------------------------------------------------------------

// Left-biased union: entries of high win over low.
ValuePtr map_override(const ValuePtr& high, const ValuePtr& low);
// The entry sequence for key, or nullptr when the key is absent.
const ValueSeq* map_find(const MapVal& m, const ValuePtr& key);
// Disjoint union; returns nullptr when domains overlap.
ValuePtr map_disjoint_union(const ValuePtr& a, const ValuePtr& b);

}  // namespace funcon
