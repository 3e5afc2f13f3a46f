#pragma once

#include <string>
#include <variant>
#include <vector>

#include "funcon/value.hpp"

namespace funcon {

// The unit of execution: a funcon name applied to argument terms, a value,
// or a sequence of terms. A Seq never directly contains a Seq.
struct Term {
    struct Val {
        ValuePtr value;
    };
    struct App {
        std::string head;  // canonical funcon name
        std::vector<TermPtr> args;
    };
    struct Seq {
        std::vector<TermPtr> items;
    };

    using Node = std::variant<Val, App, Seq>;
    Node node;

    explicit Term(Node n) : node(std::move(n)) {}

    template <typename T>
    const T* get_if() const {
        return std::get_if<T>(&node);
    }
};

TermPtr t_val(ValuePtr v);
TermPtr t_app(std::string head, std::vector<TermPtr> args = {});
// Flattens nested Seq items and collapses singletons to the item itself.
TermPtr t_seq(std::vector<TermPtr> items);

TermPtr t_null();
TermPtr t_bool(bool b);
TermPtr t_int(long n);

// If t is a value or a sequence of values, the flattened value sequence.
bool term_values(const TermPtr& t, ValueSeq& out);
bool is_value_term(const TermPtr& t);

// A value-normal term carrying exactly the given values.
TermPtr t_of_values(const ValueSeq& vs);

bool term_equal(const TermPtr& a, const TermPtr& b);

}  // namespace funcon
