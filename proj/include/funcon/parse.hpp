#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "funcon/registry.hpp"
#include "funcon/term.hpp"

namespace funcon {

struct ParseError : std::runtime_error {
    ParseError(std::string msg, std::size_t line, std::size_t column)
        : std::runtime_error(std::move(msg)), line(line), column(column) {}
    std::size_t line;
    std::size_t column;
};

struct SyntaxError : ParseError {
    using ParseError::ParseError;
};

struct UnknownFunconError : ParseError {
    UnknownFunconError(std::string name, std::size_t line, std::size_t column)
        : ParseError("unknown funcon: " + name, line, column), name(std::move(name)) {}
    std::string name;
};

struct ArityError : ParseError {
    ArityError(std::string name, std::size_t got, std::string expected, std::size_t line,
               std::size_t column)
        : ParseError(name + ": expected " + expected + " argument(s), got " +
                         std::to_string(got),
                     line, column),
          name(std::move(name)),
          got(got),
          expected(std::move(expected)) {}
    std::string name;
    std::size_t got;
    std::string expected;
};

// Parses the canonical term syntax. Funcon names are canonicalised through
// the registry; value-constructor applications of literal arguments fold to
// values, so print_term(parse_term(text)) is the canonical rendering.
TermPtr parse_term(const std::string& text, const Registry& registry);

}  // namespace funcon
