#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "funcon/term.hpp"

namespace funcon::imp {

struct TranslationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { IntLit, BoolLit, Var, Not, Add, Sub, Mul, Div, Less, LessEq, Eq, And };
    Kind kind;
    BigInt number;        // IntLit
    bool truth = false;   // BoolLit
    std::string name;     // Var
    ExprPtr lhs, rhs;     // operators (Not uses lhs only)
    std::size_t line = 0, column = 0;
};

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Stmt {
    enum class Kind { Skip, Assign, VarDecl, If, While, Break, Block };
    Kind kind;
    std::string name;            // Assign / VarDecl target
    ExprPtr expr;                // Assign / VarDecl rhs, If / While condition
    std::vector<StmtPtr> body;   // Block statements, If then-branch, While body
    std::vector<StmtPtr> orelse; // If else-branch
    std::size_t line = 0, column = 0;
};

// A program is a statement sequence.
struct Program {
    std::vector<StmtPtr> statements;
};

// Throws funcon::SyntaxError with line/column on malformed input.
Program parse_imp(const std::string& source);

struct TranslateOptions {
    // The shipped while-loop translation handles break via handle-abrupt.
    // Disabling it reproduces the naive translation, where a break abruptly
    // terminates every enclosing loop (test-only).
    bool handle_break = true;
};

// Compositional translation to funcon terms.
TermPtr translate_imp(const Program& program, const TranslateOptions& options = {});

}  // namespace funcon::imp
