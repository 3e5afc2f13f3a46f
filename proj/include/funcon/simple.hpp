#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "funcon/term.hpp"

namespace funcon::simple {

struct TranslationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Exp;
using ExpPtr = std::shared_ptr<const Exp>;

struct Exp {
    enum class Kind { Id, IntLit, Apply };
    Kind kind;
    std::string name;    // Id
    BigInt number;       // IntLit
    ExpPtr fun, arg;     // Apply
    std::size_t line = 0, column = 0;
};

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Stmt {
    enum class Kind { Block, Return, ExpStmt, Assign };
    Kind kind;
    std::string name;           // Assign target
    ExpPtr expr;                // Return / ExpStmt / Assign rhs
    std::vector<StmtPtr> body;  // Block
    std::size_t line = 0, column = 0;
};

struct Decl {
    enum class Kind { Var, Function };
    Kind kind;
    std::string name;
    std::string parameter;      // Function (exactly one)
    ExpPtr init;                // Var
    std::vector<StmtPtr> body;  // Function block
    std::size_t line = 0, column = 0;
};

// A program is a declaration list followed by an entry expression.
struct Program {
    std::vector<Decl> declarations;
    ExpPtr entry;
};

Program parse_simple(const std::string& source);

enum class Bindings {
    Static,   // function bodies capture declaration-site bindings (closure)
    Dynamic,  // function bodies see call-site bindings (abstraction)
};

struct TranslateOptions {
    Bindings bindings = Bindings::Static;
};

TermPtr translate_rval(const ExpPtr& e);
TermPtr translate_stmts(const std::vector<StmtPtr>& body);
TermPtr translate_decl(const Decl& d, const TranslateOptions& options = {});
TermPtr translate_simple(const Program& program, const TranslateOptions& options = {});

}  // namespace funcon::simple
