#include "funcon/imp.hpp"

#include <cctype>
#include <optional>
#include <utility>

#include "funcon/parse.hpp"
#include "funcon_builders.hpp"

namespace funcon::imp {

namespace {

struct Token {
    enum class Kind { Ident, Int, Punct, End };
    Kind kind;
    std::string text;
    std::size_t line, column;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& current() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() &&
               std::isspace(static_cast<unsigned char>(src_[pos_])))
            bump();
        current_.line = line_;
        current_.column = column_;
        if (pos_ >= src_.size()) {
            current_.kind = Token::Kind::End;
            current_.text.clear();
            return;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string text;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                text.push_back(take_char());
            current_.kind = Token::Kind::Ident;
            current_.text = std::move(text);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string text;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                text.push_back(take_char());
            current_.kind = Token::Kind::Int;
            current_.text = std::move(text);
            return;
        }
        for (const char* two : {"<=", "==", "&&"}) {
            if (src_.compare(pos_, 2, two) == 0) {
                current_.kind = Token::Kind::Punct;
                current_.text = two;
                bump();
                bump();
                return;
            }
        }
        static const std::string singles = "+-*/<!=(){};";
        if (singles.find(c) != std::string::npos) {
            current_.kind = Token::Kind::Punct;
            current_.text = std::string(1, take_char());
            return;
        }
        throw SyntaxError("unexpected character", line_, column_);
    }

    char take_char() {
        char c = src_[pos_];
        bump();
        return c;
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1, column_ = 1;
    Token current_{Token::Kind::End, "", 1, 1};
};

class ImpParser {
public:
    explicit ImpParser(const std::string& src) : lex_(src) {}

    Program parse() {
        Program p;
        while (lex_.current().kind != Token::Kind::End) p.statements.push_back(statement());
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) {
        throw SyntaxError(msg, lex_.current().line, lex_.current().column);
    }

    bool at_punct(const char* text) const {
        return lex_.current().kind == Token::Kind::Punct && lex_.current().text == text;
    }
    bool at_keyword(const char* word) const {
        return lex_.current().kind == Token::Kind::Ident && lex_.current().text == word;
    }
    void expect_punct(const char* text) {
        if (!at_punct(text)) fail(std::string("expected '") + text + "'");
        lex_.take();
    }

    std::string expect_ident() {
        if (lex_.current().kind != Token::Kind::Ident) fail("expected an identifier");
        return lex_.take().text;
    }

    std::vector<StmtPtr> block() {
        expect_punct("{");
        std::vector<StmtPtr> stmts;
        while (!at_punct("}")) {
            if (lex_.current().kind == Token::Kind::End) fail("unterminated block");
            stmts.push_back(statement());
        }
        lex_.take();
        return stmts;
    }

    StmtPtr statement() {
        auto stmt = std::make_shared<Stmt>();
        stmt->line = lex_.current().line;
        stmt->column = lex_.current().column;
        if (at_keyword("skip")) {
            lex_.take();
            expect_punct(";");
            stmt->kind = Stmt::Kind::Skip;
            return stmt;
        }
        if (at_keyword("break")) {
            lex_.take();
            expect_punct(";");
            stmt->kind = Stmt::Kind::Break;
            return stmt;
        }
        if (at_keyword("var")) {
            lex_.take();
            stmt->kind = Stmt::Kind::VarDecl;
            stmt->name = expect_ident();
            expect_punct("=");
            stmt->expr = expression();
            expect_punct(";");
            return stmt;
        }
        if (at_keyword("if")) {
            lex_.take();
            stmt->kind = Stmt::Kind::If;
            expect_punct("(");
            stmt->expr = expression();
            expect_punct(")");
            stmt->body = block();
            if (at_keyword("else")) {
                lex_.take();
                stmt->orelse = block();
            }
            return stmt;
        }
        if (at_keyword("while")) {
            lex_.take();
            stmt->kind = Stmt::Kind::While;
            expect_punct("(");
            stmt->expr = expression();
            expect_punct(")");
            stmt->body = block();
            return stmt;
        }
        if (at_punct("{")) {
            stmt->kind = Stmt::Kind::Block;
            stmt->body = block();
            return stmt;
        }
        if (lex_.current().kind == Token::Kind::Ident) {
            stmt->kind = Stmt::Kind::Assign;
            stmt->name = expect_ident();
            expect_punct("=");
            stmt->expr = expression();
            expect_punct(";");
            return stmt;
        }
        fail("expected a statement");
    }

    std::shared_ptr<Expr> make_expr(Expr::Kind kind, const Token& at) {
        auto e = std::make_shared<Expr>();
        e->kind = kind;
        e->line = at.line;
        e->column = at.column;
        return e;
    }

    ExprPtr expression() { return and_expr(); }

    ExprPtr and_expr() {
        ExprPtr lhs = compare_expr();
        while (at_punct("&&")) {
            Token op = lex_.take();
            auto e = make_expr(Expr::Kind::And, op);
            e->lhs = lhs;
            e->rhs = compare_expr();
            lhs = e;
        }
        return lhs;
    }

    ExprPtr compare_expr() {
        ExprPtr lhs = add_expr();
        if (at_punct("<=") || at_punct("<") || at_punct("==")) {
            Token op = lex_.take();
            Expr::Kind kind = op.text == "<=" ? Expr::Kind::LessEq
                              : op.text == "<" ? Expr::Kind::Less
                                               : Expr::Kind::Eq;
            auto e = make_expr(kind, op);
            e->lhs = lhs;
            e->rhs = add_expr();
            return e;
        }
        return lhs;
    }

    ExprPtr add_expr() {
        ExprPtr lhs = mul_expr();
        while (at_punct("+") || at_punct("-")) {
            Token op = lex_.take();
            auto e = make_expr(op.text == "+" ? Expr::Kind::Add : Expr::Kind::Sub, op);
            e->lhs = lhs;
            e->rhs = mul_expr();
            lhs = e;
        }
        return lhs;
    }

    ExprPtr mul_expr() {
        ExprPtr lhs = unary_expr();
        while (at_punct("*") || at_punct("/")) {
            Token op = lex_.take();
            auto e = make_expr(op.text == "*" ? Expr::Kind::Mul : Expr::Kind::Div, op);
            e->lhs = lhs;
            e->rhs = unary_expr();
            lhs = e;
        }
        return lhs;
    }

    ExprPtr unary_expr() {
        if (at_punct("!")) {
            Token op = lex_.take();
            auto e = make_expr(Expr::Kind::Not, op);
            e->lhs = unary_expr();
            return e;
        }
        return atom();
    }

    ExprPtr atom() {
        if (lex_.current().kind == Token::Kind::Int) {
            Token t = lex_.take();
            auto e = make_expr(Expr::Kind::IntLit, t);
            e->number = BigInt(t.text, 10);
            return e;
        }
        if (at_keyword("true") || at_keyword("false")) {
            Token t = lex_.take();
            auto e = make_expr(Expr::Kind::BoolLit, t);
            e->truth = t.text == "true";
            return e;
        }
        if (lex_.current().kind == Token::Kind::Ident) {
            Token t = lex_.take();
            auto e = make_expr(Expr::Kind::Var, t);
            e->name = t.text;
            return e;
        }
        if (at_punct("(")) {
            lex_.take();
            ExprPtr e = expression();
            expect_punct(")");
            return e;
        }
        fail("expected an expression");
    }

    Lexer lex_;
};

// --- translation -------------------------------------------------------------

enum class ExprSort { Integer, Boolean };

struct Translator {
    const TranslateOptions& options;

    [[noreturn]] void error(const std::string& msg, std::size_t line, std::size_t col) {
        throw TranslationError(msg + " (line " + std::to_string(line) + ", column " +
                               std::to_string(col) + ")");
    }

    std::pair<TermPtr, ExprSort> expr(const ExprPtr& e) {
        auto intarg = [&](const ExprPtr& x) {
            auto [t, sort] = expr(x);
            if (sort != ExprSort::Integer)
                error("integer expression expected", x->line, x->column);
            return t;
        };
        auto boolarg = [&](const ExprPtr& x) {
            auto [t, sort] = expr(x);
            if (sort != ExprSort::Boolean)
                error("boolean expression expected", x->line, x->column);
            return t;
        };
        switch (e->kind) {
            case Expr::Kind::IntLit:
                return {t_val(v_int(e->number)), ExprSort::Integer};
            case Expr::Kind::BoolLit:
                return {t_bool(e->truth), ExprSort::Boolean};
            case Expr::Kind::Var:
                return {t_app("assigned", {t_app("bound-value", {t_val(v_identifier(e->name))})}),
                        ExprSort::Integer};
            case Expr::Kind::Not:
                return {t_app("not", {boolarg(e->lhs)}), ExprSort::Boolean};
            case Expr::Kind::And:
                return {t_app("and", {boolarg(e->lhs), boolarg(e->rhs)}), ExprSort::Boolean};
            case Expr::Kind::Add:
                return {t_app("integer-add", {intarg(e->lhs), intarg(e->rhs)}),
                        ExprSort::Integer};
            case Expr::Kind::Sub:
                return {t_app("integer-subtract", {intarg(e->lhs), intarg(e->rhs)}),
                        ExprSort::Integer};
            case Expr::Kind::Mul:
                return {t_app("integer-multiply", {intarg(e->lhs), intarg(e->rhs)}),
                        ExprSort::Integer};
            case Expr::Kind::Div:
                // Division by zero is outside the funcon's domain; checked
                // turns the missing value into failure.
                return {t_app("checked",
                              {t_app("integer-divide", {intarg(e->lhs), intarg(e->rhs)})}),
                        ExprSort::Integer};
            case Expr::Kind::Less:
                return {t_app("is-less", {intarg(e->lhs), intarg(e->rhs)}), ExprSort::Boolean};
            case Expr::Kind::LessEq:
                return {t_app("is-less-or-equal", {intarg(e->lhs), intarg(e->rhs)}),
                        ExprSort::Boolean};
            case Expr::Kind::Eq:
                return {t_app("is-equal", {intarg(e->lhs), intarg(e->rhs)}), ExprSort::Boolean};
        }
        error("unknown expression", e->line, e->column);
    }

    TermPtr bool_expr(const ExprPtr& e) {
        auto [t, sort] = expr(e);
        if (sort != ExprSort::Boolean)
            error("condition must be a boolean expression", e->line, e->column);
        return t;
    }

    TermPtr rvalue(const ExprPtr& e) { return expr(e).first; }

    TermPtr statements(const std::vector<StmtPtr>& stmts, std::size_t from, int loop_depth) {
        std::vector<TermPtr> parts;
        for (std::size_t i = from; i < stmts.size(); ++i) {
            const Stmt& s = *stmts[i];
            if (s.kind == Stmt::Kind::VarDecl) {
                TermPtr decl = t_app(
                    "bind-value",
                    {t_val(v_identifier(s.name)),
                     t_app("allocate-initialised-variable",
                           {t_val(v_type("values")), rvalue(s.expr)})});
                parts.push_back(t_app("scope", {decl, statements(stmts, i + 1, loop_depth)}));
                return parts.size() == 1 ? parts[0] : t_app("sequential", std::move(parts));
            }
            parts.push_back(statement(*stmts[i], loop_depth));
        }
        if (parts.empty()) return t_null();
        if (parts.size() == 1) return parts[0];
        return t_app("sequential", std::move(parts));
    }

    TermPtr statement(const Stmt& s, int loop_depth) {
        switch (s.kind) {
            case Stmt::Kind::Skip:
                return t_null();
            case Stmt::Kind::Break:
                if (loop_depth == 0)
                    error("break outside of a loop", s.line, s.column);
                return t_app("abrupt", {t_val(v_broken())});
            case Stmt::Kind::Assign:
                return t_app("assign", {t_app("bound-value", {t_val(v_identifier(s.name))}),
                                        rvalue(s.expr)});
            case Stmt::Kind::If:
                return t_app("if-true-else",
                             {bool_expr(s.expr), statements(s.body, 0, loop_depth),
                              statements(s.orelse, 0, loop_depth)});
            case Stmt::Kind::While: {
                TermPtr loop = t_app("while-true",
                                     {bool_expr(s.expr), statements(s.body, 0, loop_depth + 1)});
                if (!options.handle_break) return loop;
                TermPtr handler = t_app(
                    "if-true-else",
                    {t_app("is-equal", {t_app("given"), t_val(v_broken())}), t_null(),
                     t_app("abrupt", {t_app("given")})});
                return t_app("handle-abrupt", {loop, handler});
            }
            case Stmt::Kind::Block:
                return statements(s.body, 0, loop_depth);
            case Stmt::Kind::VarDecl:
                break;  // handled by statements()
            default:
                break;
        }
        error("unexpected statement", s.line, s.column);
    }
};

}  // namespace

Program parse_imp(const std::string& source) { return ImpParser(source).parse(); }

TermPtr translate_imp(const Program& program, const TranslateOptions& options) {
    Translator tr{options};
    return tr.statements(program.statements, 0, 0);
}

}  // namespace funcon::imp
