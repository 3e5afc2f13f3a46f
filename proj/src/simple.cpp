#include "funcon/simple.hpp"

#include <cctype>
#include <utility>

#include "funcon/parse.hpp"

namespace funcon::simple {

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
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) bump();
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
            current_ = Token{Token::Kind::Ident, std::move(text), current_.line, current_.column};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string text;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                text.push_back(take_char());
            current_ = Token{Token::Kind::Int, std::move(text), current_.line, current_.column};
            return;
        }
        static const std::string singles = "(){};=";
        if (singles.find(c) != std::string::npos) {
            current_ = Token{Token::Kind::Punct, std::string(1, take_char()), current_.line,
                             current_.column};
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

class SimpleParser {
public:
    explicit SimpleParser(const std::string& src) : lex_(src) {}

    Program parse() {
        Program p;
        while (at_keyword("var") || at_keyword("function")) p.declarations.push_back(decl());
        p.entry = expression();
        expect_punct(";");
        if (lex_.current().kind != Token::Kind::End) fail("trailing input after entry expression");
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

    Decl decl() {
        Decl d;
        d.line = lex_.current().line;
        d.column = lex_.current().column;
        if (at_keyword("var")) {
            lex_.take();
            d.kind = Decl::Kind::Var;
            d.name = expect_ident();
            expect_punct("=");
            d.init = expression();
            expect_punct(";");
            return d;
        }
        lex_.take();  // function
        d.kind = Decl::Kind::Function;
        d.name = expect_ident();
        expect_punct("(");
        d.parameter = expect_ident();
        expect_punct(")");
        d.body = block();
        return d;
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
        auto s = std::make_shared<Stmt>();
        s->line = lex_.current().line;
        s->column = lex_.current().column;
        if (at_punct("{")) {
            s->kind = Stmt::Kind::Block;
            s->body = block();
            return s;
        }
        if (at_keyword("return")) {
            lex_.take();
            s->kind = Stmt::Kind::Return;
            s->expr = expression();
            expect_punct(";");
            return s;
        }
        if (lex_.current().kind == Token::Kind::Ident) {
            // Lookahead distinguishes `id = exp ;` from an expression statement.
            Token id = lex_.take();
            if (at_punct("=")) {
                lex_.take();
                s->kind = Stmt::Kind::Assign;
                s->name = id.text;
                s->expr = expression();
                expect_punct(";");
                return s;
            }
            auto base = std::make_shared<Exp>();
            base->kind = Exp::Kind::Id;
            base->name = id.text;
            base->line = id.line;
            base->column = id.column;
            s->kind = Stmt::Kind::ExpStmt;
            s->expr = call_suffix(base);
            expect_punct(";");
            return s;
        }
        s->kind = Stmt::Kind::ExpStmt;
        s->expr = expression();
        expect_punct(";");
        return s;
    }

    ExpPtr expression() { return call_suffix(primary()); }

    ExpPtr primary() {
        if (lex_.current().kind == Token::Kind::Int) {
            Token t = lex_.take();
            auto e = std::make_shared<Exp>();
            e->kind = Exp::Kind::IntLit;
            e->number = BigInt(t.text, 10);
            e->line = t.line;
            e->column = t.column;
            return e;
        }
        if (lex_.current().kind == Token::Kind::Ident) {
            Token t = lex_.take();
            auto e = std::make_shared<Exp>();
            e->kind = Exp::Kind::Id;
            e->name = t.text;
            e->line = t.line;
            e->column = t.column;
            return e;
        }
        if (at_punct("(")) {
            lex_.take();
            ExpPtr e = expression();
            expect_punct(")");
            return e;
        }
        fail("expected an expression");
    }

    ExpPtr call_suffix(ExpPtr base) {
        while (at_punct("(")) {
            lex_.take();
            ExpPtr arg = expression();
            expect_punct(")");
            auto call = std::make_shared<Exp>();
            call->kind = Exp::Kind::Apply;
            call->fun = base;
            call->arg = arg;
            call->line = base->line;
            call->column = base->column;
            base = call;
        }
        return base;
    }

    Lexer lex_;
};

TermPtr id_term(const std::string& name) { return t_val(v_identifier(name)); }

}  // namespace

Program parse_simple(const std::string& source) { return SimpleParser(source).parse(); }

// rval: identifiers denote simple variables, so their r-value is the
// assigned value; applications are call-by-value function applications.
TermPtr translate_rval(const ExpPtr& e) {
    switch (e->kind) {
        case Exp::Kind::Id:
            return t_app("assigned", {t_app("bound-value", {id_term(e->name)})});
        case Exp::Kind::IntLit:
            return t_val(v_int(e->number));
        case Exp::Kind::Apply:
            return t_app("apply", {translate_rval(e->fun), translate_rval(e->arg)});
    }
    throw TranslationError("unknown expression construct");
}

TermPtr translate_stmts(const std::vector<StmtPtr>& body) {
    std::vector<TermPtr> parts;
    for (const auto& s : body) {
        switch (s->kind) {
            case Stmt::Kind::Block:
                parts.push_back(translate_stmts(s->body));
                break;
            case Stmt::Kind::Return:
                parts.push_back(t_app("return", {translate_rval(s->expr)}));
                break;
            case Stmt::Kind::ExpStmt:
                parts.push_back(t_app("effect", {translate_rval(s->expr)}));
                break;
            case Stmt::Kind::Assign:
                parts.push_back(t_app("assign", {t_app("bound-value", {id_term(s->name)}),
                                                 translate_rval(s->expr)}));
                break;
            default:
                throw TranslationError("unknown statement construct");
        }
    }
    if (parts.empty()) return t_null();
    if (parts.size() == 1) return parts[0];
    return t_app("sequential", std::move(parts));
}

// return statements abruptly terminate the block; a stray return value
// would otherwise leak out of sequential, so the block result is null.
TermPtr translate_decl(const Decl& d, const TranslateOptions& options) {
    if (d.kind == Decl::Kind::Var) {
        return t_app("bind-value",
                     {id_term(d.name), t_app("allocate-initialised-variable",
                                             {t_val(v_type("values")), translate_rval(d.init)})});
    }
    const char* capture = options.bindings == Bindings::Static ? "closure" : "abstraction";
    TermPtr param_decl =
        t_app("bind-value", {id_term(d.parameter),
                             t_app("allocate-initialised-variable",
                                   {t_val(v_type("values")), t_app("given")})});
    TermPtr body = t_app("scope",
                         {param_decl, t_app("handle-return", {translate_stmts(d.body)})});
    TermPtr fun = t_app("function", {t_app(capture, {body})});
    return t_app("bind-value",
                 {id_term(d.name),
                  t_app("allocate-initialised-variable",
                        {t_val(v_type("functions", {v_type("values"), v_type("values")})), fun})});
}

TermPtr translate_simple(const Program& program, const TranslateOptions& options) {
    TermPtr entry = translate_rval(program.entry);
    if (program.declarations.empty()) return entry;

    // Declarations are mutually recursive: every declared name is tied
    // through a link, so function bodies may refer to names declared later.
    ValueSeq ids;
    for (const auto& d : program.declarations) ids.push_back(v_identifier(d.name));
    TermPtr decls;
    for (std::size_t i = program.declarations.size(); i-- > 0;) {
        TermPtr d = translate_decl(program.declarations[i], options);
        decls = decls ? t_app("accumulate", {d, decls}) : d;
    }
    TermPtr recursive = t_app("recursive", {t_val(v_set(std::move(ids))), decls});
    return t_app("scope", {recursive, entry});
}

}  // namespace funcon::simple
