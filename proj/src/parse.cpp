#include "funcon/parse.hpp"

#include <cctype>
#include <optional>
#include <utility>
#include <vector>

namespace funcon {

namespace {

class Parser {
public:
    Parser(const std::string& text, const Registry& registry)
        : text_(text), registry_(registry) {}

    TermPtr parse() {
        skip_ws();
        TermPtr t = term();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input after term");
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        auto [line, col] = position();
        throw SyntaxError(msg, line, col);
    }

    std::pair<std::size_t, std::size_t> position() const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        return {line, col};
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool eat_maps_to() {
        skip_ws();
        if (text_.compare(pos_, 3, "|->") == 0) {
            pos_ += 3;
            return true;
        }
        return false;
    }

    TermPtr term() {
        char c = peek();
        if (c == '\0') fail("unexpected end of input");
        if (c == '(') return sequence();
        if (c == '[') return list_literal();
        if (c == '{') return map_or_set_literal();
        if (c == '\'') return t_val(v_char(char_literal()));
        if (c == '"') return t_val(v_string(string_literal()));
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c)))
            return t_val(integer_literal());
        if (c >= 'a' && c <= 'z') return application();
        fail("unexpected character");
    }

    TermPtr sequence() {
        expect('(');
        if (eat(')')) return t_seq({});
        std::vector<TermPtr> items;
        items.push_back(term());
        while (eat(',')) items.push_back(term());
        expect(')');
        if (items.size() == 1) return items[0];  // plain grouping
        return t_seq(std::move(items));
    }

    TermPtr list_literal() {
        expect('[');
        std::vector<TermPtr> items;
        if (!eat(']')) {
            items.push_back(term());
            while (eat(',')) items.push_back(term());
            expect(']');
        }
        ValueSeq values;
        for (const auto& it : items) {
            const auto* v = it->get_if<Term::Val>();
            if (!v) return t_app("list", std::move(items));
            values.push_back(v->value);
        }
        return t_val(v_datatype("list", std::move(values)));
    }

    TermPtr map_or_set_literal() {
        expect('{');
        if (eat('}')) return t_val(v_empty_map());
        TermPtr first = term();
        if (eat_maps_to()) return map_literal(std::move(first));
        std::vector<TermPtr> items;
        items.push_back(std::move(first));
        while (eat(',')) items.push_back(term());
        expect('}');
        ValueSeq values;
        for (const auto& it : items) {
            const auto* v = it->get_if<Term::Val>();
            if (!v) return t_app("set", std::move(items));
            values.push_back(v->value);
        }
        try {
            return t_val(v_set(std::move(values)));
        } catch (const NotGroundError&) {
            fail("set elements must be ground values");
        }
    }

    TermPtr map_literal(TermPtr first_key) {
        std::vector<std::pair<TermPtr, TermPtr>> entries;  // value nullptr = ( )
        entries.emplace_back(std::move(first_key), entry_value());
        while (eat(',')) {
            TermPtr key = term();
            if (!eat_maps_to()) fail("expected '|->' in map entry");
            entries.emplace_back(std::move(key), entry_value());
        }
        expect('}');

        bool literal = true;
        for (const auto& [k, v] : entries) {
            if (!k->get_if<Term::Val>()) literal = false;
            if (v && !v->get_if<Term::Val>()) literal = false;
        }
        if (literal) {
            std::vector<MapEntry> out;
            for (const auto& [k, v] : entries) {
                MapEntry e;
                e.key = k->get_if<Term::Val>()->value;
                if (v) e.value.push_back(v->get_if<Term::Val>()->value);
                out.push_back(std::move(e));
            }
            try {
                return t_val(v_map(std::move(out)));
            } catch (const NotGroundError&) {
                fail("map keys must be ground values");
            } catch (const std::invalid_argument&) {
                fail("duplicate map key");
            }
        }
        std::vector<TermPtr> pairs;
        for (auto& [k, v] : entries) {
            std::vector<TermPtr> pair;
            pair.push_back(std::move(k));
            if (v) pair.push_back(std::move(v));
            pairs.push_back(t_app("tuple", std::move(pair)));
        }
        return t_app("map", std::move(pairs));
    }

    // A map-entry value: either a term or ( ) for a hidden binding.
    TermPtr entry_value() {
        TermPtr t = term();
        if (const auto* s = t->get_if<Term::Seq>(); s && s->items.empty()) return nullptr;
        return t;
    }

    ValuePtr integer_literal() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected digits");
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        return v_int(BigInt(text_.substr(start, pos_ - start), 10));
    }

    unsigned char escaped_char(char quote) {
        if (pos_ >= text_.size()) fail("unterminated character escape");
        char c = text_[pos_++];
        if (c != '\\') {
            if (static_cast<unsigned char>(c) >= 0x80) fail("non-ASCII character");
            return static_cast<unsigned char>(c);
        }
        if (pos_ >= text_.size()) fail("unterminated character escape");
        char e = text_[pos_++];
        switch (e) {
            case 'n': return '\n';
            case 't': return '\t';
            case 'r': return '\r';
            case '\\': return '\\';
            case '\'': return '\'';
            case '"': return '"';
            case 'x': {
                if (pos_ + 1 >= text_.size()) fail("truncated \\x escape");
                auto hex = [&](char h) -> int {
                    if (h >= '0' && h <= '9') return h - '0';
                    if (h >= 'a' && h <= 'f') return h - 'a' + 10;
                    if (h >= 'A' && h <= 'F') return h - 'A' + 10;
                    fail("invalid hex digit in \\x escape");
                };
                int hi = hex(text_[pos_++]);
                int lo = hex(text_[pos_++]);
                int code = hi * 16 + lo;
                if (code > 0x7f) fail("non-ASCII \\x escape");
                return static_cast<unsigned char>(code);
            }
            default: fail("unknown escape sequence");
        }
        (void)quote;
        return 0;
    }

    unsigned char char_literal() {
        expect('\'');
        if (pos_ < text_.size() && text_[pos_] == '\'') fail("empty character literal");
        unsigned char c = escaped_char('\'');
        if (pos_ >= text_.size() || text_[pos_] != '\'') fail("unterminated character literal");
        ++pos_;
        return c;
    }

    std::string string_literal() {
        expect('"');
        std::string out;
        while (pos_ < text_.size() && text_[pos_] != '"') {
            out.push_back(static_cast<char>(escaped_char('"')));
        }
        if (pos_ >= text_.size()) fail("unterminated string literal");
        ++pos_;
        return out;
    }

    std::string name_token() {
        skip_ws();
        std::size_t start = pos_;
        auto word_char = [&](char c) {
            return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
        };
        while (pos_ < text_.size() && word_char(text_[pos_])) ++pos_;
        // Hyphen joins name parts; a hyphen must be followed by a word char.
        while (pos_ + 1 < text_.size() && text_[pos_] == '-' && word_char(text_[pos_ + 1])) {
            ++pos_;
            while (pos_ < text_.size() && word_char(text_[pos_])) ++pos_;
        }
        return text_.substr(start, pos_ - start);
    }

    // Funcons with an unevaluated parameter take positionally counted
    // arguments. Fully strict funcons receive a flattened value sequence,
    // so an argument term may contribute any number of values; the check
    // then compares possible value counts against the signature.
    void check_arity(const FunconDef& def, const std::vector<TermPtr>& args) {
        int mn = def.effective_min_args();
        int mx = def.effective_max_args();
        bool positional = false;
        for (const auto& p : def.params)
            if (!p.strict) positional = true;

        bool ok;
        if (positional) {
            int n = static_cast<int>(args.size());
            ok = n >= mn && (mx < 0 || n <= mx);
        } else {
            int lo = 0;
            bool unbounded = false;
            for (const auto& a : args) {
                if (a->get_if<Term::Val>()) {
                    ++lo;
                } else if (const auto* s = a->get_if<Term::Seq>()) {
                    for (const auto& item : s->items) {
                        if (item->get_if<Term::Val>())
                            ++lo;
                        else
                            unbounded = true;
                    }
                } else {
                    unbounded = true;
                }
            }
            int hi = unbounded ? -1 : lo;
            ok = (mx < 0 || lo <= mx) && (hi < 0 || hi >= mn);
        }
        if (!ok) {
            auto [line, col] = position();
            std::string expected = mx < 0 ? std::to_string(mn) + "+"
                                 : mn == mx ? std::to_string(mn)
                                            : std::to_string(mn) + ".." + std::to_string(mx);
            throw ArityError(def.name, args.size(), expected, line, col);
        }
    }

    TermPtr application() {
        std::string name = name_token();
        if (name == "true") return t_bool(true);
        if (name == "false") return t_bool(false);

        const FunconDef* def = registry_.lookup(name);
        if (!def) {
            auto [line, col] = position();
            throw UnknownFunconError(name, line, col);
        }
        std::vector<TermPtr> args;
        if (eat('(')) {
            if (!eat(')')) {
                args.push_back(term());
                while (eat(',')) args.push_back(term());
                expect(')');
            }
        }
        check_arity(*def, args);
        if (def->quote) {
            if (auto v = def->quote(args)) return t_val(*v);
        }
        if (def->fold) {
            ValueSeq flat;
            bool all_values = true;
            for (const auto& a : args) {
                if (!term_values(a, flat)) {
                    all_values = false;
                    break;
                }
            }
            if (all_values) {
                if (auto v = def->fold(flat)) return t_val(*v);
            }
        }
        return t_app(def->name, std::move(args));
    }

    const std::string& text_;
    const Registry& registry_;
    std::size_t pos_ = 0;
};

}  // namespace

TermPtr parse_term(const std::string& text, const Registry& registry) {
    return Parser(text, registry).parse();
}

}  // namespace funcon
