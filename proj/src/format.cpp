#include "funcon/format.hpp"

#include <sstream>

namespace funcon {

namespace {

void put_escaped_char(std::ostringstream& out, unsigned char c, char quote) {
    switch (c) {
        case '\n': out << "\\n"; return;
        case '\t': out << "\\t"; return;
        case '\r': out << "\\r"; return;
        case '\\': out << "\\\\"; return;
        default: break;
    }
    if (c == quote) {
        out << '\\' << quote;
        return;
    }
    if (c < 0x20 || c >= 0x7f) {
        static const char* hex = "0123456789abcdef";
        out << "\\x" << hex[c >> 4] << hex[c & 0xf];
        return;
    }
    out << static_cast<char>(c);
}

void print_value_to(std::ostringstream& out, const ValuePtr& v);
void print_term_to(std::ostringstream& out, const TermPtr& t);

void print_args(std::ostringstream& out, const ValueSeq& args) {
    out << '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out << ", ";
        print_value_to(out, args[i]);
    }
    out << ')';
}

void print_value_to(std::ostringstream& out, const ValuePtr& v) {
    struct Visitor {
        std::ostringstream& out;
        void operator()(const BoolVal& b) const { out << (b.value ? "true" : "false"); }
        void operator()(const IntVal& i) const { out << i.value.get_str(); }
        void operator()(const CharVal& c) const {
            out << '\'';
            put_escaped_char(out, c.code, '\'');
            out << '\'';
        }
        void operator()(const NullVal&) const { out << "null-value"; }
        void operator()(const DatatypeVal& d) const {
            if (d.ctor == "list") {
                bool all_chars = !d.args.empty();
                for (const auto& a : d.args)
                    if (!a->get_if<CharVal>()) {
                        all_chars = false;
                        break;
                    }
                if (all_chars) {
                    out << '"';
                    for (const auto& a : d.args)
                        put_escaped_char(out, a->get_if<CharVal>()->code, '"');
                    out << '"';
                    return;
                }
                out << '[';
                for (std::size_t i = 0; i < d.args.size(); ++i) {
                    if (i) out << ", ";
                    print_value_to(out, d.args[i]);
                }
                out << ']';
                return;
            }
            if (d.args.empty()) {
                // The 0-tuple keeps its parentheses; other nullary
                // constructors print as bare names.
                out << (d.ctor == "tuple" ? "tuple( )" : d.ctor);
                return;
            }
            out << d.ctor;
            print_args(out, d.args);
        }
        void operator()(const SetVal& s) const {
            if (s.elems.empty()) {
                out << "set( )";
                return;
            }
            out << '{';
            for (std::size_t i = 0; i < s.elems.size(); ++i) {
                if (i) out << ", ";
                print_value_to(out, s.elems[i]);
            }
            out << '}';
        }
        void operator()(const MapVal& m) const {
            if (m.entries.empty()) {
                out << "{ }";
                return;
            }
            out << '{';
            for (std::size_t i = 0; i < m.entries.size(); ++i) {
                if (i) out << ", ";
                print_value_to(out, m.entries[i].key);
                out << " |-> ";
                if (m.entries[i].value.empty())
                    out << "( )";
                else
                    print_value_to(out, m.entries[i].value[0]);
            }
            out << '}';
        }
        void operator()(const AbsVal& a) const {
            out << "abstraction(";
            print_term_to(out, a.body);
            out << ')';
        }
        void operator()(const VarVal& var) const {
            out << "variable(#" << var.location << ": ";
            print_value_to(out, var.type);
            out << ')';
        }
        void operator()(const LinkVal& l) const { out << "link(#" << l.id << ')'; }
        void operator()(const TypeVal& t) const {
            out << t.ctor;
            if (!t.args.empty()) print_args(out, t.args);
        }
    };
    std::visit(Visitor{out}, v->node());
}

void print_term_to(std::ostringstream& out, const TermPtr& t) {
    if (const auto* v = t->get_if<Term::Val>()) {
        print_value_to(out, v->value);
        return;
    }
    if (const auto* a = t->get_if<Term::App>()) {
        out << a->head;
        if (!a->args.empty()) {
            out << '(';
            for (std::size_t i = 0; i < a->args.size(); ++i) {
                if (i) out << ", ";
                print_term_to(out, a->args[i]);
            }
            out << ')';
        }
        return;
    }
    const auto* s = t->get_if<Term::Seq>();
    if (s->items.empty()) {
        out << "( )";
        return;
    }
    out << '(';
    for (std::size_t i = 0; i < s->items.size(); ++i) {
        if (i) out << ", ";
        print_term_to(out, s->items[i]);
    }
    out << ')';
}

}  // namespace

std::string print_value(const ValuePtr& v) {
    std::ostringstream out;
    print_value_to(out, v);
    return out.str();
}

std::string print_term(const TermPtr& t) {
    std::ostringstream out;
    print_term_to(out, t);
    return out.str();
}

std::string print_values(const ValueSeq& vs) {
    if (vs.size() == 1) return print_value(vs[0]);
    std::ostringstream out;
    if (vs.empty()) {
        out << "( )";
        return out.str();
    }
    out << '(';
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out << ", ";
        print_value_to(out, vs[i]);
    }
    out << ')';
    return out.str();
}

}  // namespace funcon
