#include "funcon/term.hpp"

#include <utility>

namespace funcon {

TermPtr t_val(ValuePtr v) {
    return std::make_shared<Term>(Term::Node(Term::Val{std::move(v)}));
}

TermPtr t_app(std::string head, std::vector<TermPtr> args) {
    return std::make_shared<Term>(Term::Node(Term::App{std::move(head), std::move(args)}));
}

TermPtr t_seq(std::vector<TermPtr> items) {
    std::vector<TermPtr> flat;
    flat.reserve(items.size());
    for (auto& it : items) {
        if (const auto* s = it->get_if<Term::Seq>()) {
            flat.insert(flat.end(), s->items.begin(), s->items.end());
        } else {
            flat.push_back(std::move(it));
        }
    }
    if (flat.size() == 1) return flat[0];
    return std::make_shared<Term>(Term::Node(Term::Seq{std::move(flat)}));
}

TermPtr t_null() { return t_val(v_null()); }
TermPtr t_bool(bool b) { return t_val(v_bool(b)); }
TermPtr t_int(long n) { return t_val(v_int(n)); }

bool term_values(const TermPtr& t, ValueSeq& out) {
    if (const auto* v = t->get_if<Term::Val>()) {
        out.push_back(v->value);
        return true;
    }
    if (const auto* s = t->get_if<Term::Seq>()) {
        for (const auto& it : s->items) {
            const auto* v = it->get_if<Term::Val>();
            if (!v) return false;
        }
        for (const auto& it : s->items) out.push_back(it->get_if<Term::Val>()->value);
        return true;
    }
    return false;
}

bool is_value_term(const TermPtr& t) {
    ValueSeq ignored;
    return term_values(t, ignored);
}

TermPtr t_of_values(const ValueSeq& vs) {
    if (vs.size() == 1) return t_val(vs[0]);
    std::vector<TermPtr> items;
    items.reserve(vs.size());
    for (const auto& v : vs) items.push_back(t_val(v));
    return std::make_shared<Term>(Term::Node(Term::Seq{std::move(items)}));
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->node.index() != b->node.index()) return false;
    if (const auto* va = a->get_if<Term::Val>()) {
        return structural_equal(va->value, b->get_if<Term::Val>()->value);
    }
    if (const auto* aa = a->get_if<Term::App>()) {
        const auto* ab = b->get_if<Term::App>();
        if (aa->head != ab->head || aa->args.size() != ab->args.size()) return false;
        for (std::size_t i = 0; i < aa->args.size(); ++i)
            if (!term_equal(aa->args[i], ab->args[i])) return false;
        return true;
    }
    const auto* sa = a->get_if<Term::Seq>();
    const auto* sb = b->get_if<Term::Seq>();
    if (sa->items.size() != sb->items.size()) return false;
    for (std::size_t i = 0; i < sa->items.size(); ++i)
        if (!term_equal(sa->items[i], sb->items[i])) return false;
    return true;
}

}  // namespace funcon
