#include "funcon/value.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "funcon/term.hpp"

namespace funcon {

namespace {

template <typename T>
ValuePtr make(T node) {
    return std::make_shared<Value>(Value::Node(std::move(node)));
}

}  // namespace

ValuePtr v_bool(bool b) { return make(BoolVal{b}); }
ValuePtr v_int(BigInt n) { return make(IntVal{std::move(n)}); }
ValuePtr v_int(long n) { return make(IntVal{BigInt(n)}); }
ValuePtr v_char(unsigned char code) { return make(CharVal{code}); }

ValuePtr v_null() {
    static const ValuePtr instance = make(NullVal{});
    return instance;
}

ValuePtr v_datatype(std::string ctor, ValueSeq args) {
    return make(DatatypeVal{std::move(ctor), std::move(args)});
}

ValuePtr v_abs(TermPtr body) { return make(AbsVal{std::move(body)}); }

ValuePtr v_var(std::uint64_t location, ValuePtr type) {
    return make(VarVal{location, std::move(type)});
}

ValuePtr v_link(std::uint64_t id) { return make(LinkVal{id}); }

ValuePtr v_type(std::string ctor, ValueSeq args) {
    return make(TypeVal{std::move(ctor), std::move(args)});
}

ValuePtr v_set(ValueSeq elems) {
    for (const auto& e : elems) {
        if (!is_ground(e)) throw NotGroundError("set element is not a ground value");
    }
    std::sort(elems.begin(), elems.end(),
              [](const ValuePtr& a, const ValuePtr& b) { return compare_ground(a, b) < 0; });
    elems.erase(std::unique(elems.begin(), elems.end(),
                            [](const ValuePtr& a, const ValuePtr& b) {
                                return compare_ground(a, b) == 0;
                            }),
                elems.end());
    return make(SetVal{std::move(elems)});
}

ValuePtr v_map(std::vector<MapEntry> entries) {
    for (const auto& e : entries) {
        if (!is_ground(e.key)) throw NotGroundError("map key is not a ground value");
        if (e.value.size() > 1)
            throw std::invalid_argument("map entry holds more than one value");
    }
    std::sort(entries.begin(), entries.end(), [](const MapEntry& a, const MapEntry& b) {
        return compare_ground(a.key, b.key) < 0;
    });
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (compare_ground(entries[i - 1].key, entries[i].key) == 0)
            throw std::invalid_argument("duplicate map key");
    }
    return make(MapVal{std::move(entries)});
}

ValuePtr v_empty_map() {
    static const ValuePtr instance = make(MapVal{});
    return instance;
}

ValuePtr v_string(const std::string& text) {
    ValueSeq chars;
    chars.reserve(text.size());
    for (unsigned char c : text) chars.push_back(v_char(c));
    return v_datatype("list", std::move(chars));
}

ValuePtr v_identifier(const std::string& text) {
    return v_datatype("identifier", {v_string(text)});
}

const BoolVal* as_bool(const ValuePtr& v) { return v ? v->get_if<BoolVal>() : nullptr; }
const IntVal* as_int(const ValuePtr& v) { return v ? v->get_if<IntVal>() : nullptr; }
const MapVal* as_map(const ValuePtr& v) { return v ? v->get_if<MapVal>() : nullptr; }
const SetVal* as_set(const ValuePtr& v) { return v ? v->get_if<SetVal>() : nullptr; }
const TypeVal* as_type(const ValuePtr& v) { return v ? v->get_if<TypeVal>() : nullptr; }
const VarVal* as_var(const ValuePtr& v) { return v ? v->get_if<VarVal>() : nullptr; }
const AbsVal* as_abs(const ValuePtr& v) { return v ? v->get_if<AbsVal>() : nullptr; }

const DatatypeVal* as_datatype(const ValuePtr& v, const char* ctor) {
    if (!v) return nullptr;
    const auto* d = v->get_if<DatatypeVal>();
    if (d && ctor && d->ctor != ctor) return nullptr;
    return d;
}

bool is_null(const ValuePtr& v) { return v && v->get_if<NullVal>() != nullptr; }

bool string_text(const ValuePtr& v, std::string& out) {
    const auto* d = as_datatype(v, "list");
    if (!d) return false;
    std::string text;
    for (const auto& c : d->args) {
        const auto* ch = c->get_if<CharVal>();
        if (!ch) return false;
        text.push_back(static_cast<char>(ch->code));
    }
    out = std::move(text);
    return true;
}

bool identifier_text(const ValuePtr& v, std::string& out) {
    const auto* d = as_datatype(v, "identifier");
    if (!d || d->args.size() != 1) return false;
    return string_text(d->args[0], out);
}

bool is_ground(const ValuePtr& v) {
    struct Visitor {
        bool operator()(const BoolVal&) const { return true; }
        bool operator()(const IntVal&) const { return true; }
        bool operator()(const CharVal&) const { return true; }
        bool operator()(const NullVal&) const { return true; }
        bool operator()(const TypeVal&) const { return true; }
        bool operator()(const AbsVal&) const { return false; }
        bool operator()(const VarVal&) const { return false; }
        bool operator()(const LinkVal&) const { return false; }
        bool operator()(const DatatypeVal& d) const {
            for (const auto& a : d.args)
                if (!is_ground(a)) return false;
            return true;
        }
        bool operator()(const SetVal&) const {
            return true;  // elements ground by construction
        }
        bool operator()(const MapVal& m) const {
            // Keys are ground by construction; entry values may hold links
            // (recursive environments), which makes the map non-ground.
            for (const auto& e : m.entries)
                for (const auto& x : e.value)
                    if (!is_ground(x)) return false;
            return true;
        }
    };
    return std::visit(Visitor{}, v->node());
}

namespace {

int kind_rank(const Value& v) {
    struct Visitor {
        int operator()(const BoolVal&) const { return 0; }
        int operator()(const IntVal&) const { return 1; }
        int operator()(const CharVal&) const { return 2; }
        int operator()(const NullVal&) const { return 3; }
        int operator()(const DatatypeVal&) const { return 4; }
        int operator()(const SetVal&) const { return 5; }
        int operator()(const MapVal&) const { return 6; }
        int operator()(const TypeVal&) const { return 7; }
        int operator()(const AbsVal&) const { return -1; }
        int operator()(const VarVal&) const { return -1; }
        int operator()(const LinkVal&) const { return -1; }
    };
    return std::visit(Visitor{}, v.node());
}

int compare_seq(const ValueSeq& a, const ValueSeq& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = compare_ground(a[i], b[i]);
        if (c != 0) return c;
    }
    return 0;
}

template <typename T>
int cmp3(const T& a, const T& b) {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

}  // namespace

int compare_ground(const ValuePtr& a, const ValuePtr& b) {
    int ra = kind_rank(*a);
    int rb = kind_rank(*b);
    if (ra < 0 || rb < 0)
        throw NotGroundError("comparison requires ground values");
    if (ra != rb) return ra < rb ? -1 : 1;
    switch (ra) {
        case 0:
            return cmp3(a->get_if<BoolVal>()->value, b->get_if<BoolVal>()->value);
        case 1:
            return cmp(a->get_if<IntVal>()->value, b->get_if<IntVal>()->value);
        case 2:
            return cmp3(a->get_if<CharVal>()->code, b->get_if<CharVal>()->code);
        case 3:
            return 0;
        case 4: {
            const auto* da = a->get_if<DatatypeVal>();
            const auto* db = b->get_if<DatatypeVal>();
            if (int c = cmp3(da->ctor, db->ctor)) return c;
            return compare_seq(da->args, db->args);
        }
        case 5:
            return compare_seq(a->get_if<SetVal>()->elems, b->get_if<SetVal>()->elems);
        case 6: {
            const auto& ea = a->get_if<MapVal>()->entries;
            const auto& eb = b->get_if<MapVal>()->entries;
            if (ea.size() != eb.size()) return ea.size() < eb.size() ? -1 : 1;
            for (std::size_t i = 0; i < ea.size(); ++i) {
                if (int c = compare_ground(ea[i].key, eb[i].key)) return c;
                if (int c = compare_seq(ea[i].value, eb[i].value)) return c;
            }
            return 0;
        }
        case 7: {
            const auto* ta = a->get_if<TypeVal>();
            const auto* tb = b->get_if<TypeVal>();
            if (int c = cmp3(ta->ctor, tb->ctor)) return c;
            return compare_seq(ta->args, tb->args);
        }
        default:
            return 0;
    }
}

bool value_equal(const ValuePtr& a, const ValuePtr& b) {
    return compare_ground(a, b) == 0;
}

bool structural_equal_seq(const ValueSeq& a, const ValueSeq& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!structural_equal(a[i], b[i])) return false;
    return true;
}

bool structural_equal(const ValuePtr& a, const ValuePtr& b) {
    if (a.get() == b.get()) return true;
    if (a->node().index() != b->node().index()) return false;
    struct Visitor {
        const Value& other;
        bool operator()(const BoolVal& x) const { return x.value == other.get_if<BoolVal>()->value; }
        bool operator()(const IntVal& x) const { return x.value == other.get_if<IntVal>()->value; }
        bool operator()(const CharVal& x) const { return x.code == other.get_if<CharVal>()->code; }
        bool operator()(const NullVal&) const { return true; }
        bool operator()(const DatatypeVal& x) const {
            const auto* y = other.get_if<DatatypeVal>();
            return x.ctor == y->ctor && structural_equal_seq(x.args, y->args);
        }
        bool operator()(const SetVal& x) const {
            return structural_equal_seq(x.elems, other.get_if<SetVal>()->elems);
        }
        bool operator()(const MapVal& x) const {
            const auto* y = other.get_if<MapVal>();
            if (x.entries.size() != y->entries.size()) return false;
            for (std::size_t i = 0; i < x.entries.size(); ++i) {
                if (!structural_equal(x.entries[i].key, y->entries[i].key)) return false;
                if (!structural_equal_seq(x.entries[i].value, y->entries[i].value)) return false;
            }
            return true;
        }
        bool operator()(const AbsVal& x) const {
            return term_equal(x.body, other.get_if<AbsVal>()->body);
        }
        bool operator()(const VarVal& x) const {
            const auto* y = other.get_if<VarVal>();
            return x.location == y->location && structural_equal(x.type, y->type);
        }
        bool operator()(const LinkVal& x) const { return x.id == other.get_if<LinkVal>()->id; }
        bool operator()(const TypeVal& x) const {
            const auto* y = other.get_if<TypeVal>();
            return x.ctor == y->ctor && structural_equal_seq(x.args, y->args);
        }
    };
    return std::visit(Visitor{*b}, a->node());
}

bool type_member(const ValuePtr& v, const ValuePtr& t) {
    const auto* ty = as_type(t);
    if (!ty) throw std::invalid_argument("type_member: second argument is not a type");
    const std::string& c = ty->ctor;
    if (c == "values") return true;
    if (c == "booleans") return as_bool(v) != nullptr;
    if (c == "integers") return as_int(v) != nullptr;
    if (c == "naturals") {
        const auto* i = as_int(v);
        return i && sgn(i->value) >= 0;
    }
    if (c == "bounded") {
        const auto* i = as_int(v);
        if (!i || ty->args.size() != 2) return false;
        const auto* lo = as_int(ty->args[0]);
        const auto* hi = as_int(ty->args[1]);
        return lo && hi && i->value >= lo->value && i->value <= hi->value;
    }
    if (c == "characters") return v->get_if<CharVal>() != nullptr;
    if (c == "strings") {
        std::string ignored;
        return string_text(v, ignored);
    }
    if (c == "null-type") return is_null(v);
    if (c == "identifiers") {
        std::string ignored;
        return identifier_text(v, ignored);
    }
    if (c == "environments") {
        const auto* m = as_map(v);
        if (!m) return false;
        for (const auto& e : m->entries) {
            std::string ignored;
            if (!identifier_text(e.key, ignored)) return false;
        }
        return true;
    }
    if (c == "tuples") {
        const auto* d = as_datatype(v, "tuple");
        if (!d || d->args.size() != ty->args.size()) return false;
        for (std::size_t i = 0; i < d->args.size(); ++i)
            if (!type_member(d->args[i], ty->args[i])) return false;
        return true;
    }
    if (c == "lists") {
        const auto* d = as_datatype(v, "list");
        if (!d) return false;
        if (ty->args.size() == 1) {
            for (const auto& x : d->args)
                if (!type_member(x, ty->args[0])) return false;
        }
        return true;
    }
    if (c == "sets") {
        const auto* s = as_set(v);
        if (!s) return false;
        if (ty->args.size() == 1) {
            for (const auto& x : s->elems)
                if (!type_member(x, ty->args[0])) return false;
        }
        return true;
    }
    if (c == "maps") {
        const auto* m = as_map(v);
        if (!m) return false;
        for (const auto& e : m->entries) {
            if (!ty->args.empty() && !type_member(e.key, ty->args[0])) return false;
            if (ty->args.size() > 1)
                for (const auto& x : e.value)
                    if (!type_member(x, ty->args[1])) return false;
        }
        return true;
    }
    if (c == "abstractions") return as_abs(v) != nullptr;
    if (c == "thunks") {
        const auto* d = as_datatype(v, "thunk");
        return d && d->args.size() == 1 && as_abs(d->args[0]);
    }
    if (c == "functions") {
        const auto* d = as_datatype(v, "function");
        return d && d->args.size() == 1 && as_abs(d->args[0]);
    }
    if (c == "patterns") {
        const auto* d = as_datatype(v, "pattern");
        return d && d->args.size() == 1 && as_abs(d->args[0]);
    }
    if (c == "value-types") return as_type(v) != nullptr;
    return false;
}

ValuePtr map_override(const ValuePtr& high, const ValuePtr& low) {
    const auto* h = as_map(high);
    const auto* l = as_map(low);
    if (!h || !l) throw std::invalid_argument("map_override: arguments must be maps");
    std::vector<MapEntry> out;
    out.reserve(h->entries.size() + l->entries.size());
    std::size_t i = 0, j = 0;
    while (i < h->entries.size() && j < l->entries.size()) {
        int c = compare_ground(h->entries[i].key, l->entries[j].key);
        if (c < 0) {
            out.push_back(h->entries[i++]);
        } else if (c > 0) {
            out.push_back(l->entries[j++]);
        } else {
            out.push_back(h->entries[i++]);
            ++j;
        }
    }
    for (; i < h->entries.size(); ++i) out.push_back(h->entries[i]);
    for (; j < l->entries.size(); ++j) out.push_back(l->entries[j]);
    return std::make_shared<Value>(Value::Node(MapVal{std::move(out)}));
}

const ValueSeq* map_find(const MapVal& m, const ValuePtr& key) {
    std::size_t lo = 0, hi = m.entries.size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        int c = compare_ground(m.entries[mid].key, key);
        if (c == 0) return &m.entries[mid].value;
        if (c < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    return nullptr;
}

ValuePtr map_disjoint_union(const ValuePtr& a, const ValuePtr& b) {
    const auto* ma = as_map(a);
    const auto* mb = as_map(b);
    if (!ma || !mb) throw std::invalid_argument("map_disjoint_union: arguments must be maps");
    std::vector<MapEntry> out;
    out.reserve(ma->entries.size() + mb->entries.size());
    std::size_t i = 0, j = 0;
    while (i < ma->entries.size() && j < mb->entries.size()) {
        int c = compare_ground(ma->entries[i].key, mb->entries[j].key);
        if (c == 0) return nullptr;
        out.push_back(c < 0 ? ma->entries[i++] : mb->entries[j++]);
    }
    for (; i < ma->entries.size(); ++i) out.push_back(ma->entries[i]);
    for (; j < mb->entries.size(); ++j) out.push_back(mb->entries[j]);
    return std::make_shared<Value>(Value::Node(MapVal{std::move(out)}));
}

}  // namespace funcon
