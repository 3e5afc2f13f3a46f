#include "funcon/registry.hpp"

#include <sstream>

#include "funcon/format.hpp"

namespace funcon {

ParamSpec strict_par(ValuePtr type, Mult mult) { return ParamSpec{true, std::move(type), mult}; }
ParamSpec lazy_par(Mult mult) { return ParamSpec{false, nullptr, mult}; }

int FunconDef::effective_min_args() const {
    if (min_args >= 0) return min_args;
    int n = 0;
    for (const auto& p : params)
        if (p.mult == Mult::One) ++n;
    return n;
}

int FunconDef::effective_max_args() const {
    if (max_args >= 0) return max_args;
    int n = 0;
    for (const auto& p : params) {
        if (p.mult == Mult::Star) return -1;
        ++n;
    }
    return n;
}

const ParamSpec* FunconDef::arg_param(std::size_t index, std::size_t nargs) const {
    if (params.empty()) return nullptr;
    std::size_t star = params.size();
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (params[i].mult == Mult::Star) {
            star = i;
            break;
        }
    }
    if (star == params.size()) {
        // No star: positional, greedy from the left.
        return index < params.size() ? &params[index] : &params.back();
    }
    std::size_t after = params.size() - star - 1;
    if (index < star) return &params[index];
    if (nargs >= after && index >= nargs - after) {
        std::size_t from_end = nargs - index;  // 1-based from the right
        return &params[params.size() - from_end];
    }
    return &params[star];
}

bool FunconDef::arg_strict(std::size_t index, std::size_t nargs) const {
    const ParamSpec* p = arg_param(index, nargs);
    return p ? p->strict : true;
}

std::optional<BoundParams> bind_params(const FunconDef& def, const ValueSeq& flat,
                                       std::string* diagnostic) {
    auto fail = [&](const std::string& msg) -> std::optional<BoundParams> {
        if (diagnostic) *diagnostic = def.name + ": " + msg;
        return std::nullopt;
    };

    std::size_t n = flat.size();
    // Minimum number of values required by the parameters after position i.
    std::vector<std::size_t> min_after(def.params.size() + 1, 0);
    for (std::size_t i = def.params.size(); i-- > 0;) {
        min_after[i] = min_after[i + 1] + (def.params[i].mult == Mult::One ? 1 : 0);
    }

    BoundParams out;
    out.by_param.resize(def.params.size());
    std::size_t pos = 0;
    for (std::size_t i = 0; i < def.params.size(); ++i) {
        const ParamSpec& p = def.params[i];
        std::size_t take = 0;
        std::size_t remaining = n - pos;
        switch (p.mult) {
            case Mult::One:
                if (remaining < 1 + min_after[i + 1]) return fail("too few argument values");
                take = 1;
                break;
            case Mult::Optional:
                take = remaining > min_after[i + 1] ? 1 : 0;
                break;
            case Mult::Star:
                take = remaining - min_after[i + 1];
                break;
        }
        for (std::size_t k = 0; k < take; ++k) {
            const ValuePtr& v = flat[pos + k];
            if (p.type && !type_member(v, p.type)) {
                std::ostringstream msg;
                msg << "argument value " << print_value(v) << " is not in "
                    << print_value(p.type);
                return fail(msg.str());
            }
            out.by_param[i].push_back(v);
        }
        pos += take;
    }
    if (pos != n) return fail("too many argument values");
    return out;
}

bool is_valid_funcon_name(const std::string& name) {
    // [a-z][a-z0-9]*(-[a-z0-9]+)*
    if (name.empty() || name[0] < 'a' || name[0] > 'z') return false;
    bool prev_dash = false;
    for (std::size_t i = 1; i < name.size(); ++i) {
        char c = name[i];
        if (c == '-') {
            if (prev_dash) return false;
            prev_dash = true;
            continue;
        }
        bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
        if (!ok) return false;
        prev_dash = false;
    }
    return !prev_dash;
}

void Registry::register_funcon(FunconDef def) {
    if (!is_valid_funcon_name(def.name))
        throw RegistryError("invalid funcon name: " + def.name);
    if (defs_.count(def.name) || aliases_.count(def.name)) throw DuplicateNameError(def.name);
    defs_.emplace(def.name, std::move(def));
}

void Registry::register_alias(const std::string& alias, const std::string& target) {
    if (!is_valid_funcon_name(alias)) throw RegistryError("invalid funcon name: " + alias);
    if (defs_.count(alias) || aliases_.count(alias)) throw DuplicateNameError(alias);
    if (!defs_.count(target)) throw RegistryError("alias target is not registered: " + target);
    aliases_.emplace(alias, target);
}

const FunconDef* Registry::lookup(const std::string& name) const {
    auto it = defs_.find(name);
    if (it != defs_.end()) return &it->second;
    auto al = aliases_.find(name);
    if (al != aliases_.end()) return lookup(al->second);
    return nullptr;
}

std::string Registry::canonical(const std::string& name) const {
    if (defs_.count(name)) return name;
    auto al = aliases_.find(name);
    if (al != aliases_.end()) return al->second;
    return {};
}

bool Registry::known(const std::string& name) const {
    return defs_.count(name) != 0 || aliases_.count(name) != 0;
}

ValuePtr Registry::construct(const std::string& ctor, const ValueSeq& args) const {
    const FunconDef* def = lookup(ctor);
    if (!def) throw RegistryError("unknown funcon: " + ctor);
    if (!def->fold) throw RegistryError(ctor + " is not a value constructor");
    int mn = def->effective_min_args();
    int mx = def->effective_max_args();
    if (static_cast<int>(args.size()) < mn || (mx >= 0 && static_cast<int>(args.size()) > mx)) {
        std::ostringstream msg;
        msg << ctor << ": arity mismatch, got " << args.size();
        throw RegistryError(msg.str());
    }
    auto v = def->fold(args);
    if (!v) throw RegistryError(ctor + ": arguments do not fit the constructor");
    return *v;
}

Registry make_standard_registry() {
    Registry r;
    register_data_funcons(r);
    register_flow_funcons(r);
    register_context_funcons(r);
    return r;
}

}  // namespace funcon
