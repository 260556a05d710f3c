#include "tempora/value.hpp"

#include <algorithm>
#include <set>

#include "tempora/errors.hpp"

namespace tempora {

std::string Value::str() const {
    if (is_symbol()) return symbol();
    if (is_rational()) return rational().str();
    std::string out = "(";
    for (std::size_t i = 0; i < tuple().size(); ++i) {
        if (i) out += ",";
        out += tuple()[i].str();
    }
    return out + ")";
}

bool operator==(const Value& a, const Value& b) { return a.data_ == b.data_; }

bool operator<(const Value& a, const Value& b) {
    if (a.data_.index() != b.data_.index()) return a.data_.index() < b.data_.index();
    if (a.is_symbol()) return a.symbol() < b.symbol();
    if (a.is_rational()) return a.rational() < b.rational();
    return std::lexicographical_compare(a.tuple().begin(), a.tuple().end(),
                                        b.tuple().begin(), b.tuple().end());
}

ValueSpace::ValueSpace(FiniteAlphabet a) : kind(std::move(a)) {
    const auto& syms = std::get<FiniteAlphabet>(kind).symbols;
    if (syms.empty()) throw PreconditionError("finite alphabet must be nonempty");
    std::set<std::string> seen(syms.begin(), syms.end());
    if (seen.size() != syms.size())
        throw PreconditionError("finite alphabet has duplicate symbols");
}

ValueSpace::ValueSpace(RationalInterval i) : kind(i) {
    if (i.hi < i.lo) throw PreconditionError("rational interval with hi < lo");
}

ValueSpace::ValueSpace(ProductSpace p) : kind(std::move(p)) {}

bool ValueSpace::contains(const Value& v) const {
    if (is_alphabet()) {
        if (!v.is_symbol()) return false;
        const auto& syms = as_alphabet().symbols;
        return std::find(syms.begin(), syms.end(), v.symbol()) != syms.end();
    }
    if (is_interval()) {
        if (!v.is_rational()) return false;
        return as_interval().lo <= v.rational() && v.rational() <= as_interval().hi;
    }
    const auto& comps = as_product().components;
    if (!v.is_tuple() || v.tuple().size() != comps.size()) return false;
    for (std::size_t i = 0; i < comps.size(); ++i)
        if (!comps[i].contains(v.tuple()[i])) return false;
    return true;
}

bool operator==(const ValueSpace& a, const ValueSpace& b) {
    if (a.kind.index() != b.kind.index()) return false;
    if (a.is_alphabet()) return a.as_alphabet().symbols == b.as_alphabet().symbols;
    if (a.is_interval())
        return a.as_interval().lo == b.as_interval().lo &&
               a.as_interval().hi == b.as_interval().hi;
    return a.as_product().components == b.as_product().components;
}

}  // namespace tempora
