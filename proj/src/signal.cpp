#include "tempora/signal.hpp"

#include "tempora/errors.hpp"

namespace tempora {

Signal Signal::dense(TimeAxis axis, ValueSpace space, std::vector<Value> ticks) {
    Signal s(axis, std::move(space));
    for (std::size_t i = 0; i < ticks.size(); ++i) s.set(static_cast<Tick>(i), ticks[i]);
    return s;
}

std::optional<Value> Signal::at(Tick t) const {
    auto it = values.find(t);
    if (it == values.end()) return std::nullopt;
    return it->second;
}

void Signal::set(Tick t, Value v) {
    if (!axis.contains(t))
        throw OutOfRangeError("tick " + std::to_string(t) + " off the grid");
    if (!space.contains(v))
        throw PreconditionError("value " + v.str() + " outside the signal space");
    values[t] = std::move(v);
}

Tick Signal::last_defined() const {
    return values.empty() ? -1 : values.rbegin()->first;
}

Signal concat_signal(const Signal& w1, Tick t1, Tick t2, const Signal& w2) {
    if (!(w1.axis == w2.axis) || !(w1.space == w2.space))
        throw IncompatibleSignalsError("concatenation of signals on different axes or spaces");
    Signal out(w1.axis, w1.space);
    for (const auto& [t, v] : w1.values)
        if (t < t1) out.values.emplace(t, v);
    for (Tick t = t1; t <= w1.axis.horizon; ++t) {
        Tick src = t - t1 + t2;
        if (!w2.axis.contains(src)) continue;
        if (auto v = w2.at(src)) out.values.emplace(t, *v);
    }
    return out;
}

Signal project(const Signal& w, std::size_t component) {
    return project_range(w, component, component);
}

Signal project_range(const Signal& w, std::size_t first, std::size_t last) {
    if (!w.space.is_product())
        throw PreconditionError("projection requires a product signal space");
    const auto& comps = w.space.as_product().components;
    if (first > last || last >= comps.size())
        throw OutOfRangeError("projection component range out of bounds");
    ValueSpace target = first == last
                            ? comps[first]
                            : ValueSpace::product({comps.begin() + first, comps.begin() + last + 1});
    Signal out(w.axis, target);
    for (const auto& [t, v] : w.values) {
        const auto& tup = v.tuple();
        if (first == last)
            out.values.emplace(t, tup[first]);
        else
            out.values.emplace(t, Value(std::vector<Value>(tup.begin() + first,
                                                           tup.begin() + last + 1)));
    }
    return out;
}

Signal restrict(const Signal& w, Tick t, bool strict) {
    Signal out(w.axis, w.space);
    for (const auto& [s, v] : w.values)
        if (s < t || (!strict && s == t)) out.values.emplace(s, v);
    return out;
}

}  // namespace tempora
