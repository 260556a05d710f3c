#pragma once

#include <map>
#include <optional>

#include "tempora/time.hpp"
#include "tempora/value.hpp"

namespace tempora {

/// Partial function from grid ticks into a value space. Undefined ticks are
/// simply absent from `values`.
struct Signal {
    TimeAxis axis;
    std::map<Tick, Value> values;
    ValueSpace space;

    Signal() = default;
    Signal(TimeAxis axis_, ValueSpace space_) : axis(axis_), space(std::move(space_)) {}

    /// Total signal from a dense tick-indexed vector starting at 0.
    static Signal dense(TimeAxis axis, ValueSpace space, std::vector<Value> ticks);

    std::optional<Value> at(Tick t) const;
    void set(Tick t, Value v);
    bool total() const { return static_cast<Tick>(values.size()) == axis.horizon + 1; }
    bool empty_domain() const { return values.empty(); }
    Tick last_defined() const;  // -1 for empty domain

    /// Partial-function equality on values; axes must match.
    friend bool operator==(const Signal& a, const Signal& b) {
        return a.axis == b.axis && a.values == b.values;
    }
    friend bool operator<(const Signal& a, const Signal& b) { return a.values < b.values; }
};

/// Eq-style two-case concatenation: result(t) = w1(t) for t < t1 and
/// w2(t - t1 + t2) for t >= t1. Off-grid or undefined reads yield undefined
/// ticks, which keeps the operator total on the finite grid.
Signal concat_signal(const Signal& w1, Tick t1, Tick t2, const Signal& w2);

/// Pointwise component extraction from a product-space signal.
Signal project(const Signal& w, std::size_t component);

/// Projection onto a contiguous component range [first, last], yielding a
/// pair signal when the range has more than one component.
Signal project_range(const Signal& w, std::size_t first, std::size_t last);

/// Domain intersected with [0, t] ([0, t) when strict).
Signal restrict(const Signal& w, Tick t, bool strict = false);

/// Paired internal trajectory (w, x) sharing axis and domain.
struct Trajectory {
    Signal w;
    Signal x;

    friend bool operator==(const Trajectory& a, const Trajectory& b) {
        return a.w == b.w && a.x == b.x;
    }
    friend bool operator<(const Trajectory& a, const Trajectory& b) {
        if (a.w.values != b.w.values) return a.w.values < b.w.values;
        return a.x.values < b.x.values;
    }
};

}  // namespace tempora
