#include "tempora/time.hpp"

#include <algorithm>

#include "tempora/errors.hpp"

namespace tempora {

TimeAxis::TimeAxis(Rational step_, Tick horizon_, AxisKind kind_)
    : step(step_), horizon(horizon_), kind(kind_) {
    if (!(Rational(0) < step)) throw PreconditionError("time axis step must be positive");
    if (horizon < 1) throw PreconditionError("time axis horizon must be >= 1");
}

TimeScaleTransformation::TimeScaleTransformation(std::map<Tick, Tick> values)
    : values_(std::move(values)) {
    Tick prev = -1;
    bool first = true;
    for (const auto& [t, k] : values_) {
        if (k < 0)
            throw InvalidConcatenationError("negative external tick at internal tick " +
                                            std::to_string(t));
        if (!first && k < prev)
            throw InvalidConcatenationError("non-monotone at internal tick " +
                                            std::to_string(t));
        prev = k;
        first = false;
        reach_ = std::max(reach_, k);
    }
    // Surjectivity onto {0..reach}: monotone maps can only skip values, so
    // it suffices to scan for jumps of more than one.
    Tick seen = -1;
    for (const auto& [t, k] : values_) {
        if (k > seen + 1)
            throw InvalidConcatenationError("external tick " + std::to_string(seen + 1) +
                                            " has no preimage (gap before internal tick " +
                                            std::to_string(t) + ")");
        seen = std::max(seen, k);
    }
}

TimeScaleTransformation TimeScaleTransformation::identity(Tick horizon) {
    std::map<Tick, Tick> v;
    for (Tick t = 0; t <= horizon; ++t) v[t] = t;
    return TimeScaleTransformation(std::move(v));
}

std::optional<Tick> TimeScaleTransformation::up(Tick t) const {
    auto it = values_.find(t);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::vector<Tick> TimeScaleTransformation::inverse(Tick k) const {
    if (k < 0 || k > reach_)
        throw OutOfRangeError("external tick " + std::to_string(k) +
                              " beyond external_reach " + std::to_string(reach_));
    std::vector<Tick> out;
    for (const auto& [t, v] : values_)
        if (v == k) out.push_back(t);
    return out;
}

std::vector<Tick> inverse_tst(const TimeScaleTransformation& tau, Tick k) {
    return tau.inverse(k);
}

TimeScaleTransformation concat_tst(const TimeScaleTransformation& tau1, Tick t1,
                                   Tick t2, const TimeScaleTransformation& tau2,
                                   TimeOffset c, Tick internal_horizon,
                                   Tick external_horizon, bool* truncated) {
    auto k1 = tau1.up(t1);
    auto k2 = tau2.up(t2);
    if (!k1 || !k2)
        throw PreconditionError("concatenation cut ticks must lie in the tau domains");
    if (c.value != *k1 - *k2)
        throw PreconditionError("offset mismatch: c = " + std::to_string(c.value) +
                                " but k1 - k2 = " + std::to_string(*k1 - *k2));
    std::map<Tick, Tick> out;
    for (const auto& [t, k] : tau1.values())
        if (t < t1) out[t] = k;
    for (Tick t = t1; t <= internal_horizon; ++t) {
        Tick src = t - t1 + t2;
        if (src > internal_horizon) {  // shifted read leaves the grid
            if (truncated) *truncated = true;
            break;
        }
        if (auto k = tau2.up(src)) {
            if (*k + c.value > external_horizon) {
                if (truncated) *truncated = true;
                continue;
            }
            out[t] = *k + c.value;
        }
    }
    return TimeScaleTransformation(std::move(out));
}

}  // namespace tempora
