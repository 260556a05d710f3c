#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "tempora/rational.hpp"

namespace tempora {

using Tick = int;

enum class AxisKind { Internal, External };

/// Finite rational time grid. Ticks are the integer indices 0..horizon;
/// tick i sits at real time i*step. Right-unbounded axes are truncated to
/// this horizon; verdicts downstream are certificates up to it.
struct TimeAxis {
    Rational step{1};
    Tick horizon = 1;
    AxisKind kind = AxisKind::Internal;

    TimeAxis() = default;
    TimeAxis(Rational step_, Tick horizon_, AxisKind kind_ = AxisKind::Internal);

    bool contains(Tick t) const { return t >= 0 && t <= horizon; }
    Rational time_of(Tick t) const { return step * Rational(t); }

    friend bool operator==(const TimeAxis& a, const TimeAxis& b) {
        return a.step == b.step && a.horizon == b.horizon;
    }
};

/// Monotone partial map from internal ticks to external ticks, surjective
/// onto the initial segment {0..external_reach}. Point-to-point and
/// set-to-point transformations differ only in preimage cardinality.
class TimeScaleTransformation {
  public:
    TimeScaleTransformation() = default;

    /// Validates monotonicity and initial-segment surjectivity; throws
    /// InvalidConcatenationError naming the violating tick otherwise.
    explicit TimeScaleTransformation(std::map<Tick, Tick> values);

    /// Total identity map on 0..horizon.
    static TimeScaleTransformation identity(Tick horizon);

    const std::map<Tick, Tick>& values() const { return values_; }
    bool empty() const { return values_.empty(); }

    /// external_reach; -1 for the empty transformation.
    Tick external_reach() const { return reach_; }

    /// tau-up: external tick at t, if t is in the domain.
    std::optional<Tick> up(Tick t) const;

    /// tau-down at k, i.e. inverse_tst: all internal ticks mapping to k.
    /// Nonempty for k <= external_reach by surjectivity; out-of-range k
    /// is an error.
    std::vector<Tick> inverse(Tick k) const;

    friend bool operator==(const TimeScaleTransformation& a,
                           const TimeScaleTransformation& b) {
        return a.values_ == b.values_;
    }
    friend auto operator<=>(const TimeScaleTransformation& a,
                            const TimeScaleTransformation& b) {
        return a.values_ <=> b.values_;
    }

  private:
    std::map<Tick, Tick> values_;
    Tick reach_ = -1;
};

/// The constant offset map c of Def-style concatenation: c = k1 - k2 in
/// external ticks. Plain value type.
struct TimeOffset {
    Tick value = 0;
};

std::vector<Tick> inverse_tst(const TimeScaleTransformation& tau, Tick k);

/// Concatenation of time scale transformations with external offset:
/// r(t) = tau1(t) for t < t1 and r(t) = tau2(t - t1 + t2) + c for t >= t1.
/// Requires t1 in dom(tau1), t2 in dom(tau2) and c = tau1(t1) - tau2(t2).
/// Shifted reads that leave the internal grid and offset values beyond the
/// external horizon are truncated; `truncated`, when given, reports whether
/// that happened.
TimeScaleTransformation concat_tst(const TimeScaleTransformation& tau1, Tick t1,
                                   Tick t2, const TimeScaleTransformation& tau2,
                                   TimeOffset c, Tick internal_horizon,
                                   Tick external_horizon, bool* truncated = nullptr);

}  // namespace tempora
