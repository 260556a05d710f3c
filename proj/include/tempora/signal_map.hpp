#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tempora/signal.hpp"

namespace tempora {

struct StateSpacePhiSystem;

/// One branch of Phi(w): an external signal with its time scale
/// transformation.
struct PhiEntry {
    Signal gamma;
    TimeScaleTransformation tau;

    friend bool operator==(const PhiEntry& a, const PhiEntry& b) {
        return a.gamma == b.gamma && a.tau == b.tau;
    }
    friend bool operator<(const PhiEntry& a, const PhiEntry& b) {
        if (!(a.gamma.values == b.gamma.values)) return a.gamma.values < b.gamma.values;
        return a.tau < b.tau;
    }
};

/// Extensional Phi: per behavior trajectory (by index) the finite set of
/// (gamma, tau) branches. Empty sets are legal entries.
struct SignalMapTable {
    std::vector<std::vector<PhiEntry>> entries;

    const std::vector<PhiEntry>& of(std::size_t trajectory) const {
        return entries.at(trajectory);
    }
};

enum class QuantizerMode { PointToPoint, SetToPoint };

/// One cover cell: symbol plus a rational interval with open/closed ends.
struct QuantizerCell {
    std::string symbol;
    Rational lo;
    Rational hi;
    bool lo_open = false;
    bool hi_open = false;

    bool contains(const Rational& v) const {
        if (lo_open ? !(lo < v) : v < lo) return false;
        if (hi_open ? !(v < hi) : hi < v) return false;
        return true;
    }
};

/// Event-triggered quantizer: the cover {I_q}, the transformation mode and
/// the optional dwell-repeat period (the non-anticipating slow-time-triggered
/// variant).
struct QuantizerSpec {
    std::vector<QuantizerCell> cells;
    QuantizerMode mode = QuantizerMode::PointToPoint;
    std::optional<Rational> repeat_period;
    TimeAxis external_axis{Rational(1), 4, AxisKind::External};

    ValueSpace gamma_space() const;
    std::vector<std::string> symbols_at(const Rational& v) const;
};

/// All (gamma, tau) branches of the Example-style event-triggered map for a
/// total rational-valued signal. Overlapping cells branch breadth-first per
/// external tick; more than `branch_cap` live branches is an error. A signal
/// that never leaves its initial cell maps to the empty set unless
/// repeat_period is set.
std::vector<PhiEntry> quantize(const QuantizerSpec& spec, const Signal& w,
                               std::size_t branch_cap = 64);

/// Phi(w) = {(w projected onto [first..last], identity tau)} with T_E = T.
PhiEntry projection_map(const Signal& w, std::size_t first, std::size_t last);

/// Extensional projection table over a whole behavior.
SignalMapTable projection_table(const std::vector<Trajectory>& behavior,
                                std::size_t first, std::size_t last);

struct NonanticipationWitness {
    std::size_t trajectory_w;
    std::size_t trajectory_w_prime;
    Tick t;
    std::size_t phi_index;  // offending branch of Phi(w)
};

struct NonanticipationVerdict {
    bool accepted = true;
    std::optional<NonanticipationWitness> witness;
};

/// Remark-style non-anticipation: matching pasts of w and w' must admit
/// matching pasts of (gamma, tau) branches.
NonanticipationVerdict check_nonanticipation(const StateSpacePhiSystem& system);

}  // namespace tempora
