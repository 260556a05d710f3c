#pragma once

#include <map>
#include <set>
#include <string>

#include "tempora/signal_map.hpp"

namespace tempora {

enum class AxiomClass { Asynchronous, ExternallySynchronous, Synchronous };

std::string to_string(AxiomClass c);

/// The tuple (T, W, B, Gamma, T_E, Phi, X, B_S) with enumerated finite
/// behavior. B is the w-projection of the stored trajectories.
struct StateSpacePhiSystem {
    TimeAxis internal_axis;
    TimeAxis external_axis;
    ValueSpace w_space;
    ValueSpace gamma_space;
    ValueSpace x_space;
    std::vector<Trajectory> behavior;
    SignalMapTable phi;
    AxiomClass axiom_class = AxiomClass::Asynchronous;
    std::vector<std::string> trajectory_ids;

    /// Basic well-formedness: shared axes/domains per trajectory, phi sized
    /// to the behavior, duplicate-free behavior. Throws on violation.
    void validate() const;

    std::string id_of(std::size_t trajectory) const;
};

/// External behavior Eq-style: all gamma arising from some Phi branch,
/// deduplicated.
std::set<Signal> external_behavior(const StateSpacePhiSystem& system);

struct AxiomWitness {
    std::size_t trajectory1;
    std::size_t trajectory2;
    Tick t1;
    Tick t2;
    std::size_t phi1;
    std::size_t phi2;
    std::string reason;
};

struct AxiomVerdict {
    bool accepted = true;
    /// True when some required concatenation was truncated by the horizon;
    /// the verdict is then a certificate up to the grid bound.
    bool boundary_truncated = false;
    std::optional<AxiomWitness> witness;
};

/// Def-style state axiom check for the given class. Quantifiers range over
/// instants where both x and tau-up are defined; concatenations that leave
/// the grid are checked against prefix witnesses and flagged as truncated.
AxiomVerdict check_state_axiom(const StateSpacePhiSystem& system, AxiomClass cls);

/// Least superset of behavior and phi closed under the state-axiom
/// concatenation rule, computed to fixpoint. Throws HorizonOverflowError if
/// a truncated obligation has no prefix witness after the fixpoint.
StateSpacePhiSystem closure(const StateSpacePhiSystem& system, AxiomClass cls);

/// Def-style reachable state sets.
struct TimeIndexedStateSpaces {
    std::map<Tick, std::set<Value>> by_internal_tick;  // X_t
    std::map<Tick, std::set<Value>> by_external_tick;  // X^k
    std::set<Value> all_internal;                      // X_T
    std::set<Value> all_external;                      // X_K
};

TimeIndexedStateSpaces time_indexed_spaces(const StateSpacePhiSystem& system);

namespace detail {

/// Pointwise agreement of two partial signals on ticks <= bound.
bool agree_upto(const Signal& a, const Signal& b, Tick bound);
bool tau_agree_upto(const TimeScaleTransformation& a, const TimeScaleTransformation& b,
                    Tick bound);

/// Index of a behavior trajectory agreeing with `c` on ticks <= bound, if any.
std::optional<std::size_t> find_prefix_witness(const StateSpacePhiSystem& system,
                                               const Trajectory& c, Tick bound);

}  // namespace detail

}  // namespace tempora
