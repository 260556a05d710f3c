#pragma once

#include <optional>
#include <set>
#include <utility>

#include "tempora/system.hpp"

namespace tempora {

enum class RelationFlavor { Asynchronous, ExternallySynchronous, Synchronous, LInitial };

std::string to_string(RelationFlavor f);

/// Candidate relation between the two state spaces.
struct Relation {
    std::set<std::pair<Value, Value>> pairs;
    RelationFlavor flavor = RelationFlavor::Asynchronous;
    Tick l = 0;  // used by the l-initial flavor only

    bool contains(const Value& a, const Value& b) const {
        return pairs.count({a, b}) > 0;
    }
};

Relation inverse(const Relation& r);
Relation compose(const Relation& r12, const Relation& r23);

enum class FailedClause { Cover4a, Cover5a, Cover6a, CoverInit, Transfer4b };

std::string to_string(FailedClause c);

struct RelationWitness {
    std::size_t trajectory1 = 0;
    std::size_t phi1 = 0;
    std::size_t trajectory2 = 0;
    std::size_t phi2 = 0;
    Tick t1 = -1;
    Tick t2 = -1;
    Tick k1 = -1;
    Tick k2 = -1;
    std::optional<Value> state1;
    std::optional<Value> state2;
    std::string detail;
};

struct RelationVerdict {
    bool accepted = true;
    std::optional<FailedClause> failed_clause;
    std::optional<RelationWitness> witness;
    /// Some quantifier was cut off by the finite grid; the verdict is a
    /// certificate up to the horizon.
    bool boundary_truncated = false;
};

enum class TransferMode { Free, KSync, KTSync };

TransferMode transfer_mode_for(RelationFlavor flavor);

/// Transfer condition over all related contexts. KSync restricts contexts
/// to k1 = k2, KTSync additionally to t1 = t2 (and requires a shared
/// internal axis). The trailing stay-related quantifier is evaluated up to
/// the horizon.
RelationVerdict check_transfer(const StateSpacePhiSystem& sys1,
                               const StateSpacePhiSystem& sys2, const Relation& r,
                               TransferMode mode);

/// Cover condition in the flavor's shape: X_K-global, per external tick,
/// per internal tick, or at the single external tick l.
RelationVerdict check_cover(const StateSpacePhiSystem& sys1,
                            const StateSpacePhiSystem& sys2, const Relation& r,
                            RelationFlavor flavor, Tick l = 0);

RelationVerdict check_simulation(const StateSpacePhiSystem& sys1,
                                 const StateSpacePhiSystem& sys2, const Relation& r);

RelationVerdict check_bisimulation(const StateSpacePhiSystem& sys1,
                                   const StateSpacePhiSystem& sys2, const Relation& r);

/// Greatest-fixpoint refinement: start from the full candidate relation,
/// delete transfer-violating pairs in deterministic sweeps until stable,
/// then test the cover condition. Returns the fixpoint or nothing when no
/// relation of this flavor exists; `why` receives the failing cover verdict.
std::optional<Relation> synthesize_greatest(const StateSpacePhiSystem& sys1,
                                            const StateSpacePhiSystem& sys2,
                                            RelationFlavor flavor, Tick l = 0,
                                            RelationVerdict* why = nullptr);

struct InclusionVerdict {
    bool subset_1_in_2 = false;
    bool subset_2_in_1 = false;
    bool equal = false;
};

/// External-behavior subset/equality test (the behavioral-inclusion oracle).
InclusionVerdict check_behavior_inclusion(const StateSpacePhiSystem& sys1,
                                          const StateSpacePhiSystem& sys2);

}  // namespace tempora
