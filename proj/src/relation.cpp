#include "tempora/relation.hpp"

#include <algorithm>

#include "tempora/errors.hpp"

namespace tempora {

std::string to_string(RelationFlavor f) {
    switch (f) {
        case RelationFlavor::Asynchronous: return "async";
        case RelationFlavor::ExternallySynchronous: return "ext-sync";
        case RelationFlavor::Synchronous: return "sync";
        case RelationFlavor::LInitial: return "l-initial";
    }
    return "?";
}

std::string to_string(FailedClause c) {
    switch (c) {
        case FailedClause::Cover4a: return "4a";
        case FailedClause::Cover5a: return "5a";
        case FailedClause::Cover6a: return "6a";
        case FailedClause::CoverInit: return "init";
        case FailedClause::Transfer4b: return "4b";
    }
    return "?";
}

TransferMode transfer_mode_for(RelationFlavor flavor) {
    switch (flavor) {
        case RelationFlavor::Asynchronous: return TransferMode::Free;
        case RelationFlavor::ExternallySynchronous: return TransferMode::KSync;
        case RelationFlavor::Synchronous: return TransferMode::KTSync;
        case RelationFlavor::LInitial: return TransferMode::Free;
    }
    return TransferMode::Free;
}

Relation inverse(const Relation& r) {
    Relation out;
    out.flavor = r.flavor;
    out.l = r.l;
    for (const auto& [a, b] : r.pairs) out.pairs.insert({b, a});
    return out;
}

Relation compose(const Relation& r12, const Relation& r23) {
    Relation out;
    out.flavor = r12.flavor;
    out.l = r12.l;
    for (const auto& [a, b] : r12.pairs)
        for (const auto& [c, d] : r23.pairs)
            if (b == c) out.pairs.insert({a, d});
    return out;
}

namespace {

void require_compatible(const StateSpacePhiSystem& sys1, const StateSpacePhiSystem& sys2,
                        TransferMode mode) {
    if (!(sys1.external_axis == sys2.external_axis))
        throw IncompatibleSystemsError("systems live on different external axes");
    if (mode == TransferMode::KTSync && !(sys1.internal_axis == sys2.internal_axis))
        throw IncompatibleSystemsError(
            "synchronous transfer requires a shared internal axis");
}

/// One quantified context of the transfer condition.
struct TransferContext {
    std::size_t traj1, phi1;
    Tick t1, k1;
    std::size_t trajp, phip;  // the (w', x') side in system 2
    Tick t2, k2;
};

/// Existential core of the transfer condition for a fixed context, against
/// the currently assumed relation pairs.
bool transfer_context_holds(const StateSpacePhiSystem& sys1,
                            const StateSpacePhiSystem& sys2, const TransferContext& cx,
                            const std::set<std::pair<Value, Value>>& pairs,
                            bool* truncated) {
    const auto& tr1 = sys1.behavior[cx.traj1];
    const auto& e1 = sys1.phi.entries[cx.traj1][cx.phi1];
    const auto& trp = sys2.behavior[cx.trajp];
    const auto& ep = sys2.phi.entries[cx.trajp][cx.phip];
    const Tick he = sys1.external_axis.horizon;
    const Tick h2 = sys2.internal_axis.horizon;
    const bool shared_step = sys1.internal_axis.step == sys2.internal_axis.step;

    const Signal target_gamma = concat_signal(ep.gamma, cx.k2, cx.k1, e1.gamma);
    const Tick k_cut = cx.k1 > cx.k2 ? he - (cx.k1 - cx.k2) : he;
    if (k_cut < he && truncated) *truncated = true;
    // The suffix source may itself have been cut off at the external
    // horizon; ticks past its shifted frontier are unknown, not mismatched.
    const bool source_capped = e1.tau.external_reach() == he;
    const Tick gamma1_last = e1.gamma.last_defined();
    auto gamma_matches = [&](const Signal& cand_gamma) {
        for (Tick k = 0; k <= k_cut; ++k) {
            if (source_capped && k >= cx.k2 && k - cx.k2 + cx.k1 > gamma1_last) continue;
            auto va = cand_gamma.at(k);
            auto vb = target_gamma.at(k);
            if (va.has_value() != vb.has_value()) return false;
            if (va && !(*va == *vb)) return false;
        }
        return true;
    };

    for (std::size_t m = 0; m < sys2.behavior.size(); ++m) {
        const auto& cand = sys2.behavior[m];
        if (!detail::agree_upto(cand.w, trp.w, cx.t2 - 1)) continue;
        if (!detail::agree_upto(cand.x, trp.x, cx.t2 - 1)) continue;
        auto xc = cand.x.at(cx.t2);
        auto xp = trp.x.at(cx.t2);
        if (!xc || !xp || !(*xc == *xp)) continue;
        for (const auto& e2 : sys2.phi.entries[m]) {
            if (!gamma_matches(e2.gamma)) continue;
            if (!detail::tau_agree_upto(e2.tau, ep.tau, cx.t2 - 1)) continue;

            bool ok = true;
            for (Tick k = cx.k2; k <= he && ok; ++k) {
                Tick shifted = k - cx.k2 + cx.k1;
                if (shifted > he) {
                    if (truncated) *truncated = true;
                    continue;
                }
                if (shifted > e1.tau.external_reach()) continue;
                for (Tick t1p : e1.tau.inverse(shifted)) {
                    if (t1p <= cx.t1) continue;
                    if (shared_step && t1p - cx.t1 + cx.t2 > h2) {
                        // continuation falls off system 2's grid
                        if (truncated) *truncated = true;
                        continue;
                    }
                    auto x1p = tr1.x.at(t1p);
                    if (!x1p) continue;
                    bool found = false;
                    if (k <= e2.tau.external_reach()) {
                        for (Tick t2p : e2.tau.inverse(k)) {
                            if (t2p <= cx.t2) continue;
                            auto x2p = cand.x.at(t2p);
                            if (x2p && pairs.count({*x1p, *x2p})) {
                                found = true;
                                break;
                            }
                        }
                    }
                    if (!found) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) return true;
        }
    }
    return false;
}

template <typename Visit>
void for_each_transfer_context(const StateSpacePhiSystem& sys1,
                               const StateSpacePhiSystem& sys2, TransferMode mode,
                               Visit&& visit) {
    for (std::size_t i = 0; i < sys1.behavior.size(); ++i) {
        for (std::size_t a = 0; a < sys1.phi.entries[i].size(); ++a) {
            const auto& e1 = sys1.phi.entries[i][a];
            for (const auto& [t1, k1] : e1.tau.values()) {
                if (!sys1.behavior[i].x.at(t1)) continue;
                for (std::size_t p = 0; p < sys2.behavior.size(); ++p) {
                    for (std::size_t b = 0; b < sys2.phi.entries[p].size(); ++b) {
                        const auto& ep = sys2.phi.entries[p][b];
                        for (const auto& [t2, k2] : ep.tau.values()) {
                            if (!sys2.behavior[p].x.at(t2)) continue;
                            if (mode != TransferMode::Free && k1 != k2) continue;
                            if (mode == TransferMode::KTSync && t1 != t2) continue;
                            if (!visit(TransferContext{i, a, t1, k1, p, b, t2, k2}))
                                return;
                        }
                    }
                }
            }
        }
    }
}

}  // namespace

RelationVerdict check_transfer(const StateSpacePhiSystem& sys1,
                               const StateSpacePhiSystem& sys2, const Relation& r,
                               TransferMode mode) {
    require_compatible(sys1, sys2, mode);
    RelationVerdict verdict;
    for_each_transfer_context(
        sys1, sys2, mode, [&](const TransferContext& cx) {
            const Value s1 = *sys1.behavior[cx.traj1].x.at(cx.t1);
            const Value s2 = *sys2.behavior[cx.trajp].x.at(cx.t2);
            if (!r.contains(s1, s2)) return true;
            bool truncated = false;
            if (!transfer_context_holds(sys1, sys2, cx, r.pairs, &truncated)) {
                verdict.accepted = false;
                verdict.failed_clause = FailedClause::Transfer4b;
                verdict.witness =
                    RelationWitness{cx.traj1, cx.phi1, cx.trajp,  cx.phip,
                                    cx.t1,    cx.t2,  cx.k1,      cx.k2,
                                    s1,       s2,     "no continuation in system 2"};
                return false;
            }
            if (truncated) verdict.boundary_truncated = true;
            return true;
        });
    return verdict;
}

RelationVerdict check_cover(const StateSpacePhiSystem& sys1,
                            const StateSpacePhiSystem& sys2, const Relation& r,
                            RelationFlavor flavor, Tick l) {
    require_compatible(sys1, sys2, transfer_mode_for(flavor));
    auto spaces1 = time_indexed_spaces(sys1);
    auto spaces2 = time_indexed_spaces(sys2);
    RelationVerdict verdict;

    auto related_in = [&](const Value& s1, const std::set<Value>& targets) {
        return std::any_of(targets.begin(), targets.end(),
                           [&](const Value& s2) { return r.contains(s1, s2); });
    };
    auto fail = [&](FailedClause clause, const Value& s1, Tick at) {
        verdict.accepted = false;
        verdict.failed_clause = clause;
        RelationWitness w;
        w.state1 = s1;
        w.detail = "state " + s1.str() + " uncovered" +
                   (at >= 0 ? " at tick " + std::to_string(at) : std::string());
        verdict.witness = w;
    };

    switch (flavor) {
        case RelationFlavor::Asynchronous:
            for (const auto& s1 : spaces1.all_external)
                if (!related_in(s1, spaces2.all_external)) {
                    fail(FailedClause::Cover4a, s1, -1);
                    return verdict;
                }
            break;
        case RelationFlavor::ExternallySynchronous:
            for (const auto& [k, states] : spaces1.by_external_tick)
                for (const auto& s1 : states)
                    if (!related_in(s1, spaces2.by_external_tick[k])) {
                        fail(FailedClause::Cover5a, s1, k);
                        return verdict;
                    }
            break;
        case RelationFlavor::Synchronous:
            for (const auto& [t, states] : spaces1.by_internal_tick)
                for (const auto& s1 : states)
                    if (!related_in(s1, spaces2.by_internal_tick[t])) {
                        fail(FailedClause::Cover6a, s1, t);
                        return verdict;
                    }
            break;
        case RelationFlavor::LInitial:
            if (l < 0 || l > sys1.external_axis.horizon)
                throw OutOfRangeError("l = " + std::to_string(l) +
                                      " beyond the external horizon");
            for (const auto& s1 : spaces1.by_external_tick[l])
                if (!related_in(s1, spaces2.by_external_tick[l])) {
                    fail(FailedClause::CoverInit, s1, l);
                    return verdict;
                }
            break;
    }
    return verdict;
}

RelationVerdict check_simulation(const StateSpacePhiSystem& sys1,
                                 const StateSpacePhiSystem& sys2, const Relation& r) {
    RelationVerdict cover = check_cover(sys1, sys2, r, r.flavor, r.l);
    if (!cover.accepted) return cover;
    RelationVerdict transfer = check_transfer(sys1, sys2, r, transfer_mode_for(r.flavor));
    transfer.boundary_truncated |= cover.boundary_truncated;
    return transfer;
}

RelationVerdict check_bisimulation(const StateSpacePhiSystem& sys1,
                                   const StateSpacePhiSystem& sys2, const Relation& r) {
    RelationVerdict forward = check_simulation(sys1, sys2, r);
    if (!forward.accepted) return forward;
    RelationVerdict backward = check_simulation(sys2, sys1, inverse(r));
    backward.boundary_truncated |= forward.boundary_truncated;
    return backward;
}

std::optional<Relation> synthesize_greatest(const StateSpacePhiSystem& sys1,
                                            const StateSpacePhiSystem& sys2,
                                            RelationFlavor flavor, Tick l,
                                            RelationVerdict* why) {
    TransferMode mode = transfer_mode_for(flavor);
    require_compatible(sys1, sys2, mode);
    auto spaces1 = time_indexed_spaces(sys1);
    auto spaces2 = time_indexed_spaces(sys2);

    Relation r;
    r.flavor = flavor;
    r.l = l;
    // The starting candidate is per-tick-indexed as the flavor requires:
    // pairs of states that co-occur at a common external (or internal)
    // instant. Pairs without a common instant are vacuous for cover and
    // transfer alike, but composing them breaks transitivity, so they never
    // enter the fixpoint.
    switch (flavor) {
        case RelationFlavor::ExternallySynchronous:
            for (const auto& [k, states1] : spaces1.by_external_tick)
                for (const auto& a : states1)
                    for (const auto& b : spaces2.by_external_tick[k])
                        r.pairs.insert({a, b});
            break;
        case RelationFlavor::Synchronous:
            for (const auto& [t, states1] : spaces1.by_internal_tick)
                for (const auto& a : states1)
                    for (const auto& b : spaces2.by_internal_tick[t])
                        r.pairs.insert({a, b});
            break;
        default:
            for (const auto& a : spaces1.all_external)
                for (const auto& b : spaces2.all_external) r.pairs.insert({a, b});
            break;
    }

    bool changed = true;
    while (changed) {
        changed = false;
        std::set<std::pair<Value, Value>> doomed;
        for_each_transfer_context(sys1, sys2, mode, [&](const TransferContext& cx) {
            const Value s1 = *sys1.behavior[cx.traj1].x.at(cx.t1);
            const Value s2 = *sys2.behavior[cx.trajp].x.at(cx.t2);
            std::pair<Value, Value> p{s1, s2};
            if (!r.pairs.count(p) || doomed.count(p)) return true;
            if (!transfer_context_holds(sys1, sys2, cx, r.pairs, nullptr))
                doomed.insert(p);
            return true;
        });
        if (!doomed.empty()) {
            changed = true;
            for (const auto& p : doomed) r.pairs.erase(p);
        }
    }

    RelationVerdict cover = check_cover(sys1, sys2, r, flavor, l);
    if (why) *why = cover;
    if (!cover.accepted) return std::nullopt;
    return r;
}

InclusionVerdict check_behavior_inclusion(const StateSpacePhiSystem& sys1,
                                          const StateSpacePhiSystem& sys2) {
    auto b1 = external_behavior(sys1);
    auto b2 = external_behavior(sys2);
    InclusionVerdict out;
    out.subset_1_in_2 = std::includes(b2.begin(), b2.end(), b1.begin(), b1.end());
    out.subset_2_in_1 = std::includes(b1.begin(), b1.end(), b2.begin(), b2.end());
    out.equal = out.subset_1_in_2 && out.subset_2_in_1;
    return out;
}

}  // namespace tempora
