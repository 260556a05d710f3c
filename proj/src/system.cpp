#include "tempora/system.hpp"

#include <algorithm>

#include "tempora/errors.hpp"

namespace tempora {

std::string to_string(AxiomClass c) {
    switch (c) {
        case AxiomClass::Asynchronous: return "asynchronous";
        case AxiomClass::ExternallySynchronous: return "externally-synchronous";
        case AxiomClass::Synchronous: return "synchronous";
    }
    return "?";
}

std::string StateSpacePhiSystem::id_of(std::size_t trajectory) const {
    if (trajectory < trajectory_ids.size() && !trajectory_ids[trajectory].empty())
        return trajectory_ids[trajectory];
    return "t" + std::to_string(trajectory);
}

void StateSpacePhiSystem::validate() const {
    if (phi.entries.size() != behavior.size())
        throw PreconditionError("phi table must cover every behavior trajectory");
    for (std::size_t i = 0; i < behavior.size(); ++i) {
        const auto& tr = behavior[i];
        if (!(tr.w.axis == internal_axis) || !(tr.x.axis == internal_axis))
            throw PreconditionError("trajectory " + id_of(i) + " off the internal axis");
        auto dom = [](const Signal& s) {
            std::vector<Tick> d;
            for (const auto& [t, v] : s.values) d.push_back(t);
            return d;
        };
        if (dom(tr.w) != dom(tr.x))
            throw PreconditionError("trajectory " + id_of(i) + ": w and x domains differ");
        for (const auto& [t, v] : tr.w.values)
            if (!w_space.contains(v))
                throw PreconditionError("trajectory " + id_of(i) + ": w value outside W");
        for (const auto& [t, v] : tr.x.values)
            if (!x_space.contains(v))
                throw PreconditionError("trajectory " + id_of(i) + ": x value outside X");
        for (const auto& entry : phi.entries[i]) {
            if (!(entry.gamma.axis == external_axis))
                throw PreconditionError("trajectory " + id_of(i) +
                                        ": gamma off the external axis");
            if (entry.tau.external_reach() > external_axis.horizon)
                throw PreconditionError("trajectory " + id_of(i) +
                                        ": tau reaches beyond the external horizon");
            for (const auto& [t, k] : entry.tau.values())
                if (!internal_axis.contains(t))
                    throw PreconditionError("trajectory " + id_of(i) +
                                            ": tau domain off the internal grid");
            for (Tick k = 0; k <= entry.tau.external_reach(); ++k)
                if (!entry.gamma.at(k))
                    throw PreconditionError("trajectory " + id_of(i) +
                                            ": gamma undefined at external tick " +
                                            std::to_string(k));
            for (const auto& [k, v] : entry.gamma.values)
                if (!gamma_space.contains(v))
                    throw PreconditionError("trajectory " + id_of(i) +
                                            ": gamma value outside Gamma");
        }
    }
    for (std::size_t i = 0; i < behavior.size(); ++i)
        for (std::size_t j = i + 1; j < behavior.size(); ++j)
            if (behavior[i] == behavior[j])
                throw PreconditionError("behavior has duplicate trajectories " + id_of(i) +
                                        " and " + id_of(j));
}

std::set<Signal> external_behavior(const StateSpacePhiSystem& system) {
    std::set<Signal> out;
    for (const auto& branches : system.phi.entries)
        for (const auto& entry : branches) out.insert(entry.gamma);
    return out;
}

namespace detail {

bool agree_upto(const Signal& a, const Signal& b, Tick bound) {
    for (Tick t = 0; t <= bound; ++t) {
        auto va = a.at(t);
        auto vb = b.at(t);
        if (va.has_value() != vb.has_value()) return false;
        if (va && !(*va == *vb)) return false;
    }
    return true;
}

bool tau_agree_upto(const TimeScaleTransformation& a, const TimeScaleTransformation& b,
                    Tick bound) {
    for (Tick t = 0; t <= bound; ++t) {
        auto ka = a.up(t);
        auto kb = b.up(t);
        if (ka != kb) return false;
    }
    return true;
}

std::optional<std::size_t> find_prefix_witness(const StateSpacePhiSystem& system,
                                               const Trajectory& c, Tick bound) {
    for (std::size_t i = 0; i < system.behavior.size(); ++i)
        if (agree_upto(system.behavior[i].w, c.w, bound) &&
            agree_upto(system.behavior[i].x, c.x, bound))
            return i;
    return std::nullopt;
}

}  // namespace detail

namespace {

/// One forced concatenation instance of the state axiom.
struct ForcedConcat {
    Trajectory trajectory;
    PhiEntry entry;
    Tick t_cut;  // trajectory checked on [0..t_cut]
    Tick k_cut;  // gamma checked on [0..k_cut]
    bool truncated;
    /// The trajectory part is complete on the grid, so closure may add it;
    /// internal truncation leaves only prefix-witness checking.
    bool addable;
    // Matching context, needed to tell truncation artifacts from genuine
    // mismatches: the suffix source entry may itself have been cut off at
    // the external horizon.
    Tick t1, t2, k1, k2;
    TimeScaleTransformation tau2;
    Tick gamma2_last = -1;
    bool suffix_capped = false;  // source tau reaches the external horizon
    Tick external_horizon = 0;
};

std::optional<ForcedConcat> forced_concat(const StateSpacePhiSystem& system,
                                          std::size_t i, std::size_t j, Tick t1, Tick t2,
                                          const PhiEntry& e1, const PhiEntry& e2,
                                          AxiomClass cls) {
    const auto& tr1 = system.behavior[i];
    const auto& tr2 = system.behavior[j];
    auto x1 = tr1.x.at(t1);
    auto x2 = tr2.x.at(t2);
    if (!x1 || !x2 || !(*x1 == *x2)) return std::nullopt;
    auto k1 = e1.tau.up(t1);
    auto k2 = e2.tau.up(t2);
    if (!k1 || !k2) return std::nullopt;  // no external instant; pair is skipped
    if (cls != AxiomClass::Asynchronous && *k1 != *k2) return std::nullopt;
    if (cls == AxiomClass::Synchronous && t1 != t2) return std::nullopt;

    const Tick h = system.internal_axis.horizon;
    const Tick he = system.external_axis.horizon;
    ForcedConcat out;
    out.trajectory.w = concat_signal(tr1.w, t1, t2, tr2.w);
    out.trajectory.x = concat_signal(tr1.x, t1, t2, tr2.x);
    out.entry.gamma = concat_signal(e1.gamma, *k1, *k2, e2.gamma);
    bool tau_truncated = false;
    out.entry.tau = concat_tst(e1.tau, t1, t2, e2.tau, TimeOffset{*k1 - *k2}, h, he,
                               &tau_truncated);
    out.t_cut = t2 > t1 ? h - (t2 - t1) : h;
    out.k_cut = *k2 > *k1 ? he - (*k2 - *k1) : he;
    out.truncated = out.t_cut < h || out.k_cut < he || tau_truncated;
    out.addable = out.t_cut == h;
    out.t1 = t1;
    out.t2 = t2;
    out.k1 = *k1;
    out.k2 = *k2;
    out.tau2 = e2.tau;
    out.gamma2_last = e2.gamma.last_defined();
    out.suffix_capped = e2.tau.external_reach() == he;
    out.external_horizon = he;
    if (out.suffix_capped && *k1 != *k2) out.truncated = true;
    return out;
}

template <typename Visit>
void for_each_axiom_instance(const StateSpacePhiSystem& system, AxiomClass cls,
                             Visit&& visit) {
    const Tick h = system.internal_axis.horizon;
    for (std::size_t i = 0; i < system.behavior.size(); ++i) {
        for (std::size_t j = 0; j < system.behavior.size(); ++j) {
            for (std::size_t a = 0; a < system.phi.entries[i].size(); ++a) {
                for (std::size_t b = 0; b < system.phi.entries[j].size(); ++b) {
                    for (Tick t1 = 0; t1 <= h; ++t1) {
                        for (Tick t2 = 0; t2 <= h; ++t2) {
                            auto fc = forced_concat(system, i, j, t1, t2,
                                                    system.phi.entries[i][a],
                                                    system.phi.entries[j][b], cls);
                            if (!fc) continue;
                            if (!visit(i, j, t1, t2, a, b, *fc)) return;
                        }
                    }
                }
            }
        }
    }
}

/// Agreement of a phi branch with the forced entry, skipping ticks whose
/// forced value was lost to grid truncation (shifted reads past the internal
/// horizon, offsets past the external horizon, or suffix events missing only
/// because the source entry already hit the external horizon cap).
bool entry_matches(const ForcedConcat& fc, const PhiEntry& cand) {
    for (Tick k = 0; k <= fc.k_cut; ++k) {
        if (fc.suffix_capped && k >= fc.k1 && k - fc.k1 + fc.k2 > fc.gamma2_last)
            continue;  // unknown tail of the capped source
        auto va = cand.gamma.at(k);
        auto vb = fc.entry.gamma.at(k);
        if (va.has_value() != vb.has_value()) return false;
        if (va && !(*va == *vb)) return false;
    }
    const Tick tau2_last = fc.tau2.values().empty() ? -1 : fc.tau2.values().rbegin()->first;
    for (Tick t = 0; t <= fc.t_cut; ++t) {
        if (t >= fc.t1) {
            Tick src = t - fc.t1 + fc.t2;
            if (auto k2v = fc.tau2.up(src)) {
                if (*k2v + (fc.k1 - fc.k2) > fc.external_horizon) continue;  // dropped
            } else if (fc.suffix_capped && src > tau2_last) {
                continue;  // unknown tail of the capped source
            }
        }
        if (cand.tau.up(t) != fc.entry.tau.up(t)) return false;
    }
    return true;
}

/// Looks for a behavior member plus phi branch matching the forced
/// concatenation up to its cuts.
bool concat_present(const StateSpacePhiSystem& system, const ForcedConcat& fc) {
    for (std::size_t m = 0; m < system.behavior.size(); ++m) {
        if (!detail::agree_upto(system.behavior[m].w, fc.trajectory.w, fc.t_cut)) continue;
        if (!detail::agree_upto(system.behavior[m].x, fc.trajectory.x, fc.t_cut)) continue;
        for (const auto& cand : system.phi.entries[m]) {
            if (entry_matches(fc, cand)) return true;
        }
    }
    return false;
}

}  // namespace

AxiomVerdict check_state_axiom(const StateSpacePhiSystem& system, AxiomClass cls) {
    AxiomVerdict verdict;
    for_each_axiom_instance(system, cls,
                            [&](std::size_t i, std::size_t j, Tick t1, Tick t2,
                                std::size_t a, std::size_t b, const ForcedConcat& fc) {
                                if (fc.truncated) verdict.boundary_truncated = true;
                                if (concat_present(system, fc)) return true;
                                verdict.accepted = false;
                                verdict.witness = AxiomWitness{
                                    i, j, t1, t2, a, b,
                                    "required concatenation (or its phi branch) missing"};
                                return false;
                            });
    return verdict;
}

StateSpacePhiSystem closure(const StateSpacePhiSystem& system, AxiomClass cls) {
    StateSpacePhiSystem out = system;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<ForcedConcat> pending;
        for_each_axiom_instance(out, cls,
                                [&](std::size_t, std::size_t, Tick, Tick, std::size_t,
                                    std::size_t, const ForcedConcat& fc) {
                                    if (fc.addable && !concat_present(out, fc))
                                        pending.push_back(fc);
                                    return true;
                                });
        for (const auto& fc : pending) {
            if (concat_present(out, fc)) continue;
            auto match = std::find(out.behavior.begin(), out.behavior.end(), fc.trajectory);
            if (match == out.behavior.end()) {
                out.behavior.push_back(fc.trajectory);
                out.trajectory_ids.push_back("c" + std::to_string(out.behavior.size() - 1));
                out.phi.entries.push_back({fc.entry});
            } else {
                std::size_t idx = static_cast<std::size_t>(match - out.behavior.begin());
                auto& branches = out.phi.entries[idx];
                if (std::find(branches.begin(), branches.end(), fc.entry) == branches.end())
                    branches.push_back(fc.entry);
            }
            changed = true;
        }
    }
    // Truncated obligations cannot add trajectories; they must be witnessed
    // by some prefix already in the closed set.
    std::optional<std::string> overflow;
    for_each_axiom_instance(out, cls,
                            [&](std::size_t i, std::size_t j, Tick t1, Tick t2,
                                std::size_t, std::size_t, const ForcedConcat& fc) {
                                if (!fc.addable && !concat_present(out, fc)) {
                                    overflow = "concatenation of " + out.id_of(i) + "@" +
                                               std::to_string(t1) + " with " + out.id_of(j) +
                                               "@" + std::to_string(t2) +
                                               " needs ticks beyond the grid";
                                    return false;
                                }
                                return true;
                            });
    if (overflow) throw HorizonOverflowError(*overflow);
    return out;
}

TimeIndexedStateSpaces time_indexed_spaces(const StateSpacePhiSystem& system) {
    TimeIndexedStateSpaces out;
    for (const auto& tr : system.behavior) {
        for (const auto& [t, v] : tr.x.values) {
            out.by_internal_tick[t].insert(v);
            out.all_internal.insert(v);
        }
    }
    for (std::size_t i = 0; i < system.behavior.size(); ++i) {
        for (const auto& entry : system.phi.entries[i]) {
            for (const auto& [t, k] : entry.tau.values()) {
                if (auto v = system.behavior[i].x.at(t)) {
                    out.by_external_tick[k].insert(*v);
                    out.all_external.insert(*v);
                }
            }
        }
    }
    return out;
}

}  // namespace tempora
