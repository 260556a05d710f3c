#pragma once

// Hand-built fixture helpers shared by the unit and acceptance tests.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tempora/relation.hpp"
#include "tempora/system.hpp"

namespace tempora::fixtures {

/// One trajectory given extensionally: the x-run, the external signal as a
/// symbol-per-external-tick list, and the tau map. w is taken equal to x.
struct TrajectorySpec {
    std::vector<std::string> run;             // x(t) = run[t], also w(t)
    std::vector<std::string> gamma;           // gamma(k) = gamma[k]
    std::map<Tick, Tick> tau;
};

/// A system over symbol-valued signals; spaces are inferred from the data.
/// Cross-system comparisons need a shared gamma space, so extra_labels lets
/// callers include symbols the system itself never emits.
inline StateSpacePhiSystem make_symbol_system(const std::vector<TrajectorySpec>& specs,
                                              Tick external_horizon,
                                              const std::vector<std::string>& extra_labels = {}) {
    StateSpacePhiSystem sys;
    Tick h = static_cast<Tick>(specs.at(0).run.size()) - 1;
    sys.internal_axis = TimeAxis(Rational(1), h, AxisKind::Internal);
    sys.external_axis = TimeAxis(Rational(1), external_horizon, AxisKind::External);
    std::set<std::string> states, labels;
    for (const auto& spec : specs) {
        for (const auto& s : spec.run) states.insert(s);
        for (const auto& g : spec.gamma) labels.insert(g);
    }
    labels.insert(extra_labels.begin(), extra_labels.end());
    sys.w_space = ValueSpace::alphabet({states.begin(), states.end()});
    sys.x_space = sys.w_space;
    sys.gamma_space = ValueSpace::alphabet({labels.begin(), labels.end()});
    for (const auto& spec : specs) {
        Trajectory tr;
        tr.w = Signal(sys.internal_axis, sys.w_space);
        tr.x = Signal(sys.internal_axis, sys.x_space);
        for (std::size_t t = 0; t < spec.run.size(); ++t) {
            tr.w.set(static_cast<Tick>(t), Value(spec.run[t]));
            tr.x.set(static_cast<Tick>(t), Value(spec.run[t]));
        }
        sys.behavior.push_back(std::move(tr));
        PhiEntry entry;
        entry.gamma = Signal(sys.external_axis, sys.gamma_space);
        for (std::size_t k = 0; k < spec.gamma.size(); ++k)
            entry.gamma.set(static_cast<Tick>(k), Value(spec.gamma[k]));
        entry.tau = TimeScaleTransformation(spec.tau);
        sys.phi.entries.push_back({std::move(entry)});
    }
    sys.validate();
    return sys;
}

/// Identity tau on the shared grid with gamma equal to the run labels;
/// requires external_horizon == internal horizon.
inline TrajectorySpec labeled_run(std::vector<std::string> run) {
    TrajectorySpec spec;
    spec.gamma = run;
    spec.run = std::move(run);
    for (std::size_t t = 0; t < spec.run.size(); ++t)
        spec.tau[static_cast<Tick>(t)] = static_cast<Tick>(t);
    return spec;
}

/// Two runs of the two-state loop p0 -> p1 -> p0 under the constant label A,
/// and its one-state quotient.
inline StateSpacePhiSystem loop_chain() {
    TrajectorySpec r0 = labeled_run({"p0", "p1", "p0"});
    TrajectorySpec r1 = labeled_run({"p1", "p0", "p1"});
    r0.gamma = r1.gamma = {"A", "A", "A"};
    return make_symbol_system({r0, r1}, 2);
}

inline StateSpacePhiSystem loop_quotient() {
    TrajectorySpec q = labeled_run({"q", "q", "q"});
    q.gamma = {"A", "A", "A"};
    return make_symbol_system({q}, 2);
}

struct RelatedPair {
    StateSpacePhiSystem first;
    StateSpacePhiSystem second;
    Relation relation;
};

/// R = {(s0,u1)} is an asynchronous simulation — s0's only external instant
/// is k=0, where the concatenated target is reachable through u1's history —
/// but the per-tick cover (5a) fails at k=0, where only u0 occurs.
inline RelatedPair async_not_extsync_pair() {
    RelatedPair out;
    TrajectorySpec s0;
    s0.run = {"s0", "s0"};
    s0.gamma = {"A"};
    s0.tau = {{0, 0}};
    out.first = make_symbol_system({s0}, 1);
    TrajectorySpec u;
    u.run = {"u0", "u1"};
    u.gamma = {"A", "A"};
    u.tau = {{0, 0}, {1, 1}};
    out.second = make_symbol_system({u}, 1);
    out.relation.flavor = RelationFlavor::Asynchronous;
    out.relation.pairs = {{Value("s0"), Value("u1")}};
    return out;
}

/// System 1 reaches external tick 1 only through a1; relating the a-states
/// to their copies is 1-initial-acceptable, but the ext-sync cover also
/// constrains k=0, where b0 is unrelated.
inline RelatedPair linitial_not_extsync_pair() {
    RelatedPair out;
    TrajectorySpec a = labeled_run({"a0", "a1"});
    a.gamma = {"A", "A"};
    TrajectorySpec b = labeled_run({"b0", "a1"});
    b.gamma = {"B", "A"};
    out.first = make_symbol_system({a, b}, 1);
    TrajectorySpec c = labeled_run({"c0", "c1"});
    c.gamma = {"A", "A"};
    out.second = make_symbol_system({c}, 1, {"B"});
    out.relation.flavor = RelationFlavor::LInitial;
    out.relation.l = 1;
    out.relation.pairs = {{Value("a0"), Value("c0")}, {Value("a1"), Value("c1")}};
    return out;
}

/// External behaviors are equal, but no 0-initial simulation exists: system 1
/// funnels both continuations through the single state s1, while system 2
/// splits them over p and q before the labels diverge.
inline RelatedPair merge_vs_split_pair() {
    RelatedPair out;
    TrajectorySpec m1 = labeled_run({"s0", "s1", "sB"});
    m1.gamma = {"N", "A", "B"};
    TrajectorySpec m2 = labeled_run({"s0", "s1", "sC"});
    m2.gamma = {"N", "A", "C"};
    out.first = make_symbol_system({m1, m2}, 2);
    TrajectorySpec n1 = labeled_run({"r0", "p", "rB"});
    n1.gamma = {"N", "A", "B"};
    TrajectorySpec n2 = labeled_run({"r0", "q", "rC"});
    n2.gamma = {"N", "A", "C"};
    out.second = make_symbol_system({n1, n2}, 2);
    out.relation.flavor = RelationFlavor::LInitial;
    out.relation.l = 0;
    return out;
}

}  // namespace tempora::fixtures
