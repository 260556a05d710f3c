#include "tempora/harness.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "tempora/errors.hpp"

namespace tempora {

std::string to_string(TauStyle s) {
    switch (s) {
        case TauStyle::Identity: return "identity";
        case TauStyle::PointToPoint: return "point-to-point";
        case TauStyle::SetToPoint: return "set-to-point";
        case TauStyle::Mixed: return "mixed";
    }
    return "?";
}

namespace {

/// Deterministic labeled skeleton: every state has exactly one successor,
/// so runs from equal states share their entire suffix. That makes the
/// induced behavior closed under the state-axiom concatenation rule by
/// construction; closure() below is a checked no-op on top.
struct Lts {
    int n = 0;
    std::vector<int> succ;
    std::vector<int> label;
    std::vector<int> inits;  // distinct start states
};

Lts random_lts(std::mt19937_64& rng, const GeneratorConfig& cfg) {
    Lts lts;
    lts.n = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(
                                     std::max(1, cfg.max_states - 1)));
    lts.succ.resize(lts.n);
    lts.label.resize(lts.n);
    for (int i = 0; i < lts.n; ++i) {
        lts.succ[i] = static_cast<int>(rng() % lts.n);
        lts.label[i] = static_cast<int>(rng() % std::max(1, cfg.gamma_size));
    }
    std::vector<int> order(lts.n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    int starts = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::min(
                                          lts.n, std::max(1, cfg.max_trajectories))));
    lts.inits.assign(order.begin(), order.begin() + starts);
    std::sort(lts.inits.begin(), lts.inits.end());
    return lts;
}

/// Isomorphic copy under a random permutation; map[i] is i's new index.
Lts rename_lts(const Lts& lts, std::mt19937_64& rng, std::vector<int>& map) {
    map.resize(lts.n);
    std::iota(map.begin(), map.end(), 0);
    std::shuffle(map.begin(), map.end(), rng);
    Lts out;
    out.n = lts.n;
    out.succ.resize(lts.n);
    out.label.resize(lts.n);
    for (int i = 0; i < lts.n; ++i) {
        out.succ[map[i]] = map[lts.succ[i]];
        out.label[map[i]] = lts.label[i];
    }
    for (int i : lts.inits) out.inits.push_back(map[i]);
    std::sort(out.inits.begin(), out.inits.end());
    out.inits.erase(std::unique(out.inits.begin(), out.inits.end()), out.inits.end());
    return out;
}

/// Moore-style partition refinement: states are merged when they carry the
/// same label and their successors stay in the same block. The quotient run
/// from [s] mimics the label dynamics of the run from s exactly, so the
/// graph-of-the-map relation is a bisimulation witness by construction.
Lts quotient_lts(const Lts& lts, std::vector<int>& map) {
    std::vector<int> block = lts.label;
    for (;;) {
        std::map<std::pair<int, int>, int> key_to_block;
        std::vector<int> next(lts.n);
        for (int i = 0; i < lts.n; ++i) {
            std::pair<int, int> key{block[i], block[lts.succ[i]]};
            auto [it, inserted] =
                key_to_block.emplace(key, static_cast<int>(key_to_block.size()));
            next[i] = it->second;
        }
        if (next == block) break;
        block = next;
    }
    map = block;
    Lts out;
    out.n = 1 + *std::max_element(block.begin(), block.end());
    out.succ.resize(out.n);
    out.label.resize(out.n);
    for (int i = 0; i < lts.n; ++i) {
        out.succ[block[i]] = block[lts.succ[i]];
        out.label[block[i]] = lts.label[i];
    }
    for (int i : lts.inits) out.inits.push_back(block[i]);
    std::sort(out.inits.begin(), out.inits.end());
    out.inits.erase(std::unique(out.inits.begin(), out.inits.end()), out.inits.end());
    return out;
}

TauStyle concrete_style(std::mt19937_64& rng, TauStyle requested) {
    if (requested != TauStyle::Mixed) return requested;
    switch (rng() % 3) {
        case 0: return TauStyle::Identity;
        case 1: return TauStyle::PointToPoint;
        default: return TauStyle::SetToPoint;
    }
}

std::string state_symbol(const std::string& prefix, int i) {
    return prefix + std::to_string(i);
}

std::string gamma_symbol(int label) { return "g" + std::to_string(label); }

/// Event ticks of a run: tick 0 plus every label change. Event patterns
/// depend only on the current and previous state, so suffixes of runs from
/// equal states produce identical event tails.
std::vector<Tick> event_ticks(const Lts& lts, const std::vector<int>& run) {
    std::vector<Tick> events;
    for (Tick t = 0; t < static_cast<Tick>(run.size()); ++t) {
        if (t == 0 || lts.label[run[t]] != lts.label[run[t - 1]]) events.push_back(t);
    }
    return events;
}

PhiEntry make_entry(const Lts& lts, const std::vector<int>& run, TauStyle style,
                    const TimeAxis& external_axis, const ValueSpace& gamma_space) {
    const Tick he = external_axis.horizon;
    const Tick h = static_cast<Tick>(run.size()) - 1;
    Signal gamma(external_axis, gamma_space);
    std::map<Tick, Tick> tau;
    if (style == TauStyle::Identity) {
        for (Tick t = 0; t <= std::min(h, he); ++t) {
            tau[t] = t;
            gamma.set(t, Value(gamma_symbol(lts.label[run[t]])));
        }
    } else {
        const std::vector<Tick> events = event_ticks(lts, run);
        // Events past the external grid are cut off; the entry stays a
        // certificate up to the horizon.
        const Tick reach = std::min<Tick>(static_cast<Tick>(events.size()) - 1, he);
        for (Tick k = 0; k <= reach; ++k)
            gamma.set(k, Value(gamma_symbol(lts.label[run[events[k]]])));
        if (style == TauStyle::PointToPoint) {
            for (Tick k = 0; k <= reach; ++k) tau[events[k]] = k;
        } else {
            Tick k = -1;
            for (Tick t = 0; t <= h; ++t) {
                if (k + 1 <= reach && k + 1 < static_cast<Tick>(events.size()) &&
                    events[k + 1] == t)
                    ++k;
                if (k > he) break;
                tau[t] = k;
            }
        }
    }
    return PhiEntry{std::move(gamma), TimeScaleTransformation(std::move(tau))};
}

StateSpacePhiSystem build_system(const Lts& lts, const GeneratorConfig& cfg,
                                 TauStyle style, const std::string& prefix) {
    StateSpacePhiSystem sys;
    sys.internal_axis = TimeAxis(Rational(1), cfg.internal_horizon, AxisKind::Internal);
    sys.external_axis = TimeAxis(Rational(1), cfg.external_horizon, AxisKind::External);
    std::vector<std::string> states;
    for (int i = 0; i < lts.n; ++i) states.push_back(state_symbol(prefix, i));
    std::vector<std::string> labels;
    for (int g = 0; g < std::max(1, cfg.gamma_size); ++g) labels.push_back(gamma_symbol(g));
    sys.w_space = ValueSpace::alphabet(states);
    sys.x_space = sys.w_space;
    sys.gamma_space = ValueSpace::alphabet(labels);
    sys.axiom_class = cfg.axiom_class;
    for (int init : lts.inits) {
        std::vector<int> run;
        int s = init;
        for (Tick t = 0; t <= cfg.internal_horizon; ++t) {
            run.push_back(s);
            s = lts.succ[s];
        }
        Trajectory traj;
        traj.w = Signal(sys.internal_axis, sys.w_space);
        traj.x = Signal(sys.internal_axis, sys.x_space);
        for (Tick t = 0; t <= cfg.internal_horizon; ++t) {
            Value v(state_symbol(prefix, run[t]));
            traj.w.set(t, v);
            traj.x.set(t, v);
        }
        sys.behavior.push_back(std::move(traj));
        sys.phi.entries.push_back(
            {make_entry(lts, run, style, sys.external_axis, sys.gamma_space)});
        sys.trajectory_ids.push_back("t" + std::to_string(sys.trajectory_ids.size()));
    }
    sys.validate();
    return sys;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

StateSpacePhiSystem finalize(StateSpacePhiSystem sys, AxiomClass cls) {
    StateSpacePhiSystem closed = closure(sys, cls);
    AxiomVerdict verdict = check_state_axiom(closed, cls);
    if (!verdict.accepted)
        throw GenerationExhaustedError("generated candidate fails the state axiom after closure");
    return closed;
}

Relation graph_relation(const std::string& prefix1, const std::string& prefix2,
                        const std::vector<int>& map) {
    Relation r;
    r.flavor = RelationFlavor::Asynchronous;
    for (int i = 0; i < static_cast<int>(map.size()); ++i)
        r.pairs.insert({Value(state_symbol(prefix1, i)), Value(state_symbol(prefix2, map[i]))});
    return r;
}

constexpr int kMaxAttempts = 32;

}  // namespace

StateSpacePhiSystem generate_system(const GeneratorConfig& cfg) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::mt19937_64 rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(attempt)));
        Lts lts = random_lts(rng, cfg);
        TauStyle style = concrete_style(rng, cfg.tau_style);
        try {
            return finalize(build_system(lts, cfg, style, "s"), cfg.axiom_class);
        } catch (const HorizonOverflowError&) {
        } catch (const GenerationExhaustedError&) {
        }
    }
    throw GenerationExhaustedError("no closed system found within the retry budget");
}

GeneratedPair generate_pair(const GeneratorConfig& cfg) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::mt19937_64 rng(mix_seed(cfg.seed, 0x70ull + attempt));
        Lts lts1 = random_lts(rng, cfg);
        TauStyle style = concrete_style(rng, cfg.tau_style);
        const std::uint64_t derivation = rng() % 3;
        try {
            GeneratedPair pair;
            pair.first = finalize(build_system(lts1, cfg, style, "s"), cfg.axiom_class);
            if (derivation == 2) {
                // Independent fresh draw; any relation is coincidental.
                Lts lts2 = random_lts(rng, cfg);
                TauStyle style2 = concrete_style(rng, cfg.tau_style);
                pair.second =
                    finalize(build_system(lts2, cfg, style2, "u"), cfg.axiom_class);
                pair.related = false;
            } else {
                std::vector<int> map;
                Lts lts2 = derivation == 0 ? rename_lts(lts1, rng, map)
                                           : quotient_lts(lts1, map);
                pair.second =
                    finalize(build_system(lts2, cfg, style, "u"), cfg.axiom_class);
                pair.related = true;
                pair.witness = graph_relation("s", "u", map);
            }
            return pair;
        } catch (const HorizonOverflowError&) {
        } catch (const GenerationExhaustedError&) {
        }
    }
    throw GenerationExhaustedError("no closed system pair found within the retry budget");
}

GeneratedTriple generate_triple(const GeneratorConfig& cfg) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::mt19937_64 rng(mix_seed(cfg.seed, 0x7000ull + attempt));
        Lts lts1 = random_lts(rng, cfg);
        TauStyle style = concrete_style(rng, cfg.tau_style);
        try {
            GeneratedTriple triple;
            triple.first = finalize(build_system(lts1, cfg, style, "s"), cfg.axiom_class);
            std::vector<int> map12;
            Lts lts2 = (rng() % 2 == 0) ? rename_lts(lts1, rng, map12)
                                        : quotient_lts(lts1, map12);
            triple.second =
                finalize(build_system(lts2, cfg, style, "u"), cfg.axiom_class);
            triple.witness12 = graph_relation("s", "u", map12);
            std::vector<int> map23;
            Lts lts3 = (rng() % 2 == 0) ? rename_lts(lts2, rng, map23)
                                        : quotient_lts(lts2, map23);
            triple.third =
                finalize(build_system(lts3, cfg, style, "v"), cfg.axiom_class);
            triple.witness23 = graph_relation("u", "v", map23);
            return triple;
        } catch (const HorizonOverflowError&) {
        } catch (const GenerationExhaustedError&) {
        }
    }
    throw GenerationExhaustedError("no closed system triple found within the retry budget");
}

Relation identity_relation(const StateSpacePhiSystem& system, RelationFlavor flavor) {
    Relation r;
    r.flavor = flavor;
    // Relations live on the flavor's reachable base: X_T for the
    // synchronous flavor, X_K otherwise.
    TimeIndexedStateSpaces spaces = time_indexed_spaces(system);
    const std::set<Value>& base = flavor == RelationFlavor::Synchronous
                                      ? spaces.all_internal
                                      : spaces.all_external;
    for (const Value& x : base) r.pairs.insert({x, x});
    return r;
}

std::optional<SuiteName> parse_suite_name(const std::string& text) {
    if (text == "lemma1") return SuiteName::Lemma1;
    if (text == "thm1") return SuiteName::Thm1;
    if (text == "thm2") return SuiteName::Thm2;
    if (text == "thm3") return SuiteName::Thm3;
    if (text == "thm4") return SuiteName::Thm4;
    if (text == "cor1") return SuiteName::Cor1;
    return std::nullopt;
}

std::string to_string(SuiteName name) {
    switch (name) {
        case SuiteName::Lemma1: return "lemma1";
        case SuiteName::Thm1: return "thm1";
        case SuiteName::Thm2: return "thm2";
        case SuiteName::Thm3: return "thm3";
        case SuiteName::Thm4: return "thm4";
        case SuiteName::Cor1: return "cor1";
    }
    return "?";
}

namespace {

struct TrialResult {
    int checks = 0;
    std::vector<std::string> failures;
};

Relation reflavor(const Relation& r, RelationFlavor flavor, Tick l = 0) {
    Relation out = r;
    out.flavor = flavor;
    out.l = l;
    return out;
}

std::string describe(const RelationVerdict& v) {
    if (v.accepted) return "accepted";
    std::string text = "rejected";
    if (v.failed_clause) text += " at clause " + to_string(*v.failed_clause);
    if (v.witness && !v.witness->detail.empty()) text += ": " + v.witness->detail;
    return text;
}

/// A conclusion that fails only because some quantifier ran off the finite
/// grid is not a counterexample; verdicts are certificates up to the
/// horizon.
bool holds(const RelationVerdict& v) { return v.accepted || v.boundary_truncated; }

void expect(TrialResult& result, const RelationVerdict& v, const std::string& what) {
    ++result.checks;
    if (!holds(v)) result.failures.push_back(what + " " + describe(v));
}

TrialResult lemma1_trial(const GeneratorConfig& cfg) {
    TrialResult result;
    GeneratorConfig c = cfg;
    c.axiom_class = AxiomClass::Asynchronous;
    // Every third trial exercises statement (iii): identity tau everywhere
    // and shared internal/external axes.
    const bool identity_case = cfg.seed % 3 == 0;
    if (identity_case) {
        c.tau_style = TauStyle::Identity;
        c.external_horizon = c.internal_horizon;
    }
    GeneratedPair pair = generate_pair(c);
    auto r0 = synthesize_greatest(pair.first, pair.second, RelationFlavor::LInitial, 0);
    if (!r0) return result;  // vacuous trial: no nu-initial relation exists
    expect(result,
           check_simulation(pair.first, pair.second,
                            reflavor(*r0, RelationFlavor::ExternallySynchronous)),
           "(i) ext-sync");
    expect(result,
           check_simulation(pair.first, pair.second,
                            reflavor(*r0, RelationFlavor::Asynchronous)),
           "(ii) async");
    if (identity_case && pair.first.internal_axis == pair.first.external_axis) {
        expect(result,
               check_simulation(pair.first, pair.second,
                                reflavor(*r0, RelationFlavor::Synchronous)),
               "(iii) sync");
    }
    return result;
}

TrialResult thm1_trial(const GeneratorConfig& cfg) {
    TrialResult result;
    GeneratorConfig c = cfg;
    c.axiom_class = AxiomClass::Asynchronous;
    GeneratedPair pair = generate_pair(c);
    auto r0 = synthesize_greatest(pair.first, pair.second, RelationFlavor::LInitial, 0);
    if (!r0) return result;
    RelationVerdict sim = check_simulation(pair.first, pair.second, *r0);
    InclusionVerdict incl = check_behavior_inclusion(pair.first, pair.second);
    ++result.checks;
    if (!incl.subset_1_in_2 && !sim.boundary_truncated)
        result.failures.push_back("(i) nu-initial simulation without behavior inclusion");
    RelationVerdict bisim = check_bisimulation(pair.first, pair.second, *r0);
    if (bisim.accepted) {
        ++result.checks;
        if (!incl.equal && !bisim.boundary_truncated)
            result.failures.push_back("(ii) nu-initial bisimulation without behavior equality");
    }
    return result;
}

TrialResult preorder_trial(const GeneratorConfig& cfg, AxiomClass cls,
                           const std::vector<std::pair<RelationFlavor, Tick>>& flavors) {
    TrialResult result;
    GeneratorConfig c = cfg;
    c.axiom_class = cls;
    StateSpacePhiSystem sys = generate_system(c);
    for (auto [flavor, l] : flavors) {
        Relation id = identity_relation(sys, flavor);
        id.l = l;
        expect(result, check_simulation(sys, sys, id),
               "reflexivity (" + to_string(flavor) + ") identity");
        RelationVerdict why;
        auto greatest = synthesize_greatest(sys, sys, flavor, l, &why);
        ++result.checks;
        if (!greatest) {
            result.failures.push_back("reflexivity (" + to_string(flavor) +
                                      ") synthesis found no relation: " + describe(why));
        } else {
            for (const auto& p : id.pairs) {
                if (!greatest->contains(p.first, p.second)) {
                    result.failures.push_back("reflexivity (" + to_string(flavor) +
                                              ") greatest relation misses (" +
                                              p.first.str() + ", " + p.second.str() + ")");
                    break;
                }
            }
        }
    }
    GeneratedTriple triple = generate_triple(c);
    for (auto [flavor, l] : flavors) {
        Relation r12, r23;
        if (flavor == RelationFlavor::Asynchronous || flavor == RelationFlavor::LInitial) {
            // Free transfer tests every occurrence pair, so any two accepted
            // relations compose; exercise the synthesized greatest ones.
            auto g12 = synthesize_greatest(triple.first, triple.second, flavor, l);
            auto g23 = synthesize_greatest(triple.second, triple.third, flavor, l);
            if (!g12 || !g23) continue;
            r12 = *g12;
            r23 = *g23;
        } else {
            // Synchronised transfer only tests pairs at a common instant, so
            // relations may carry pairs no context ever exercises; composing
            // through such a pair is unsound. Compose the generator's
            // functional witnesses instead — their middle state occurs at
            // every instant the outer states do.
            r12 = reflavor(triple.witness12, flavor, l);
            r23 = reflavor(triple.witness23, flavor, l);
            expect(result, check_simulation(triple.first, triple.second, r12),
                   "transitivity (" + to_string(flavor) + ") witness 1->2");
            expect(result, check_simulation(triple.second, triple.third, r23),
                   "transitivity (" + to_string(flavor) + ") witness 2->3");
        }
        Relation r13 = reflavor(compose(r12, r23), flavor, l);
        expect(result, check_simulation(triple.first, triple.third, r13),
               "transitivity (" + to_string(flavor) + ") composition");
    }
    return result;
}

TrialResult cor1_trial(const GeneratorConfig& cfg) {
    TrialResult result;
    GeneratorConfig c = cfg;
    c.axiom_class = AxiomClass::Asynchronous;
    const std::vector<std::pair<RelationFlavor, Tick>> flavors = {
        {RelationFlavor::Asynchronous, 0},
        {RelationFlavor::ExternallySynchronous, 0},
        {RelationFlavor::Synchronous, 0},
        {RelationFlavor::LInitial, 0},
    };
    StateSpacePhiSystem sys = generate_system(c);
    for (auto [flavor, l] : flavors) {
        Relation id = identity_relation(sys, flavor);
        id.l = l;
        expect(result, check_bisimulation(sys, sys, id),
               "reflexivity (" + to_string(flavor) + ") identity bisimulation");
    }
    GeneratedPair pair = generate_pair(c);
    for (auto [flavor, l] : flavors) {
        auto r12 = synthesize_greatest(pair.first, pair.second, flavor, l);
        if (!r12) continue;
        if (!check_bisimulation(pair.first, pair.second, *r12).accepted) continue;
        expect(result,
               check_bisimulation(pair.second, pair.first, inverse(*r12)),
               "symmetry (" + to_string(flavor) + ") inverse");
    }
    if (pair.related) {
        Relation rb = reflavor(pair.witness, RelationFlavor::Asynchronous);
        if (check_bisimulation(pair.first, pair.second, rb).accepted) {
            expect(result, check_bisimulation(pair.second, pair.first, inverse(rb)),
                   "symmetry (construction witness) inverse");
        }
    }
    GeneratedTriple triple = generate_triple(c);
    Relation w12 = reflavor(triple.witness12, RelationFlavor::Asynchronous);
    Relation w23 = reflavor(triple.witness23, RelationFlavor::Asynchronous);
    if (check_bisimulation(triple.first, triple.second, w12).accepted &&
        check_bisimulation(triple.second, triple.third, w23).accepted) {
        Relation r13 = reflavor(compose(w12, w23), RelationFlavor::Asynchronous);
        expect(result, check_bisimulation(triple.first, triple.third, r13),
               "transitivity (witness composition)");
    }
    return result;
}

TrialResult run_trial(SuiteName name, const GeneratorConfig& cfg) {
    switch (name) {
        case SuiteName::Lemma1: return lemma1_trial(cfg);
        case SuiteName::Thm1: return thm1_trial(cfg);
        case SuiteName::Thm2:
            return preorder_trial(cfg, AxiomClass::Asynchronous,
                                  {{RelationFlavor::Asynchronous, 0},
                                   {RelationFlavor::ExternallySynchronous, 0},
                                   {RelationFlavor::Synchronous, 0},
                                   {RelationFlavor::LInitial, 0}});
        case SuiteName::Thm3:
            return preorder_trial(cfg, AxiomClass::ExternallySynchronous,
                                  {{RelationFlavor::ExternallySynchronous, 0},
                                   {RelationFlavor::Synchronous, 0}});
        case SuiteName::Thm4:
            return preorder_trial(cfg, AxiomClass::Synchronous,
                                  {{RelationFlavor::Synchronous, 0}});
        case SuiteName::Cor1: return cor1_trial(cfg);
    }
    return {};
}

/// Retry the failing trial with smaller grids while it keeps failing; the
/// smallest still-failing configuration makes the most readable note.
std::string shrink_note(SuiteName name, GeneratorConfig cfg, std::string note) {
    for (;;) {
        GeneratorConfig smaller = cfg;
        if (smaller.internal_horizon > 2) {
            --smaller.internal_horizon;
            smaller.external_horizon =
                std::min(smaller.external_horizon, smaller.internal_horizon);
        } else if (smaller.max_states > 2) {
            --smaller.max_states;
        } else {
            break;
        }
        TrialResult again = run_trial(name, smaller);
        if (again.failures.empty()) break;
        cfg = smaller;
        note = again.failures.front();
    }
    std::ostringstream out;
    out << note << " [seed=" << cfg.seed << " states<=" << cfg.max_states
        << " horizon=" << cfg.internal_horizon << "/" << cfg.external_horizon << "]";
    return out.str();
}

}  // namespace

SuiteReport run_theorem_suite(SuiteName name, const GeneratorConfig& cfg, int trials) {
    if (trials < 1) throw PreconditionError("run_theorem_suite: trials must be >= 1");
    SuiteReport report;
    report.name = name;
    report.trials = trials;
    for (int trial = 0; trial < trials; ++trial) {
        GeneratorConfig tcfg = cfg;
        tcfg.seed = mix_seed(cfg.seed, 0xabcdull + static_cast<std::uint64_t>(trial));
        TrialResult result = run_trial(name, tcfg);
        report.checks += result.checks;
        if (result.failures.empty()) {
            ++report.passes;
        } else {
            ++report.failures;
            report.failure_notes.push_back(
                shrink_note(name, tcfg, result.failures.front()));
        }
    }
    return report;
}

}  // namespace tempora
