#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "tempora/errors.hpp"
#include "tempora/signal_map.hpp"
#include "tempora/system.hpp"

using namespace tempora;

namespace {

// The four cover cells of the running example: I_q1=[0,11), I_q2=(9,21),
// I_q3=(19,31), I_q4=(29,40]. Neighbors overlap on width-2 open strips.
QuantizerSpec example_cells(QuantizerMode mode, Tick external_horizon = 4) {
    QuantizerSpec spec;
    spec.cells = {
        {"q1", Rational(0), Rational(11), false, true},
        {"q2", Rational(9), Rational(21), true, true},
        {"q3", Rational(19), Rational(31), true, true},
        {"q4", Rational(29), Rational(40), true, false},
    };
    spec.mode = mode;
    spec.external_axis = TimeAxis(Rational(1), external_horizon, AxisKind::External);
    return spec;
}

Signal ramp_signal(Tick horizon, Rational slope) {
    TimeAxis axis(Rational(1), horizon, AxisKind::Internal);
    Signal w(axis, ValueSpace::interval(Rational(0), Rational(40)));
    for (Tick t = 0; t <= horizon; ++t) w.set(t, Value(slope * Rational(t)));
    return w;
}

Signal interval_signal(std::vector<Rational> values) {
    TimeAxis axis(Rational(1), static_cast<Tick>(values.size()) - 1,
                  AxisKind::Internal);
    Signal w(axis, ValueSpace::interval(Rational(0), Rational(40)));
    for (std::size_t i = 0; i < values.size(); ++i)
        w.set(static_cast<Tick>(i), Value(values[i]));
    return w;
}

struct OracleBranch {
    std::vector<Tick> events;
    std::vector<std::string> symbols;
};

/// Independent recursive transcription of the event rule: the next event is
/// the least grid tick at or after the previous one whose value has left the
/// current cell (or the dwell repeat, whichever comes first).
void oracle_extend(const QuantizerSpec& spec, const Signal& w, OracleBranch branch,
                   std::vector<OracleBranch>& out) {
    if (static_cast<Tick>(branch.events.size()) - 1 >= spec.external_axis.horizon) {
        out.push_back(std::move(branch));
        return;
    }
    const QuantizerCell* cell = nullptr;
    for (const auto& c : spec.cells)
        if (c.symbol == branch.symbols.back() && !cell) cell = &c;
    REQUIRE(cell != nullptr);
    std::optional<Tick> exit_tick;
    for (Tick t = branch.events.back(); t <= w.axis.horizon; ++t) {
        if (!cell->contains(w.at(t)->rational())) {
            exit_tick = t;
            break;
        }
    }
    std::optional<Tick> repeat_tick;
    if (spec.repeat_period) {
        Rational ticks = *spec.repeat_period / w.axis.step;
        Tick dwell = static_cast<Tick>(ticks.num());
        if (branch.events.back() + dwell <= w.axis.horizon)
            repeat_tick = branch.events.back() + dwell;
    }
    if (exit_tick && (!repeat_tick || *exit_tick <= *repeat_tick)) {
        for (const auto& sym : spec.symbols_at(w.at(*exit_tick)->rational())) {
            OracleBranch next = branch;
            next.events.push_back(*exit_tick);
            next.symbols.push_back(sym);
            oracle_extend(spec, w, std::move(next), out);
        }
    } else if (repeat_tick) {
        branch.events.push_back(*repeat_tick);
        branch.symbols.push_back(branch.symbols.back());
        oracle_extend(spec, w, std::move(branch), out);
    } else {
        out.push_back(std::move(branch));
    }
}

std::vector<PhiEntry> oracle_quantize(const QuantizerSpec& spec, const Signal& w) {
    std::vector<OracleBranch> branches;
    for (const auto& sym : spec.symbols_at(w.at(0)->rational()))
        oracle_extend(spec, w, OracleBranch{{0}, {sym}}, branches);
    std::vector<PhiEntry> out;
    for (const auto& br : branches) {
        if (br.events.size() < 2 && !spec.repeat_period) continue;
        PhiEntry entry;
        entry.gamma = Signal(spec.external_axis, spec.gamma_space());
        for (std::size_t k = 0; k < br.symbols.size(); ++k)
            entry.gamma.set(static_cast<Tick>(k), Value(br.symbols[k]));
        std::map<Tick, Tick> tau;
        for (std::size_t k = 0; k < br.events.size(); ++k) {
            if (spec.mode == QuantizerMode::PointToPoint) {
                tau[br.events[k]] = static_cast<Tick>(k);
            } else {
                Tick end = k + 1 < br.events.size() ? br.events[k + 1] - 1
                                                    : w.axis.horizon;
                for (Tick t = br.events[k]; t <= end; ++t)
                    tau[t] = static_cast<Tick>(k);
            }
        }
        entry.tau = TimeScaleTransformation(std::move(tau));
        if (std::find(out.begin(), out.end(), entry) == out.end())
            out.push_back(std::move(entry));
    }
    return out;
}

bool same_entry_set(std::vector<PhiEntry> a, std::vector<PhiEntry> b) {
    auto lt = [](const PhiEntry& x, const PhiEntry& y) { return x < y; };
    std::sort(a.begin(), a.end(), lt);
    std::sort(b.begin(), b.end(), lt);
    return a == b;
}

}  // namespace

TEST_CASE("ramp through all four cells, point-to-point") {
    auto spec = example_cells(QuantizerMode::PointToPoint);
    Signal w = ramp_signal(8, Rational(5));  // 0,5,10,...,40
    auto entries = quantize(spec, w);
    REQUIRE(entries.size() == 1);
    const PhiEntry& e = entries[0];
    CHECK(e.gamma.at(0) == Value("q1"));
    CHECK(e.gamma.at(1) == Value("q2"));
    CHECK(e.gamma.at(2) == Value("q3"));
    CHECK(e.gamma.at(3) == Value("q4"));
    CHECK(e.tau.external_reach() == 3);
    // First crossing out of [0,11) is w(3)=15 (w(2)=10 is still inside).
    CHECK(inverse_tst(e.tau, 1) == std::vector<Tick>{3});
    CHECK(inverse_tst(e.tau, 0) == std::vector<Tick>{0});
    CHECK(inverse_tst(e.tau, 2) == std::vector<Tick>{5});
    CHECK(inverse_tst(e.tau, 3) == std::vector<Tick>{7});
    CHECK(same_entry_set(entries, oracle_quantize(spec, w)));
}

TEST_CASE("ramp through all four cells, set-to-point blocks") {
    auto spec = example_cells(QuantizerMode::SetToPoint);
    Signal w = ramp_signal(8, Rational(5));
    auto entries = quantize(spec, w);
    REQUIRE(entries.size() == 1);
    const PhiEntry& e = entries[0];
    CHECK(inverse_tst(e.tau, 0) == std::vector<Tick>{0, 1, 2});
    CHECK(inverse_tst(e.tau, 1) == std::vector<Tick>{3, 4});
    CHECK(inverse_tst(e.tau, 2) == std::vector<Tick>{5, 6});
    CHECK(inverse_tst(e.tau, 3) == std::vector<Tick>{7, 8});
    CHECK(same_entry_set(entries, oracle_quantize(spec, w)));
}

TEST_CASE("a signal that never exits its cell maps to the empty set") {
    auto spec = example_cells(QuantizerMode::PointToPoint);
    Signal w = interval_signal({Rational(5), Rational(5), Rational(5), Rational(5)});
    CHECK(quantize(spec, w).empty());
}

TEST_CASE("overlap at the start produces one branch per membership") {
    auto spec = example_cells(QuantizerMode::PointToPoint);
    // w(0)=10 sits in I_q1 ∩ I_q2; the ramp then leaves both for I_q3.
    Signal w = interval_signal({Rational(10), Rational(25)});
    auto entries = quantize(spec, w);
    REQUIRE(entries.size() == 2);
    std::set<std::string> first_symbols;
    for (const auto& e : entries) {
        first_symbols.insert(e.gamma.at(0)->symbol());
        CHECK(e.gamma.at(1) == Value("q3"));
        CHECK(inverse_tst(e.tau, 1) == std::vector<Tick>{1});
    }
    CHECK(first_symbols == std::set<std::string>{"q1", "q2"});
    CHECK(same_entry_set(entries, oracle_quantize(spec, w)));
}

TEST_CASE("dwell repeat re-emits the current symbol") {
    auto spec = example_cells(QuantizerMode::PointToPoint);
    spec.repeat_period = Rational(2);
    Signal w = interval_signal({Rational(5), Rational(5), Rational(5), Rational(5),
                                Rational(5)});
    auto entries = quantize(spec, w);
    REQUIRE(entries.size() == 1);
    const PhiEntry& e = entries[0];
    CHECK(e.tau.external_reach() == 2);
    for (Tick k = 0; k <= 2; ++k) {
        CHECK(e.gamma.at(k) == Value("q1"));
        CHECK(inverse_tst(e.tau, k) == std::vector<Tick>{2 * k});
    }
    CHECK(same_entry_set(entries, oracle_quantize(spec, w)));
}

TEST_CASE("cover gaps and branch caps are named errors") {
    auto spec = example_cells(QuantizerMode::PointToPoint);
    Signal w(TimeAxis(Rational(1), 1), ValueSpace::interval(Rational(0), Rational(99)));
    w.set(0, Value(Rational(5)));
    w.set(1, Value(Rational(45)));
    CHECK_THROWS_AS(quantize(spec, w), UncoveredValueError);

    Signal overlap = interval_signal({Rational(10), Rational(25)});
    CHECK_THROWS_AS(quantize(spec, overlap, 1), BranchCapError);

    Signal partial(TimeAxis(Rational(1), 2), ValueSpace::interval(Rational(0), Rational(40)));
    partial.set(0, Value(Rational(5)));
    CHECK_THROWS_AS(quantize(spec, partial), PreconditionError);
}

TEST_CASE("random signals agree with the oracle and the event rule") {
    std::mt19937_64 rng(20210405);
    auto p2p = example_cells(QuantizerMode::PointToPoint);
    auto s2p = example_cells(QuantizerMode::SetToPoint);
    for (int trial = 0; trial < 150; ++trial) {
        std::vector<Rational> values;
        Tick h = 3 + static_cast<Tick>(rng() % 6);
        for (Tick t = 0; t <= h; ++t) values.push_back(Rational(rng() % 41));
        Signal w = interval_signal(values);
        for (const auto* spec : {&p2p, &s2p}) {
            auto entries = quantize(*spec, w, 256);
            CHECK(same_entry_set(entries, oracle_quantize(*spec, w)));
            for (const auto& e : entries) {
                for (Tick k = 0; k <= e.tau.external_reach(); ++k) {
                    auto pre = inverse_tst(e.tau, k);
                    if (spec->mode == QuantizerMode::PointToPoint) {
                        CHECK(pre.size() == 1);
                    } else {
                        // Consecutive half-open blocks partition an initial
                        // segment of the grid.
                        for (std::size_t i = 1; i < pre.size(); ++i)
                            CHECK(pre[i] == pre[i - 1] + 1);
                    }
                    if (k == 0) CHECK(pre.front() == 0);
                    // Event rule: the block start left the previous cell and
                    // carries a symbol containing the value there.
                    Tick start = pre.front();
                    Rational v = w.at(start)->rational();
                    auto syms = spec->symbols_at(v);
                    CHECK(std::find(syms.begin(), syms.end(),
                                    e.gamma.at(k)->symbol()) != syms.end());
                    if (k > 0) {
                        const auto prev_sym = e.gamma.at(k - 1)->symbol();
                        for (const auto& cell : spec->cells)
                            if (cell.symbol == prev_sym)
                                CHECK_FALSE(cell.contains(v));
                    }
                }
            }
        }
    }
}

TEST_CASE("disjoint cells quantize deterministically") {
    QuantizerSpec spec;
    spec.cells = {
        {"q1", Rational(0), Rational(10), false, true},
        {"q2", Rational(10), Rational(20), false, true},
        {"q3", Rational(20), Rational(30), false, true},
        {"q4", Rational(30), Rational(40), false, false},
    };
    spec.mode = QuantizerMode::PointToPoint;
    spec.external_axis = TimeAxis(Rational(1), 4, AxisKind::External);
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Rational> values;
        for (Tick t = 0; t <= 6; ++t) values.push_back(Rational(rng() % 41));
        CHECK(quantize(spec, interval_signal(values)).size() <= 1);
    }
}

TEST_CASE("projection maps") {
    auto uy = ValueSpace::product({ValueSpace::alphabet({"u0", "u1"}),
                                   ValueSpace::alphabet({"y0", "y1"})});
    TimeAxis axis(Rational(1), 3);
    Signal w(axis, uy);
    for (Tick t = 0; t <= 3; ++t)
        w.set(t, Value({Value(t % 2 ? "u1" : "u0"), Value(t % 2 ? "y0" : "y1")}));
    PhiEntry entry = projection_map(w, 1, 1);
    CHECK(entry.gamma.at(0) == Value("y1"));
    CHECK(entry.gamma.at(3) == Value("y0"));
    CHECK(entry.tau == TimeScaleTransformation::identity(3));

    PhiEntry pair = projection_map(w, 0, 1);
    CHECK(pair.gamma.at(2) == Value({Value("u0"), Value("y1")}));

    PhiEntry empty = projection_map(Signal(axis, uy), 0, 0);
    CHECK(empty.gamma.empty_domain());
    CHECK(empty.tau.empty());
}

TEST_CASE("non-anticipation of projection and quantizer maps") {
    // Three rational-valued inputs, two agreeing on a strict prefix.
    Signal stay = interval_signal({Rational(5), Rational(5), Rational(5)});
    Signal leave = interval_signal({Rational(5), Rational(5), Rational(15)});

    StateSpacePhiSystem sys;
    sys.internal_axis = stay.axis;
    sys.external_axis = TimeAxis(Rational(1), 4, AxisKind::External);
    sys.w_space = stay.space;
    sys.x_space = ValueSpace::alphabet({"s"});
    auto spec = example_cells(QuantizerMode::PointToPoint);
    spec.repeat_period = Rational(1);
    sys.gamma_space = spec.gamma_space();
    for (const Signal& w : {stay, leave}) {
        Trajectory tr;
        tr.w = w;
        tr.x = Signal(sys.internal_axis, sys.x_space);
        for (Tick t = 0; t <= sys.internal_axis.horizon; ++t) tr.x.set(t, Value("s"));
        sys.behavior.push_back(tr);
        sys.phi.entries.push_back(quantize(spec, w));
    }
    sys.validate();
    CHECK(check_nonanticipation(sys).accepted);

    // Replacing the dwell branch of the staying input with "repeat q1 because
    // the future never leaves I_q1" decides from the future: rejected.
    StateSpacePhiSystem anticipating = sys;
    PhiEntry clairvoyant;
    clairvoyant.gamma = Signal(sys.external_axis, sys.gamma_space);
    clairvoyant.gamma.set(0, Value("q1"));
    clairvoyant.gamma.set(1, Value("q1"));
    clairvoyant.gamma.set(2, Value("q1"));
    clairvoyant.tau = TimeScaleTransformation(std::map<Tick, Tick>{{0, 0}, {1, 1}, {2, 2}});
    anticipating.phi.entries[0] = {clairvoyant};
    anticipating.phi.entries[1] = {PhiEntry{
        [&] {
            Signal g(sys.external_axis, sys.gamma_space);
            g.set(0, Value("q1"));
            g.set(1, Value("q2"));
            return g;
        }(),
        TimeScaleTransformation(std::map<Tick, Tick>{{0, 0}, {2, 1}})}};
    auto verdict = check_nonanticipation(anticipating);
    CHECK_FALSE(verdict.accepted);
    REQUIRE(verdict.witness.has_value());
    CHECK(verdict.witness->t >= 1);
}
