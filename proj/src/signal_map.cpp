#include "tempora/signal_map.hpp"

#include <algorithm>
#include <set>

#include "tempora/errors.hpp"
#include "tempora/system.hpp"

namespace tempora {

ValueSpace QuantizerSpec::gamma_space() const {
    std::vector<std::string> symbols;
    for (const auto& cell : cells)
        if (std::find(symbols.begin(), symbols.end(), cell.symbol) == symbols.end())
            symbols.push_back(cell.symbol);
    return ValueSpace::alphabet(std::move(symbols));
}

std::vector<std::string> QuantizerSpec::symbols_at(const Rational& v) const {
    std::vector<std::string> out;
    for (const auto& cell : cells)
        if (cell.contains(v)) out.push_back(cell.symbol);
    return out;
}

namespace {

const QuantizerCell& cell_of(const QuantizerSpec& spec, const std::string& symbol) {
    for (const auto& cell : spec.cells)
        if (cell.symbol == symbol) return cell;
    throw PreconditionError("unknown quantizer symbol " + symbol);
}

struct Branch {
    std::vector<Tick> events;          // tau_a preimages, events[k] -> k
    std::vector<std::string> symbols;  // gamma(k)
    bool done = false;
};

}  // namespace

std::vector<PhiEntry> quantize(const QuantizerSpec& spec, const Signal& w,
                               std::size_t branch_cap) {
    if (!w.total()) throw PreconditionError("quantize requires a total signal");
    if (!w.space.is_interval())
        throw PreconditionError("quantize requires a rational-interval signal");
    const Tick h = w.axis.horizon;
    for (Tick t = 0; t <= h; ++t)
        if (spec.symbols_at(w.at(t)->rational()).empty())
            throw UncoveredValueError("value " + w.at(t)->str() +
                                      " at tick " + std::to_string(t) +
                                      " lies in no quantizer cell");

    std::optional<Tick> dwell;
    if (spec.repeat_period) {
        Rational ticks = *spec.repeat_period / w.axis.step;
        if (!ticks.is_integer() || !(Rational(0) < ticks))
            throw PreconditionError(
                "repeat_period must be a positive multiple of the grid step");
        dwell = static_cast<Tick>(ticks.num());
    }

    std::vector<Branch> branches;
    for (const auto& sym : spec.symbols_at(w.at(0)->rational()))
        branches.push_back(Branch{{0}, {sym}, false});

    bool progress = true;
    while (progress) {
        progress = false;
        std::vector<Branch> next;
        for (auto& br : branches) {
            if (br.done || static_cast<Tick>(br.events.size()) - 1 >=
                                spec.external_axis.horizon) {
                br.done = true;
                next.push_back(br);
                continue;
            }
            const Tick prev = br.events.back();
            const QuantizerCell& current = cell_of(spec, br.symbols.back());
            std::optional<Tick> exit;
            for (Tick t = prev; t <= h; ++t) {
                if (!current.contains(w.at(t)->rational())) {
                    exit = t;
                    break;
                }
            }
            std::optional<Tick> repeat;
            if (dwell && prev + *dwell <= h) repeat = prev + *dwell;

            if (exit && (!repeat || *exit <= *repeat)) {
                for (const auto& sym : spec.symbols_at(w.at(*exit)->rational())) {
                    Branch nb = br;
                    nb.events.push_back(*exit);
                    nb.symbols.push_back(sym);
                    next.push_back(nb);
                }
                progress = true;
            } else if (repeat) {
                Branch nb = br;
                nb.events.push_back(*repeat);
                nb.symbols.push_back(nb.symbols.back());  // re-emitted symbol
                next.push_back(nb);
                progress = true;
            } else {
                br.done = true;
                next.push_back(br);
            }
        }
        branches = std::move(next);
        if (branches.size() > branch_cap)
            throw BranchCapError("quantizer branching exceeded cap of " +
                                 std::to_string(branch_cap));
    }

    std::vector<PhiEntry> out;
    ValueSpace gamma = spec.gamma_space();
    for (const auto& br : branches) {
        // A signal that never triggers an event generates no right-unbounded
        // external signal: the branch is mapped to the empty set.
        if (br.events.size() < 2 && !spec.repeat_period) continue;
        PhiEntry entry;
        entry.gamma = Signal(spec.external_axis, gamma);
        for (std::size_t k = 0; k < br.symbols.size(); ++k)
            entry.gamma.set(static_cast<Tick>(k), Value(br.symbols[k]));
        std::map<Tick, Tick> tau;
        if (spec.mode == QuantizerMode::PointToPoint) {
            for (std::size_t k = 0; k < br.events.size(); ++k)
                tau[br.events[k]] = static_cast<Tick>(k);
        } else {
            for (std::size_t k = 0; k < br.events.size(); ++k) {
                Tick end = k + 1 < br.events.size() ? br.events[k + 1] - 1 : h;
                for (Tick t = br.events[k]; t <= end; ++t) tau[t] = static_cast<Tick>(k);
            }
        }
        entry.tau = TimeScaleTransformation(std::move(tau));
        if (std::find(out.begin(), out.end(), entry) == out.end())
            out.push_back(std::move(entry));
    }
    return out;
}

PhiEntry projection_map(const Signal& w, std::size_t first, std::size_t last) {
    PhiEntry entry;
    entry.gamma = project_range(w, first, last);
    entry.gamma.axis.kind = AxisKind::External;
    std::map<Tick, Tick> tau;
    for (const auto& [t, v] : w.values) tau[t] = t;
    entry.tau = TimeScaleTransformation(std::move(tau));
    return entry;
}

SignalMapTable projection_table(const std::vector<Trajectory>& behavior,
                                std::size_t first, std::size_t last) {
    SignalMapTable table;
    for (const auto& tr : behavior) table.entries.push_back({projection_map(tr.w, first, last)});
    return table;
}

namespace {

/// Largest external tick attained on [0, t]; -1 when tau has no event yet.
Tick attained_external(const TimeScaleTransformation& tau, Tick t) {
    Tick best = -1;
    for (const auto& [s, k] : tau.values()) {
        if (s > t) break;
        best = std::max(best, k);
    }
    return best;
}

}  // namespace

NonanticipationVerdict check_nonanticipation(const StateSpacePhiSystem& system) {
    const Tick h = system.internal_axis.horizon;
    for (std::size_t i = 0; i < system.behavior.size(); ++i) {
        for (std::size_t j = 0; j < system.behavior.size(); ++j) {
            if (i == j) continue;
            for (Tick t = 0; t <= h; ++t) {
                if (!detail::agree_upto(system.behavior[i].w, system.behavior[j].w, t))
                    continue;
                for (std::size_t a = 0; a < system.phi.entries[i].size(); ++a) {
                    const auto& e = system.phi.entries[i][a];
                    Tick kt = attained_external(e.tau, t);
                    bool matched = false;
                    for (const auto& cand : system.phi.entries[j]) {
                        if (!detail::tau_agree_upto(e.tau, cand.tau, t)) continue;
                        if (!detail::agree_upto(e.gamma, cand.gamma, kt)) continue;
                        matched = true;
                        break;
                    }
                    if (!matched)
                        return {false, NonanticipationWitness{i, j, t, a}};
                }
            }
        }
    }
    return {true, std::nullopt};
}

}  // namespace tempora
