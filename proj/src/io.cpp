#include "tempora/io.hpp"

#include <fstream>
#include <sstream>



#include "tempora/errors.hpp"

namespace tempora::io {

namespace {

[[noreturn]] void schema_fail(const std::string& where, const std::string& what) {
    throw SchemaError(where + ": " + what);
}

const json& member(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) schema_fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) schema_fail(where, std::string("missing key '") + key + "'");
    return *it;
}

int int_member(const json& j, const char* key, const std::string& where) {
    const json& v = member(j, key, where);
    if (!v.is_number_integer()) schema_fail(where + "." + key, "expected an integer");
    return v.get<int>();
}

std::string string_member(const json& j, const char* key, const std::string& where) {
    const json& v = member(j, key, where);
    if (!v.is_string()) schema_fail(where + "." + key, "expected a string");
    return v.get<std::string>();
}

Rational rational_from(const json& j, const std::string& where) {
    if (!j.is_string()) schema_fail(where, "expected an exact \"p/q\" string");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        schema_fail(where, e.what());
    }
}

TimeAxis axis_from_json(const json& j, AxisKind kind, const std::string& where) {
    Rational step = rational_from(member(j, "step", where), where + ".step");
    int horizon = int_member(j, "horizon", where);
    try {
        return TimeAxis(step, horizon, kind);
    } catch (const std::exception& e) {
        schema_fail(where, e.what());
    }
}

json axis_to_json(const TimeAxis& axis) {
    return json{{"step", axis.step.str()}, {"horizon", axis.horizon}};
}

Signal signal_from_array(const json& j, const TimeAxis& axis, const ValueSpace& space,
                         const std::string& where) {
    if (!j.is_array()) schema_fail(where, "expected an array");
    if (static_cast<Tick>(j.size()) != axis.horizon + 1)
        schema_fail(where, "expected one entry per tick 0.." +
                               std::to_string(axis.horizon));
    Signal s(axis, space);
    for (Tick t = 0; t <= axis.horizon; ++t) {
        const json& cell = j[static_cast<std::size_t>(t)];
        if (cell.is_null()) continue;  // undefined tick
        try {
            s.set(t, value_from_json(cell, space, where + "[" + std::to_string(t) + "]"));
        } catch (const SchemaError&) {
            throw;
        } catch (const std::exception& e) {
            schema_fail(where + "[" + std::to_string(t) + "]", e.what());
        }
    }
    return s;
}

json signal_to_array(const Signal& s) {
    json out = json::array();
    for (Tick t = 0; t <= s.axis.horizon; ++t) {
        auto v = s.at(t);
        out.push_back(v ? value_to_json(*v) : json(nullptr));
    }
    return out;
}

TimeScaleTransformation tau_from_array(const json& j, const TimeAxis& internal_axis,
                                       const std::string& where) {
    if (!j.is_array()) schema_fail(where, "expected an array");
    if (static_cast<Tick>(j.size()) != internal_axis.horizon + 1)
        schema_fail(where, "expected one entry per internal tick");
    std::map<Tick, Tick> values;
    for (Tick t = 0; t <= internal_axis.horizon; ++t) {
        const json& cell = j[static_cast<std::size_t>(t)];
        if (cell.is_null()) continue;
        if (!cell.is_number_integer())
            schema_fail(where + "[" + std::to_string(t) + "]", "expected int or null");
        values[t] = cell.get<Tick>();
    }
    try {
        return TimeScaleTransformation(std::move(values));
    } catch (const std::exception& e) {
        schema_fail(where, e.what());
    }
}

json tau_to_array(const TimeScaleTransformation& tau, const TimeAxis& internal_axis) {
    json out = json::array();
    for (Tick t = 0; t <= internal_axis.horizon; ++t) {
        auto k = tau.up(t);
        out.push_back(k ? json(*k) : json(nullptr));
    }
    return out;
}

}  // namespace

json value_to_json(const Value& v) {
    if (v.is_symbol()) return v.symbol();
    if (v.is_rational()) return v.rational().str();
    json out = json::array();
    for (const Value& c : v.tuple()) out.push_back(value_to_json(c));
    return out;
}

Value value_from_json(const json& j, const ValueSpace& space, const std::string& where) {
    if (space.is_alphabet()) {
        if (!j.is_string()) schema_fail(where, "expected an alphabet symbol string");
        return Value(j.get<std::string>());
    }
    if (space.is_interval()) return Value(rational_from(j, where));
    const auto& components = space.as_product().components;
    if (!j.is_array() || j.size() != components.size())
        schema_fail(where, "expected a tuple of " + std::to_string(components.size()) +
                               " components");
    std::vector<Value> tuple;
    for (std::size_t i = 0; i < components.size(); ++i)
        tuple.push_back(value_from_json(j[i], components[i],
                                        where + "[" + std::to_string(i) + "]"));
    return Value(std::move(tuple));
}

json space_to_json(const ValueSpace& space) {
    if (space.is_alphabet())
        return json{{"kind", "alphabet"}, {"symbols", space.as_alphabet().symbols}};
    if (space.is_interval())
        return json{{"kind", "interval"},
                    {"lo", space.as_interval().lo.str()},
                    {"hi", space.as_interval().hi.str()}};
    json components = json::array();
    for (const ValueSpace& c : space.as_product().components)
        components.push_back(space_to_json(c));
    return json{{"kind", "product"}, {"components", components}};
}

ValueSpace space_from_json(const json& j, const std::string& where) {
    std::string kind = string_member(j, "kind", where);
    try {
        if (kind == "alphabet") {
            const json& symbols = member(j, "symbols", where);
            if (!symbols.is_array()) schema_fail(where + ".symbols", "expected an array");
            return ValueSpace::alphabet(symbols.get<std::vector<std::string>>());
        }
        if (kind == "interval")
            return ValueSpace::interval(
                rational_from(member(j, "lo", where), where + ".lo"),
                rational_from(member(j, "hi", where), where + ".hi"));
        if (kind == "product") {
            const json& components = member(j, "components", where);
            if (!components.is_array())
                schema_fail(where + ".components", "expected an array");
            std::vector<ValueSpace> spaces;
            for (std::size_t i = 0; i < components.size(); ++i)
                spaces.push_back(space_from_json(
                    components[i], where + ".components[" + std::to_string(i) + "]"));
            return ValueSpace::product(std::move(spaces));
        }
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception& e) {
        schema_fail(where, e.what());
    }
    schema_fail(where + ".kind", "unknown space kind '" + kind + "'");
}

json document_to_json(const SystemDocument& doc) {
    const StateSpacePhiSystem& sys = doc.system;
    json trajectories = json::array();
    for (std::size_t i = 0; i < sys.behavior.size(); ++i) {
        json phi = json::array();
        for (const PhiEntry& entry : sys.phi.of(i)) {
            phi.push_back(json{{"gamma", signal_to_array(entry.gamma)},
                               {"tau", tau_to_array(entry.tau, sys.internal_axis)}});
        }
        trajectories.push_back(json{{"id", sys.id_of(i)},
                                    {"w", signal_to_array(sys.behavior[i].w)},
                                    {"x", signal_to_array(sys.behavior[i].x)},
                                    {"phi", phi}});
    }
    json out{{"internal_axis", axis_to_json(sys.internal_axis)},
             {"external_axis", axis_to_json(sys.external_axis)},
             {"w_space", space_to_json(sys.w_space)},
             {"gamma_space", space_to_json(sys.gamma_space)},
             {"x_space", space_to_json(sys.x_space)},
             {"class", class_token(sys.axiom_class)},
             {"trajectories", trajectories}};
    if (doc.quantizer) out["quantizer"] = quantizer_to_json(*doc.quantizer);
    return out;
}

SystemDocument document_from_json(const json& j) {
    SystemDocument doc;
    StateSpacePhiSystem& sys = doc.system;
    sys.internal_axis =
        axis_from_json(member(j, "internal_axis", "$"), AxisKind::Internal,
                       "$.internal_axis");
    sys.external_axis =
        axis_from_json(member(j, "external_axis", "$"), AxisKind::External,
                       "$.external_axis");
    sys.w_space = space_from_json(member(j, "w_space", "$"), "$.w_space");
    sys.gamma_space = space_from_json(member(j, "gamma_space", "$"), "$.gamma_space");
    sys.x_space = space_from_json(member(j, "x_space", "$"), "$.x_space");
    if (j.contains("class")) {
        auto cls = parse_class(string_member(j, "class", "$"));
        if (!cls) schema_fail("$.class", "unknown class token");
        sys.axiom_class = *cls;
    }
    const json& trajectories = member(j, "trajectories", "$");
    if (!trajectories.is_array()) schema_fail("$.trajectories", "expected an array");
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
        const std::string where = "$.trajectories[" + std::to_string(i) + "]";
        const json& tj = trajectories[i];
        sys.trajectory_ids.push_back(string_member(tj, "id", where));
        Trajectory traj;
        traj.w = signal_from_array(member(tj, "w", where), sys.internal_axis,
                                   sys.w_space, where + ".w");
        traj.x = signal_from_array(member(tj, "x", where), sys.internal_axis,
                                   sys.x_space, where + ".x");
        sys.behavior.push_back(std::move(traj));
        const json& phi = member(tj, "phi", where);
        if (!phi.is_array()) schema_fail(where + ".phi", "expected an array");
        std::vector<PhiEntry> entries;
        for (std::size_t p = 0; p < phi.size(); ++p) {
            const std::string pwhere = where + ".phi[" + std::to_string(p) + "]";
            entries.push_back(PhiEntry{
                signal_from_array(member(phi[p], "gamma", pwhere), sys.external_axis,
                                  sys.gamma_space, pwhere + ".gamma"),
                tau_from_array(member(phi[p], "tau", pwhere), sys.internal_axis,
                               pwhere + ".tau")});
        }
        sys.phi.entries.push_back(std::move(entries));
    }
    if (j.contains("quantizer")) {
        QuantizerSpec spec = quantizer_from_json(j["quantizer"]);
        spec.external_axis = sys.external_axis;
        doc.quantizer = std::move(spec);
    }
    try {
        sys.validate();
    } catch (const std::exception& e) {
        schema_fail("$", e.what());
    }
    return doc;
}

SystemDocument load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path + ": cannot open file");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
    return document_from_json(j);
}

void save_document(const std::string& path, const SystemDocument& doc) {
    std::ofstream out(path);
    if (!out) throw SchemaError(path + ": cannot open file for writing");
    out << document_to_json(doc).dump(2) << "\n";
}

json relation_to_json(const Relation& r) {
    json pairs = json::array();
    for (const auto& [a, b] : r.pairs)
        pairs.push_back(json::array({value_to_json(a), value_to_json(b)}));
    json out{{"flavor", flavor_token(r.flavor)}, {"pairs", pairs}};
    if (r.flavor == RelationFlavor::LInitial) out["l"] = r.l;
    return out;
}

Relation relation_from_json(const json& j, const ValueSpace& left,
                            const ValueSpace& right) {
    Relation r;
    auto flavor = parse_flavor(string_member(j, "flavor", "$"));
    if (!flavor) schema_fail("$.flavor", "unknown flavor token");
    r.flavor = *flavor;
    if (j.contains("l")) {
        if (!j["l"].is_number_integer()) schema_fail("$.l", "expected an integer");
        r.l = j["l"].get<Tick>();
    }
    const json& pairs = member(j, "pairs", "$");
    if (!pairs.is_array()) schema_fail("$.pairs", "expected an array");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const std::string where = "$.pairs[" + std::to_string(i) + "]";
        const json& p = pairs[i];
        if (!p.is_array() || p.size() != 2) schema_fail(where, "expected a pair");
        r.pairs.insert({value_from_json(p[0], left, where + "[0]"),
                        value_from_json(p[1], right, where + "[1]")});
    }
    return r;
}

Relation load_relation(const std::string& path, const ValueSpace& left,
                       const ValueSpace& right) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path + ": cannot open file");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
    return relation_from_json(j, left, right);
}

void save_relation(const std::string& path, const Relation& r) {
    std::ofstream out(path);
    if (!out) throw SchemaError(path + ": cannot open file for writing");
    out << relation_to_json(r).dump(2) << "\n";
}

json quantizer_to_json(const QuantizerSpec& spec) {
    json cells = json::array();
    for (const QuantizerCell& cell : spec.cells) {
        cells.push_back(json{{"symbol", cell.symbol},
                             {"lo", cell.lo.str()},
                             {"hi", cell.hi.str()},
                             {"lo_open", cell.lo_open},
                             {"hi_open", cell.hi_open}});
    }
    json out{{"cells", cells},
             {"mode", spec.mode == QuantizerMode::PointToPoint ? "point-to-point"
                                                               : "set-to-point"},
             {"external_axis", axis_to_json(spec.external_axis)}};
    if (spec.repeat_period) out["repeat_period"] = spec.repeat_period->str();
    return out;
}

QuantizerSpec quantizer_from_json(const json& j) {
    QuantizerSpec spec;
    const json& cells = member(j, "cells", "$.quantizer");
    if (!cells.is_array()) schema_fail("$.quantizer.cells", "expected an array");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const std::string where = "$.quantizer.cells[" + std::to_string(i) + "]";
        const json& c = cells[i];
        QuantizerCell cell;
        cell.symbol = string_member(c, "symbol", where);
        cell.lo = rational_from(member(c, "lo", where), where + ".lo");
        cell.hi = rational_from(member(c, "hi", where), where + ".hi");
        if (c.contains("lo_open")) cell.lo_open = c["lo_open"].get<bool>();
        if (c.contains("hi_open")) cell.hi_open = c["hi_open"].get<bool>();
        spec.cells.push_back(std::move(cell));
    }
    std::string mode = string_member(j, "mode", "$.quantizer");
    if (mode == "point-to-point") {
        spec.mode = QuantizerMode::PointToPoint;
    } else if (mode == "set-to-point") {
        spec.mode = QuantizerMode::SetToPoint;
    } else {
        schema_fail("$.quantizer.mode", "unknown mode '" + mode + "'");
    }
    if (j.contains("repeat_period"))
        spec.repeat_period =
            rational_from(j["repeat_period"], "$.quantizer.repeat_period");
    if (j.contains("external_axis"))
        spec.external_axis = axis_from_json(j["external_axis"], AxisKind::External,
                                            "$.quantizer.external_axis");
    return spec;
}

QuantizerSpec load_quantizer(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path + ": cannot open file");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
    return quantizer_from_json(j);
}

Signal signal_from_csv(std::istream& in, const ValueSpace& space) {
    std::vector<std::pair<Rational, Rational>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (lineno == 1 && line.rfind("t,", 0) == 0) continue;  // header row
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw SchemaError("csv line " + std::to_string(lineno) +
                              ": expected 't,value'");
        try {
            rows.emplace_back(Rational::parse(line.substr(0, comma)),
                              Rational::parse(line.substr(comma + 1)));
        } catch (const std::exception& e) {
            throw SchemaError("csv line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (rows.empty()) throw SchemaError("csv: no data rows");
    Rational step = rows.size() > 1 ? rows[1].first - rows[0].first : Rational(1);
    if (!(Rational(0) < step)) throw SchemaError("csv: time column must increase");
    if (rows.size() < 2) throw SchemaError("csv: need at least two data rows");
    TimeAxis axis(step, static_cast<Tick>(rows.size()) - 1, AxisKind::Internal);
    Signal s(axis, space);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].first != axis.time_of(static_cast<Tick>(i)))
            throw SchemaError("csv row " + std::to_string(i) +
                              ": time off the uniform grid");
        s.set(static_cast<Tick>(i), Value(rows[i].second));
    }
    return s;
}

json suite_report_to_json(const SuiteReport& report) {
    return json{{"suite", to_string(report.name)},
                {"trials", report.trials},
                {"passes", report.passes},
                {"failures", report.failures},
                {"checks", report.checks},
                {"failure_notes", report.failure_notes}};
}

std::string flavor_token(RelationFlavor f) {
    switch (f) {
        case RelationFlavor::Asynchronous: return "async";
        case RelationFlavor::ExternallySynchronous: return "ext-sync";
        case RelationFlavor::Synchronous: return "sync";
        case RelationFlavor::LInitial: return "l-initial";
    }
    return "?";
}

std::optional<RelationFlavor> parse_flavor(const std::string& text) {
    if (text == "async") return RelationFlavor::Asynchronous;
    if (text == "ext-sync") return RelationFlavor::ExternallySynchronous;
    if (text == "sync") return RelationFlavor::Synchronous;
    if (text == "l-initial") return RelationFlavor::LInitial;
    return std::nullopt;
}

std::string class_token(AxiomClass c) {
    switch (c) {
        case AxiomClass::Asynchronous: return "async";
        case AxiomClass::ExternallySynchronous: return "ext-sync";
        case AxiomClass::Synchronous: return "sync";
    }
    return "?";
}

std::optional<AxiomClass> parse_class(const std::string& text) {
    if (text == "async") return AxiomClass::Asynchronous;
    if (text == "ext-sync") return AxiomClass::ExternallySynchronous;
    if (text == "sync") return AxiomClass::Synchronous;
    return std::nullopt;
}

}  // namespace tempora::io
