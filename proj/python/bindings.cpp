#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tempora/errors.hpp"
#include "tempora/io.hpp"

namespace py = pybind11;

namespace {

using tempora::io::SystemDocument;
using tempora::io::json;

SystemDocument loads_document(const std::string& text) {
    return tempora::io::document_from_json(json::parse(text));
}

std::string dumps_document(const SystemDocument& doc) {
    return tempora::io::document_to_json(doc).dump();
}

std::string check_axiom(const SystemDocument& doc, const std::string& cls_token) {
    auto cls = tempora::io::parse_class(cls_token);
    if (!cls) throw tempora::SchemaError("unknown class '" + cls_token + "'");
    tempora::AxiomVerdict v = tempora::check_state_axiom(doc.system, *cls);
    json out{{"accepted", v.accepted}, {"boundary_truncated", v.boundary_truncated}};
    if (v.witness) out["reason"] = v.witness->reason;
    return out.dump();
}

std::string external_behavior_of(const SystemDocument& doc) {
    json out = json::array();
    for (const tempora::Signal& gamma : tempora::external_behavior(doc.system)) {
        json row = json::array();
        for (tempora::Tick k = 0; k <= gamma.axis.horizon; ++k) {
            auto v = gamma.at(k);
            row.push_back(v ? tempora::io::value_to_json(*v) : json(nullptr));
        }
        out.push_back(row);
    }
    return out.dump();
}

json verdict_to_json(const tempora::RelationVerdict& v) {
    json out{{"accepted", v.accepted}, {"boundary_truncated", v.boundary_truncated}};
    if (v.failed_clause) out["failed_clause"] = to_string(*v.failed_clause);
    if (v.witness && !v.witness->detail.empty()) out["detail"] = v.witness->detail;
    return out;
}

tempora::Relation relation_of(const SystemDocument& doc1, const SystemDocument& doc2,
                              const std::string& relation_text) {
    return tempora::io::relation_from_json(json::parse(relation_text),
                                           doc1.system.x_space, doc2.system.x_space);
}

std::string check_relation(const SystemDocument& doc1, const SystemDocument& doc2,
                           const std::string& relation_text) {
    tempora::Relation r = relation_of(doc1, doc2, relation_text);
    return verdict_to_json(tempora::check_simulation(doc1.system, doc2.system, r))
        .dump();
}

std::string check_bisim(const SystemDocument& doc1, const SystemDocument& doc2,
                        const std::string& relation_text) {
    tempora::Relation r = relation_of(doc1, doc2, relation_text);
    return verdict_to_json(tempora::check_bisimulation(doc1.system, doc2.system, r))
        .dump();
}

std::string synthesize(const SystemDocument& doc1, const SystemDocument& doc2,
                       const std::string& flavor_token, tempora::Tick l) {
    auto flavor = tempora::io::parse_flavor(flavor_token);
    if (!flavor) throw tempora::SchemaError("unknown flavor '" + flavor_token + "'");
    tempora::RelationVerdict why;
    auto r = tempora::synthesize_greatest(doc1.system, doc2.system, *flavor, l, &why);
    json out{{"found", r.has_value()}};
    if (r) {
        out["relation"] = tempora::io::relation_to_json(*r);
    } else {
        out["cover"] = verdict_to_json(why);
    }
    return out.dump();
}

std::string inclusion(const SystemDocument& doc1, const SystemDocument& doc2) {
    tempora::InclusionVerdict v =
        tempora::check_behavior_inclusion(doc1.system, doc2.system);
    return json{{"subset_1_in_2", v.subset_1_in_2},
                {"subset_2_in_1", v.subset_2_in_1},
                {"equal", v.equal}}
        .dump();
}

std::string run_suite(const std::string& suite_token, std::uint64_t seed, int trials) {
    auto suite = tempora::parse_suite_name(suite_token);
    if (!suite) throw tempora::SchemaError("unknown suite '" + suite_token + "'");
    tempora::GeneratorConfig cfg;
    cfg.seed = seed;
    return tempora::io::suite_report_to_json(
               tempora::run_theorem_suite(*suite, cfg, trials))
        .dump();
}

}  // namespace

PYBIND11_MODULE(_tempora, m) {
    m.doc() = "core bindings: system documents, relation checks, synthesis, suites";

    // Translators run newest-first: keep the base class first so the derived
    // SchemaError is matched before the generic TemporaError.
    py::register_exception<tempora::Error>(m, "TemporaError");
    py::register_exception<tempora::SchemaError>(m, "SchemaError");

    py::class_<SystemDocument>(m, "SystemDocument")
        .def_property_readonly("trajectory_count",
                               [](const SystemDocument& doc) {
                                   return doc.system.behavior.size();
                               })
        .def_property_readonly("internal_horizon",
                               [](const SystemDocument& doc) {
                                   return doc.system.internal_axis.horizon;
                               })
        .def_property_readonly("external_horizon", [](const SystemDocument& doc) {
            return doc.system.external_axis.horizon;
        });

    m.def("load_document", &tempora::io::load_document, py::arg("path"));
    m.def("loads_document", &loads_document, py::arg("text"));
    m.def("dumps_document", &dumps_document, py::arg("document"));
    m.def("check_axiom", &check_axiom, py::arg("document"), py::arg("cls") = "async");
    m.def("external_behavior", &external_behavior_of, py::arg("document"));
    m.def("check_relation", &check_relation, py::arg("document1"), py::arg("document2"),
          py::arg("relation"));
    m.def("check_bisimulation", &check_bisim, py::arg("document1"), py::arg("document2"),
          py::arg("relation"));
    m.def("synthesize", &synthesize, py::arg("document1"), py::arg("document2"),
          py::arg("flavor"), py::arg("l") = 0);
    m.def("inclusion", &inclusion, py::arg("document1"), py::arg("document2"));
    m.def("run_suite", &run_suite, py::arg("suite"), py::arg("seed") = 0,
          py::arg("trials") = 10);
}
