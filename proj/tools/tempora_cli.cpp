#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tempora/errors.hpp"
#include "tempora/io.hpp"

namespace {

using tempora::io::json;

struct CommonOptions {
    bool as_json = false;
    bool horizon_note = false;
};

std::size_t branch_cap_from_env() {
    const char* raw = std::getenv("TEMPORA_BRANCH_CAP");
    if (!raw) return 64;
    char* end = nullptr;
    long value = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || value < 1)
        throw tempora::SchemaError("TEMPORA_BRANCH_CAP must be a positive integer");
    return static_cast<std::size_t>(value);
}

std::string horizon_note(const tempora::StateSpacePhiSystem& sys) {
    return "verdicts are certificates up to internal tick " +
           std::to_string(sys.internal_axis.horizon) + " and external tick " +
           std::to_string(sys.external_axis.horizon);
}

void emit(const CommonOptions& opts, const json& report, const std::string& text) {
    if (opts.as_json) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << text << "\n";
    }
}

json witness_to_json(const tempora::RelationWitness& w) {
    json out{{"trajectory1", w.trajectory1}, {"trajectory2", w.trajectory2},
             {"phi1", w.phi1},               {"phi2", w.phi2},
             {"t1", w.t1},                   {"t2", w.t2},
             {"k1", w.k1},                   {"k2", w.k2},
             {"detail", w.detail}};
    if (w.state1) out["state1"] = tempora::io::value_to_json(*w.state1);
    if (w.state2) out["state2"] = tempora::io::value_to_json(*w.state2);
    return out;
}

json relation_verdict_to_json(const tempora::RelationVerdict& v) {
    json out{{"accepted", v.accepted}, {"boundary_truncated", v.boundary_truncated}};
    out["failed_clauses"] = json::array();
    if (v.failed_clause) out["failed_clauses"].push_back(to_string(*v.failed_clause));
    if (v.witness) out["witness"] = witness_to_json(*v.witness);
    return out;
}

std::string relation_verdict_text(const tempora::RelationVerdict& v) {
    if (v.accepted)
        return v.boundary_truncated ? "accepted (truncated at the horizon)" : "accepted";
    std::string text = "rejected";
    if (v.failed_clause) text += " at clause " + to_string(*v.failed_clause);
    if (v.witness && !v.witness->detail.empty()) text += ": " + v.witness->detail;
    return text;
}

int finish(const CommonOptions& opts, const tempora::StateSpacePhiSystem& sys,
           json report, const std::string& text, bool accepted) {
    if (opts.horizon_note) {
        report["horizon_note"] = horizon_note(sys);
        emit(opts, report, text + "\n" + horizon_note(sys));
    } else {
        emit(opts, report, text);
    }
    return accepted ? 0 : 1;
}

int cmd_validate(const CommonOptions& opts, const std::string& path) {
    tempora::io::SystemDocument doc = tempora::io::load_document(path);
    json report{{"command", "validate"}, {"path", path}, {"accepted", true},
                {"trajectories", doc.system.behavior.size()}};
    return finish(opts, doc.system, report, "valid system document", true);
}

int cmd_check_axiom(const CommonOptions& opts, const std::string& path,
                    const std::string& cls_token) {
    tempora::io::SystemDocument doc = tempora::io::load_document(path);
    tempora::AxiomClass cls = doc.system.axiom_class;
    if (!cls_token.empty()) {
        auto parsed = tempora::io::parse_class(cls_token);
        if (!parsed) throw tempora::SchemaError("unknown class '" + cls_token + "'");
        cls = *parsed;
    }
    tempora::AxiomVerdict v = tempora::check_state_axiom(doc.system, cls);
    json report{{"command", "check-axiom"},
                {"class", tempora::io::class_token(cls)},
                {"accepted", v.accepted},
                {"boundary_truncated", v.boundary_truncated}};
    std::string text = v.accepted ? "state axiom Eq.(3) holds"
                                  : "state axiom Eq.(3) violated";
    if (!v.accepted && v.witness) {
        report["witness"] = json{{"trajectory1", v.witness->trajectory1},
                                 {"trajectory2", v.witness->trajectory2},
                                 {"t1", v.witness->t1},
                                 {"t2", v.witness->t2},
                                 {"phi1", v.witness->phi1},
                                 {"phi2", v.witness->phi2},
                                 {"reason", v.witness->reason}};
        text += ": " + v.witness->reason;
    }
    return finish(opts, doc.system, report, text, v.accepted);
}

int cmd_external_behavior(const CommonOptions& opts, const std::string& path) {
    tempora::io::SystemDocument doc = tempora::io::load_document(path);
    auto behavior = tempora::external_behavior(doc.system);
    json gammas = json::array();
    std::string text = "external behavior: " + std::to_string(behavior.size()) +
                       " signal(s)";
    for (const tempora::Signal& gamma : behavior) {
        json row = json::array();
        for (tempora::Tick k = 0; k <= gamma.axis.horizon; ++k) {
            auto v = gamma.at(k);
            row.push_back(v ? tempora::io::value_to_json(*v) : json(nullptr));
        }
        gammas.push_back(row);
        text += "\n  " + row.dump();
    }
    json report{{"command", "external-behavior"}, {"gammas", gammas}};
    return finish(opts, doc.system, report, text, true);
}

int cmd_check_relation(const CommonOptions& opts, const std::string& path1,
                       const std::string& path2, const std::string& relation_path,
                       const std::string& flavor_token, int l, bool l_given) {
    tempora::io::SystemDocument doc1 = tempora::io::load_document(path1);
    tempora::io::SystemDocument doc2 = tempora::io::load_document(path2);
    tempora::Relation r = tempora::io::load_relation(relation_path, doc1.system.x_space,
                                                     doc2.system.x_space);
    if (!flavor_token.empty()) {
        auto parsed = tempora::io::parse_flavor(flavor_token);
        if (!parsed) throw tempora::SchemaError("unknown flavor '" + flavor_token + "'");
        r.flavor = *parsed;
    }
    if (l_given) r.l = l;
    tempora::RelationVerdict v = tempora::check_simulation(doc1.system, doc2.system, r);
    json report = relation_verdict_to_json(v);
    report["command"] = "check-relation";
    report["flavor"] = tempora::io::flavor_token(r.flavor);
    return finish(opts, doc1.system, report, relation_verdict_text(v), v.accepted);
}

int cmd_synthesize(const CommonOptions& opts, const std::string& path1,
                   const std::string& path2, const std::string& flavor_token, int l,
                   const std::string& out_path) {
    tempora::io::SystemDocument doc1 = tempora::io::load_document(path1);
    tempora::io::SystemDocument doc2 = tempora::io::load_document(path2);
    auto flavor = tempora::io::parse_flavor(flavor_token);
    if (!flavor) throw tempora::SchemaError("unknown flavor '" + flavor_token + "'");
    tempora::RelationVerdict why;
    auto r = tempora::synthesize_greatest(doc1.system, doc2.system, *flavor, l, &why);
    json report{{"command", "synthesize"},
                {"flavor", tempora::io::flavor_token(*flavor)},
                {"found", r.has_value()}};
    if (r) {
        report["relation"] = tempora::io::relation_to_json(*r);
        if (!out_path.empty()) tempora::io::save_relation(out_path, *r);
        std::string text = "greatest relation found with " +
                           std::to_string(r->pairs.size()) + " pair(s)";
        if (!out_path.empty()) text += ", written to " + out_path;
        return finish(opts, doc1.system, report, text, true);
    }
    report["cover"] = relation_verdict_to_json(why);
    return finish(opts, doc1.system, report,
                  "no relation of this flavor exists: " + relation_verdict_text(why),
                  false);
}

int cmd_inclusion(const CommonOptions& opts, const std::string& path1,
                  const std::string& path2) {
    tempora::io::SystemDocument doc1 = tempora::io::load_document(path1);
    tempora::io::SystemDocument doc2 = tempora::io::load_document(path2);
    tempora::InclusionVerdict v =
        tempora::check_behavior_inclusion(doc1.system, doc2.system);
    json report{{"command", "inclusion"},
                {"subset_1_in_2", v.subset_1_in_2},
                {"subset_2_in_1", v.subset_2_in_1},
                {"equal", v.equal}};
    std::string text = v.equal          ? "external behaviors are equal (=)"
                       : v.subset_1_in_2 ? "external behavior inclusion holds (⊆)"
                       : v.subset_2_in_1 ? "inclusion holds only right-to-left (⊇)"
                                         : "no inclusion either way";
    return finish(opts, doc1.system, report, text, v.subset_1_in_2);
}

int cmd_discretize(const CommonOptions& opts, const std::string& csv_path,
                   const std::string& quantizer_path, const std::string& out_path) {
    tempora::QuantizerSpec spec = tempora::io::load_quantizer(quantizer_path);
    tempora::Rational lo = spec.cells.front().lo;
    tempora::Rational hi = spec.cells.front().hi;
    for (const tempora::QuantizerCell& cell : spec.cells) {
        if (cell.lo < lo) lo = cell.lo;
        if (hi < cell.hi) hi = cell.hi;
    }
    tempora::ValueSpace w_space = tempora::ValueSpace::interval(lo, hi);
    std::ifstream csv(csv_path);
    if (!csv) throw tempora::SchemaError(csv_path + ": cannot open file");
    tempora::Signal w = tempora::io::signal_from_csv(csv, w_space);

    tempora::io::SystemDocument doc;
    doc.system.internal_axis = w.axis;
    doc.system.external_axis = spec.external_axis;
    doc.system.w_space = w_space;
    doc.system.x_space = w_space;
    doc.system.gamma_space = spec.gamma_space();
    tempora::Trajectory traj{w, w};
    doc.system.behavior.push_back(traj);
    doc.system.trajectory_ids.push_back("t0");
    doc.system.phi.entries.push_back(tempora::quantize(spec, w, branch_cap_from_env()));
    doc.quantizer = spec;
    doc.system.validate();

    json document = tempora::io::document_to_json(doc);
    if (!out_path.empty()) {
        tempora::io::save_document(out_path, doc);
        json report{{"command", "discretize"},
                    {"out", out_path},
                    {"branches", doc.system.phi.of(0).size()}};
        return finish(opts, doc.system, report,
                      "discretized system with " +
                          std::to_string(doc.system.phi.of(0).size()) +
                          " branch(es), written to " + out_path,
                      true);
    }
    std::cout << document.dump(2) << "\n";
    return 0;
}

int cmd_harness(const CommonOptions& opts, const std::string& suite_token,
                std::uint64_t seed, int trials) {
    auto suite = tempora::parse_suite_name(suite_token);
    if (!suite) throw tempora::SchemaError("unknown suite '" + suite_token + "'");
    tempora::GeneratorConfig cfg;
    cfg.seed = seed;
    tempora::SuiteReport report = tempora::run_theorem_suite(*suite, cfg, trials);
    json j = tempora::io::suite_report_to_json(report);
    j["command"] = "harness";
    std::string text = to_string(report.name) + ": " + std::to_string(report.passes) +
                       "/" + std::to_string(report.trials) + " trials passed (" +
                       std::to_string(report.checks) + " checks)";
    for (const std::string& note : report.failure_notes) text += "\n  " + note;
    emit(opts, j, text);
    return report.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tempora: finite-grid toolkit for behavioral systems with internal "
                 "and external time scales"};
    app.require_subcommand(1);
    CommonOptions opts;
    app.add_flag("--json", opts.as_json, "machine-readable JSON report");
    app.add_flag("--horizon-note", opts.horizon_note,
                 "always print the finite-grid truncation bound");

    std::string path1, path2, relation_path, flavor, cls, suite, out_path;
    int l = 0;
    std::uint64_t seed = 0;
    int trials = 50;

    auto* validate = app.add_subcommand("validate", "validate a system document");
    validate->add_option("path", path1)->required();

    auto* axiom = app.add_subcommand("check-axiom", "check the state axiom Eq.(3)");
    axiom->add_option("path", path1)->required();
    axiom->add_option("--class", cls, "async|ext-sync|sync");

    auto* behavior =
        app.add_subcommand("external-behavior", "list the external behavior");
    behavior->add_option("path", path1)->required();

    auto* check = app.add_subcommand("check-relation",
                                     "check a candidate (bi)simulation relation");
    check->add_option("path1", path1)->required();
    check->add_option("path2", path2)->required();
    check->add_option("relation", relation_path)->required();
    check->add_option("--flavor", flavor, "async|ext-sync|sync|l-initial");
    auto* l_opt = check->add_option("--l", l, "external tick for the l-initial flavor");

    auto* synthesize =
        app.add_subcommand("synthesize", "synthesize the greatest relation");
    synthesize->add_option("path1", path1)->required();
    synthesize->add_option("path2", path2)->required();
    synthesize->add_option("--flavor", flavor)->required();
    synthesize->add_option("--l", l);
    synthesize->add_option("-o,--out", out_path, "relation output file");

    auto* inclusion =
        app.add_subcommand("inclusion", "external-behavior inclusion test");
    inclusion->add_option("path1", path1)->required();
    inclusion->add_option("path2", path2)->required();

    auto* discretize = app.add_subcommand(
        "discretize", "quantize a CSV time series into a system document");
    discretize->add_option("csv", path1)->required();
    discretize->add_option("quantizer", path2)->required();
    discretize->add_option("-o,--out", out_path, "system document output file");

    auto* harness = app.add_subcommand("harness", "run an executable theorem suite");
    harness->add_option("--suite", suite, "lemma1|thm1|thm2|thm3|thm4|cor1")->required();
    harness->add_option("--seed", seed);
    harness->add_option("--trials", trials)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // exit code 2 is the usage/format error channel (0 accepted,
        // 1 rejected with witness); --help exits 0 through here.
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*validate) return cmd_validate(opts, path1);
        if (*axiom) return cmd_check_axiom(opts, path1, cls);
        if (*behavior) return cmd_external_behavior(opts, path1);
        if (*check)
            return cmd_check_relation(opts, path1, path2, relation_path, flavor, l,
                                      l_opt->count() > 0);
        if (*synthesize) return cmd_synthesize(opts, path1, path2, flavor, l, out_path);
        if (*inclusion) return cmd_inclusion(opts, path1, path2);
        if (*discretize) return cmd_discretize(opts, path1, path2, out_path);
        if (*harness) return cmd_harness(opts, suite, seed, trials);
    } catch (const tempora::SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tempora::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
