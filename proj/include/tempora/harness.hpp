#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tempora/relation.hpp"

namespace tempora {

enum class TauStyle { Identity, PointToPoint, SetToPoint, Mixed };

std::string to_string(TauStyle s);

struct GeneratorConfig {
    std::uint64_t seed = 0;
    int max_states = 4;
    int max_trajectories = 6;
    Tick internal_horizon = 8;
    Tick external_horizon = 4;
    int gamma_size = 3;
    TauStyle tau_style = TauStyle::Mixed;
    AxiomClass axiom_class = AxiomClass::Asynchronous;
};

/// Random closed system within the configured bounds; deterministic per
/// seed. Candidates are closed under the state-axiom rule and checked
/// in-loop; failures are discarded and regenerated up to a bounded number
/// of retries.
StateSpacePhiSystem generate_system(const GeneratorConfig& cfg);

/// A related pair built from a shared random skeleton: the second system is
/// an isomorphic rename, a label-preserving quotient, or an independent
/// fresh system, per the derivation draw.
struct GeneratedPair {
    StateSpacePhiSystem first;
    StateSpacePhiSystem second;
    bool related;  // by construction (rename or quotient)
    /// Construction relation (rename bijection or quotient map) when
    /// related; empty pairs otherwise.
    Relation witness;
};

GeneratedPair generate_pair(const GeneratorConfig& cfg);

/// Three systems over a shared skeleton, each derived from the previous by
/// rename or quotient, with the construction relations.
struct GeneratedTriple {
    StateSpacePhiSystem first;
    StateSpacePhiSystem second;
    StateSpacePhiSystem third;
    Relation witness12;
    Relation witness23;
};

GeneratedTriple generate_triple(const GeneratorConfig& cfg);

/// Identity pairing on system 1's reachable states, as the given flavor.
Relation identity_relation(const StateSpacePhiSystem& system, RelationFlavor flavor);

enum class SuiteName { Lemma1, Thm1, Thm2, Thm3, Thm4, Cor1 };

std::optional<SuiteName> parse_suite_name(const std::string& text);
std::string to_string(SuiteName name);

struct SuiteReport {
    SuiteName name;
    int trials = 0;
    int passes = 0;
    int failures = 0;
    /// Non-vacuous checks actually exercised (e.g. transitivity instances
    /// where both synthesized relations existed).
    int checks = 0;
    std::vector<std::string> failure_notes;  // shrunk counterexample summaries
};

/// Executes the theorem's executable properties over generated instances.
/// The theorems are proved, so any failure is an implementation defect; the
/// report carries shrunk counterexamples when one occurs.
SuiteReport run_theorem_suite(SuiteName name, const GeneratorConfig& cfg, int trials);

}  // namespace tempora
