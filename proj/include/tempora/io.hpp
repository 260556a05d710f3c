#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "tempora/harness.hpp"

namespace tempora::io {

using nlohmann::json;

/// Text form of a system plus the optional quantizer it was derived from.
struct SystemDocument {
    StateSpacePhiSystem system;
    std::optional<QuantizerSpec> quantizer;
};

json value_to_json(const Value& v);
/// Values are decoded against their space: alphabet symbols stay strings,
/// interval entries parse as exact "p/q" literals, products recurse.
Value value_from_json(const json& j, const ValueSpace& space, const std::string& where);

json space_to_json(const ValueSpace& space);
ValueSpace space_from_json(const json& j, const std::string& where);

json document_to_json(const SystemDocument& doc);
SystemDocument document_from_json(const json& j);

SystemDocument load_document(const std::string& path);
void save_document(const std::string& path, const SystemDocument& doc);

json relation_to_json(const Relation& r);
/// Pairs are decoded against the two systems' state spaces.
Relation relation_from_json(const json& j, const ValueSpace& left,
                            const ValueSpace& right);
Relation load_relation(const std::string& path, const ValueSpace& left,
                       const ValueSpace& right);
void save_relation(const std::string& path, const Relation& r);

json quantizer_to_json(const QuantizerSpec& spec);
QuantizerSpec quantizer_from_json(const json& j);
QuantizerSpec load_quantizer(const std::string& path);

/// Two-column `t,value` rows of exact rational literals. Row i must sit at
/// t = i * step of the deduced grid (step = first spacing, or 1 for a
/// single row); anything off-grid is a schema error.
Signal signal_from_csv(std::istream& in, const ValueSpace& space);

json suite_report_to_json(const SuiteReport& report);

std::string flavor_token(RelationFlavor f);
std::optional<RelationFlavor> parse_flavor(const std::string& text);
std::string class_token(AxiomClass c);
std::optional<AxiomClass> parse_class(const std::string& text);

}  // namespace tempora::io
