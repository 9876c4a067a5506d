#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "catdyn/dynamics.hpp"
#include "catdyn/finset.hpp"
#include "catdyn/monoid.hpp"
#include "catdyn/report.hpp"
#include "catdyn/time.hpp"

namespace catdyn {

/// Raised for malformed or schema-violating input documents.
struct ParseError : Error {
    using Error::Error;
};

/// Raised when a requested construction would materialize a function space
/// larger than the configured cap.
struct CapError : Error {
    using Error::Error;
};

/// In-memory form of a JSON system description: a finite clock, a state
/// carrier, an action table, and optionally some named self-maps of the
/// carrier. Everything is label-resolved; the raw tables here may still
/// violate the laws (that is what `report_validate` is for), but they are
/// always total and in-range.
struct SystemDocument {
    std::vector<std::string> time_elements;
    std::vector<std::uint32_t> time_table;  // row-major over time_elements
    std::uint32_t time_unit = 0;
    std::vector<std::string> omega_elements;
    std::vector<std::uint64_t> flow_table;  // slot t*|Ω|+x holds the image of (t, x)
    std::vector<std::pair<std::string, std::vector<std::uint64_t>>> morphisms;
};

/// Parse and schema-check a document. Throws ParseError on malformed JSON,
/// unknown or missing fields, duplicate or undeclared labels, and non-total
/// tables.
SystemDocument parse_system(const std::string& json_text);

/// Canonical serialization; parse_system(serialize_system(d)) == d and the
/// bytes are stable across runs.
std::string serialize_system(const SystemDocument& doc);
nlohmann::ordered_json system_to_json(const SystemDocument& doc);

/// Reports. Each returns a JSON document with a fixed key order, a "laws"
/// array, and an "all_hold" flag that drives the process exit code. Commands
/// that build on a valid system fall back to the validation report (with
/// their own "command" tag) when the system itself fails its laws.
nlohmann::ordered_json report_validate(const SystemDocument& doc);
nlohmann::ordered_json report_derive(const SystemDocument& doc, const std::string& which,
                                     std::uint64_t observable_codomain, std::uint64_t cap);
nlohmann::ordered_json report_subshift(const SystemDocument& doc, std::uint64_t cap);
nlohmann::ordered_json report_orbits(const SystemDocument& doc, std::uint64_t cap);
nlohmann::ordered_json report_stationary(const SystemDocument& doc);

/// Render a report as stable plain text (one line per field or law).
std::string render_text(const nlohmann::ordered_json& report);

} // namespace catdyn
