#pragma once

#include <string>

#include <json.hpp>

#include "vdf/field.hpp"
#include "vdf/series.hpp"

namespace vdf {

using Json = nlohmann::ordered_json;

/// Field config:
///   {"name": "...", "rank": n,
///    "generators": [{"name": "t", "value": ["1"], "logder": "t^-1",
///                    "logder_tau": {"at": [...], "open": false}}],
///    "shift": [...],
///    "gamma_der": {"kind": "prefix", "depth": k, "bound": [...], "inclusive": true}}
/// shift, gamma_der, logder and logder_tau are optional. Logder expressions use
/// the series grammar over the config's own generators. Malformed documents
/// raise ParseError; ill-posed fields raise ContractError.
FieldPtr field_from_json(const Json& doc);
FieldPtr field_from_text(const std::string& text);
FieldPtr load_field(const std::string& path);
Json field_to_json(const FieldInstance& f);

Json to_json(const GroupElement& g);
Json to_json(const Truncation& t);
Json to_json(const Cut& c);
Json to_json(const Series& s);

GroupElement element_from_json(const Json& j);
Cut cut_from_json(const Json& j, std::size_t rank);

/// Compact JSON with ": " and ", " separators.
std::string dump(const Json& j);

}  // namespace vdf
