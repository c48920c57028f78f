// JSON interchange for designs and latin square sets.
//
// Design documents:
//   { "kind": "ipbd", "v": 7, "w": 3, "lambda": 1, "K": [3],
//     "blocks": [[0,1,4], ...],
//     "resolution": [[0,1,2], ...], "class_kinds": ["full", ...] }
// GDD-like kinds carry "groups" as a list of group sizes laid out
// consecutively (the distinguished group last); IGDDs add "holes" with one
// hole size per group (the hole is the trailing part of its group); HGDDs
// carry "u", "h", "m" with point index i*h*m + j*h + r; TDs carry "k", "n".
//
// Latin square documents:
//   { "n": 5, "m": 2, "hole": [0,1], "squares": [[null, null, 2, ...], ...] }
// Each square is a flat row-major list; a list of rows is also accepted.
// "hole" is optional and defaults to the trailing m symbols.
#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "ipbd/model.hpp"
#include "json.hpp"

namespace ipbd::io {

using json = nlohmann::json;

/// Serializes a normalized design. Throws StructuralError when the design
/// is not in normalized layout (the format cannot express arbitrary groups).
json to_json(const Design& design);
Design design_from_json(const json& doc);

json to_json(const LatinSquareSet& set);
LatinSquareSet latin_from_json(const json& doc);

using Document = std::variant<Design, LatinSquareSet>;

/// Parses either document type; throws StructuralError on malformed input.
Document parse_document(const std::string& text);
Document read_document(const std::filesystem::path& path);

void write_json(const std::filesystem::path& path, const json& doc);

}  // namespace ipbd::io
