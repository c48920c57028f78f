// Shipped catalog of small designs and prime-power MOLS tables.
//
// Entries are embedded at build time from catalog/*.json, keyed by file
// stem ("kts-15", "mols-9", ...). Directories named in IPBD_CATALOG_DIR
// (colon separated) are scanned on first use and may add or override
// entries. Every entry is re-verified when loaded.
#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ipbd/design_io.hpp"

namespace ipbd::catalog {

std::vector<std::string> keys();

bool contains(const std::string& key);

/// The stored object; throws PreconditionError for an unknown key and
/// StructuralError when the entry fails verification.
io::Document tabulated(const std::string& key);

/// First design entry (in key order) accepted by `match`.
std::optional<Design> find_design(const std::function<bool(const Design&)>& match);

/// Writes `doc` as <dir>/<key>.json and registers it for this process.
void persist(const std::filesystem::path& dir, const std::string& key, const io::json& doc);

/// Drops cached entries and rescans IPBD_CATALOG_DIR on next use.
void reload();

}  // namespace ipbd::catalog
