#include "ipbd/catalog.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "ipbd/verify.hpp"

namespace ipbd::detail {
struct EmbeddedEntry {
  const char* key;
  const char* json;
};
extern const EmbeddedEntry kEmbeddedCatalog[];
extern const std::size_t kEmbeddedCatalogSize;
}  // namespace ipbd::detail

namespace ipbd::catalog {

namespace {

struct Store {
  std::mutex mu;
  bool scanned = false;
  std::map<std::string, std::string> text;     // key -> JSON text
  std::map<std::string, io::Document> loaded;  // verified documents
};

Store& store() {
  static Store s;
  return s;
}

void scan_locked(Store& s) {
  if (s.scanned) return;
  for (std::size_t i = 0; i < detail::kEmbeddedCatalogSize; ++i) {
    s.text[detail::kEmbeddedCatalog[i].key] = detail::kEmbeddedCatalog[i].json;
  }
  if (const char* env = std::getenv("IPBD_CATALOG_DIR")) {
    std::stringstream dirs(env);
    std::string dir;
    while (std::getline(dirs, dir, ':')) {
      std::error_code ec;
      if (dir.empty() || !std::filesystem::is_directory(dir, ec)) continue;
      for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
        if (entry.path().extension() != ".json") continue;
        std::ifstream in(entry.path());
        std::stringstream buf;
        buf << in.rdbuf();
        s.text[entry.path().stem().string()] = buf.str();
      }
    }
  }
  s.scanned = true;
}

io::Document load_locked(Store& s, const std::string& key) {
  scan_locked(s);
  if (auto it = s.loaded.find(key); it != s.loaded.end()) return it->second;
  auto it = s.text.find(key);
  if (it == s.text.end()) throw PreconditionError("unknown catalog key '" + key + "'");
  io::Document doc = io::parse_document(it->second);
  Report rep = std::holds_alternative<Design>(doc)
                   ? verify_design(std::get<Design>(doc))
                   : verify_orthogonal(std::get<LatinSquareSet>(doc));
  if (!rep.valid) {
    throw StructuralError("catalog entry '" + key + "' fails verification: " + rep.summary());
  }
  if (auto* d = std::get_if<Design>(&doc); d && d->provenance.empty()) {
    d->provenance = "catalog " + key;
  }
  s.loaded.emplace(key, doc);
  return doc;
}

}  // namespace

std::vector<std::string> keys() {
  Store& s = store();
  std::lock_guard lock(s.mu);
  scan_locked(s);
  std::vector<std::string> out;
  for (const auto& [k, _] : s.text) out.push_back(k);
  return out;
}

bool contains(const std::string& key) {
  Store& s = store();
  std::lock_guard lock(s.mu);
  scan_locked(s);
  return s.text.count(key) > 0;
}

io::Document tabulated(const std::string& key) {
  Store& s = store();
  std::lock_guard lock(s.mu);
  return load_locked(s, key);
}

std::optional<Design> find_design(const std::function<bool(const Design&)>& match) {
  for (const auto& key : keys()) {
    io::Document doc;
    try {
      doc = tabulated(key);
    } catch (const StructuralError&) {
      continue;
    }
    if (const auto* d = std::get_if<Design>(&doc); d && match(*d)) return *d;
  }
  return std::nullopt;
}

void persist(const std::filesystem::path& dir, const std::string& key, const io::json& doc) {
  std::filesystem::create_directories(dir);
  io::write_json(dir / (key + ".json"), doc);
  Store& s = store();
  std::lock_guard lock(s.mu);
  scan_locked(s);
  s.text[key] = doc.dump();
  s.loaded.erase(key);
}

void reload() {
  Store& s = store();
  std::lock_guard lock(s.mu);
  s.scanned = false;
  s.text.clear();
  s.loaded.clear();
}

}  // namespace ipbd::catalog
