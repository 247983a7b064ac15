#include "discvar/cache.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <system_error>

#ifndef DISCVAR_CODE_HASH
#define DISCVAR_CODE_HASH "unknown"
#endif

namespace discvar {

const std::string& code_version() {
  static const std::string v = DISCVAR_CODE_HASH;
  return v;
}

BasisCache::BasisCache(std::filesystem::path dir, std::string version)
    : dir_(std::move(dir)), version_(std::move(version)) {}

std::filesystem::path BasisCache::default_dir() {
  if (const char* d = std::getenv("DISCVAR_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "discvar";
  if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "discvar";
  return std::filesystem::temp_directory_path() / "discvar-cache";
}

std::filesystem::path BasisCache::path_for(const std::string& task, const nlohmann::json& params) const {
  // Parameters are small scalars; flatten them into the file name so entries
  // stay human-readable.
  std::string name = task;
  for (const auto& [k, v] : params.items()) {
    name += "_" + k + "-" + (v.is_string() ? v.get<std::string>() : v.dump());
  }
  for (char& c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) c = '_';
  return dir_ / (name + "_" + version_.substr(0, 16) + ".json");
}

std::optional<nlohmann::json> BasisCache::load(const std::string& task, const nlohmann::json& params) const {
  std::ifstream in(path_for(task, params));
  if (!in) return std::nullopt;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    const auto& h = j.at("header");
    if (h.at("task") != task || h.at("version") != version_ || h.at("params") != params) return std::nullopt;
    return j.at("payload");
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void BasisCache::store(const std::string& task, const nlohmann::json& params, const nlohmann::json& payload) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) return;
  const auto target = path_for(task, params);
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    nlohmann::json j;
    j["schema"] = 1;
    j["header"] = {{"n", params.value("n", 0)}, {"task", task}, {"version", version_}, {"params", params}};
    j["payload"] = payload;
    out << j.dump() << "\n";
    if (!out) return;
  }
  std::filesystem::rename(tmp, target, ec);
}

}  // namespace discvar
