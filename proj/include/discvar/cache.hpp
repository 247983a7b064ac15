#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

namespace discvar {

/// Hash of the library sources, fixed at configure time.
const std::string& code_version();

/// On-disk store for expensive reduced bases. Entries are JSON files named
/// after (task, parameters, code version); an entry written by a different
/// build is ignored. Failures to read or write are silent, the caller simply
/// recomputes.
class BasisCache {
 public:
  BasisCache(std::filesystem::path dir, std::string version = code_version());

  /// DISCVAR_CACHE_DIR, else $XDG_CACHE_HOME/discvar, else ~/.cache/discvar.
  static std::filesystem::path default_dir();

  std::optional<nlohmann::json> load(const std::string& task, const nlohmann::json& params) const;
  void store(const std::string& task, const nlohmann::json& params, const nlohmann::json& payload) const;

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path path_for(const std::string& task, const nlohmann::json& params) const;

  std::filesystem::path dir_;
  std::string version_;
};

}  // namespace discvar
