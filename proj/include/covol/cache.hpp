#pragma once

#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

namespace covol::cache {

/// Hex SHA-256 of the given text.
std::string content_hash(const std::string& text);

/// Append-only JSON-lines store of reports keyed by content hash.  One
/// process writes; any number may read.
class ReportCache {
 public:
  explicit ReportCache(std::string path) : path_(std::move(path)) {}

  std::optional<nlohmann::json> lookup(const std::string& key) const;
  void store(const std::string& key, const nlohmann::json& report);

 private:
  std::string path_;
  std::mutex write_mu_;
};

}  // namespace covol::cache
