#include "covol/cache.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace covol::cache {

std::string content_hash(const std::string& text) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

std::optional<nlohmann::json> ReportCache::lookup(const std::string& key) const {
  std::ifstream in(path_);
  if (!in) return std::nullopt;
  std::optional<nlohmann::json> hit;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object()) continue;  // tolerate a torn last line
    if (rec.value("key", "") == key && rec.contains("report")) hit = rec["report"];
  }
  return hit;
}

void ReportCache::store(const std::string& key, const nlohmann::json& report) {
  std::lock_guard<std::mutex> lock(write_mu_);
  std::ofstream out(path_, std::ios::app);
  out << nlohmann::json{{"key", key}, {"report", report}}.dump() << '\n';
}

}  // namespace covol::cache
