#pragma once

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace sfast::test {

/// Golden values live in tests/golden/<file> as "fingerprint<TAB>value"
/// lines. Missing keys are appended when SFAST_UPDATE_GOLDEN is set and
/// reported as absent otherwise.
class GoldenFile {
 public:
  explicit GoldenFile(const std::string& name) : path_(std::string(SFAST_GOLDEN_DIR) + "/" + name) {
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
      const auto tab = line.find('\t');
      if (line.empty() || line[0] == '#' || tab == std::string::npos) continue;
      values_[line.substr(0, tab)] = line.substr(tab + 1);
    }
  }

  /// Stored value, or the computed one after recording it in update mode.
  std::optional<std::string> lookup(const std::string& key, const std::string& computed) {
    if (auto it = values_.find(key); it != values_.end()) return it->second;
    if (std::getenv("SFAST_UPDATE_GOLDEN") == nullptr) return std::nullopt;
    std::ofstream(path_, std::ios::app) << key << '\t' << computed << '\n';
    values_[key] = computed;
    return computed;
  }

 private:
  std::string path_;
  std::map<std::string, std::string> values_;
};

}  // namespace sfast::test
