#pragma once

#include <map>
#include <string>

namespace tlab {

// Sectioned key = value text config. Unknown keys are kept (forward
// compatibility); `schema_version` in the [meta] section is checked on load.
class Config {
 public:
  static constexpr int kSchemaVersion = 1;

  Config() = default;
  static Config load(const std::string& path);        // throws on parse/version errors
  static Config parse(const std::string& content);    // same, from memory

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key,
                  const std::string& fallback) const;
  double get(const std::string& section, const std::string& key, double fallback) const;
  int get(const std::string& section, const std::string& key, int fallback) const;
  bool get(const std::string& section, const std::string& key, bool fallback) const;
  void set(const std::string& section, const std::string& key, const std::string& value);

  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return sections_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace tlab
