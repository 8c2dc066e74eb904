#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace infodyn {

enum class PropertyType { integer, real, boolean, text };

/// String key/value settings with declared keys and types. Setting an
/// undeclared key, or a value that does not parse as the declared type,
/// throws UsageError naming the key.
class PropertyMap {
 public:
  void declare(std::string key, PropertyType type, std::string default_value);
  bool declared(std::string_view key) const;

  void set(std::string_view key, std::string_view value);
  /// Parses "key=value".
  void set_assignment(std::string_view assignment);

  long long get_int(std::string_view key) const;
  double get_real(std::string_view key) const;
  bool get_bool(std::string_view key) const;
  std::string get_text(std::string_view key) const;
  /// True if the value was set explicitly rather than left at its default.
  bool is_set(std::string_view key) const;

 private:
  struct Entry {
    PropertyType type;
    std::string value;
    bool explicitly_set = false;
  };
  const Entry& entry(std::string_view key) const;
  std::map<std::string, Entry, std::less<>> entries_;
};

}  // namespace infodyn
