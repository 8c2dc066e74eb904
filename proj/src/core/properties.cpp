#include "infodyn/properties.hpp"

#include <charconv>
#include <string>

#include "infodyn/errors.hpp"

namespace infodyn {

namespace {

bool parse_bool(std::string_view v, bool& out) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") {
    out = true;
    return true;
  }
  if (v == "false" || v == "0" || v == "no" || v == "off") {
    out = false;
    return true;
  }
  return false;
}

bool valid_for(PropertyType type, std::string_view v) {
  switch (type) {
    case PropertyType::integer: {
      long long x{};
      auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
      return ec == std::errc{} && ptr == v.data() + v.size();
    }
    case PropertyType::real: {
      double x{};
      auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
      return ec == std::errc{} && ptr == v.data() + v.size();
    }
    case PropertyType::boolean: {
      bool b{};
      return parse_bool(v, b);
    }
    case PropertyType::text:
      return !v.empty();
  }
  return false;
}

}  // namespace

void PropertyMap::declare(std::string key, PropertyType type, std::string default_value) {
  entries_[std::move(key)] = Entry{type, std::move(default_value), false};
}

bool PropertyMap::declared(std::string_view key) const { return entries_.find(key) != entries_.end(); }

void PropertyMap::set(std::string_view key, std::string_view value) {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw UsageError("unknown property '" + std::string(key) + "'");
  if (!valid_for(it->second.type, value))
    throw UsageError("invalid value '" + std::string(value) + "' for property '" + std::string(key) + "'");
  it->second.value = std::string(value);
  it->second.explicitly_set = true;
}

void PropertyMap::set_assignment(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw UsageError("property must be given as key=value, got '" + std::string(assignment) + "'");
  set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

const PropertyMap::Entry& PropertyMap::entry(std::string_view key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw UsageError("unknown property '" + std::string(key) + "'");
  return it->second;
}

long long PropertyMap::get_int(std::string_view key) const {
  const auto& v = entry(key).value;
  long long x{};
  std::from_chars(v.data(), v.data() + v.size(), x);
  return x;
}

double PropertyMap::get_real(std::string_view key) const {
  const auto& v = entry(key).value;
  double x{};
  std::from_chars(v.data(), v.data() + v.size(), x);
  return x;
}

bool PropertyMap::get_bool(std::string_view key) const {
  bool b = false;
  parse_bool(entry(key).value, b);
  return b;
}

std::string PropertyMap::get_text(std::string_view key) const { return entry(key).value; }

bool PropertyMap::is_set(std::string_view key) const { return entry(key).explicitly_set; }

}  // namespace infodyn
