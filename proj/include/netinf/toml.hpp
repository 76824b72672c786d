#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace netinf {

/// Minimal flat-TOML reader: `key = value` lines, `#` comments, values of
/// type integer, float, boolean, string and homogeneous arrays of integers.
/// Enough for the experiment config files; not a general TOML implementation.
struct TomlValue {
  std::variant<std::int64_t, double, bool, std::string, std::vector<std::int64_t>> v;

  std::int64_t as_int() const;
  double as_double() const;
  bool as_bool() const;
  const std::string& as_string() const;
  std::vector<std::int64_t> as_int_array() const;
};

using TomlTable = std::map<std::string, TomlValue>;

TomlTable parse_toml(const std::string& text);
TomlTable parse_toml_file(const std::filesystem::path& path);

/// Parse a single TOML value literal (used for environment overrides).
TomlValue parse_toml_value(const std::string& text);

}  // namespace netinf
