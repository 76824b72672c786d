#include "netinf/toml.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace netinf {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

std::int64_t TomlValue::as_int() const {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  throw std::runtime_error("TOML value is not an integer");
}

double TomlValue::as_double() const {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  throw std::runtime_error("TOML value is not a number");
}

bool TomlValue::as_bool() const {
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  throw std::runtime_error("TOML value is not a boolean");
}

const std::string& TomlValue::as_string() const {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  throw std::runtime_error("TOML value is not a string");
}

std::vector<std::int64_t> TomlValue::as_int_array() const {
  if (const auto* a = std::get_if<std::vector<std::int64_t>>(&v)) return *a;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return {*i};
  throw std::runtime_error("TOML value is not an integer array");
}

TomlValue parse_toml_value(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw std::runtime_error("empty TOML value");
  TomlValue out;
  if (text.front() == '"') {
    if (text.size() < 2 || text.back() != '"')
      throw std::runtime_error("unterminated string: " + text);
    out.v = text.substr(1, text.size() - 2);
    return out;
  }
  if (text.front() == '[') {
    if (text.back() != ']') throw std::runtime_error("unterminated array: " + text);
    std::vector<std::int64_t> arr;
    std::stringstream ss(text.substr(1, text.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      arr.push_back(std::stoll(item));
    }
    out.v = arr;
    return out;
  }
  if (text == "true") {
    out.v = true;
    return out;
  }
  if (text == "false") {
    out.v = false;
    return out;
  }
  if (text.find('.') != std::string::npos || text.find('e') != std::string::npos ||
      text.find('E') != std::string::npos) {
    out.v = std::stod(text);
    return out;
  }
  out.v = static_cast<std::int64_t>(std::stoll(text));
  return out;
}

TomlTable parse_toml(const std::string& text) {
  TomlTable table;
  std::stringstream ss(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    // strip comments outside strings
    bool in_string = false;
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (line[c] == '"') in_string = !in_string;
      if (line[c] == '#' && !in_string) {
        line = line.substr(0, c);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[')
      throw std::runtime_error("TOML line " + std::to_string(lineno) +
                               ": sections are not supported; use flat keys");
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("TOML line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    table[key] = parse_toml_value(line.substr(eq + 1));
  }
  return table;
}

TomlTable parse_toml_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_toml(ss.str());
}

}  // namespace netinf
