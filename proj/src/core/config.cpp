#include "ovallab/core/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ovallab/core/errors.hpp"

namespace ovallab {
namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool valid_key(const std::string& key) {
  if (key.empty() || key.front() == '.' || key.back() == '.') return false;
  for (char c : key) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' ||
          c == '-'))
      return false;
  }
  return key.find("..") == std::string::npos;
}

double parse_double_token(const std::string& key, const std::string& token) {
  const std::string t = trim(token);
  require(!t.empty(), ErrorKind::parse_error, "key '" + key + "': empty number");
  char* end = nullptr;
  const double value = std::strtod(t.c_str(), &end);
  require(end == t.c_str() + t.size(), ErrorKind::parse_error,
          "key '" + key + "': cannot parse '" + t + "' as a number");
  return value;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  if (out.empty()) out.push_back("");
  return out;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    require(eq != std::string::npos, ErrorKind::parse_error,
            "line " + std::to_string(lineno) + ": expected 'key = value', got '" +
                line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    require(valid_key(key), ErrorKind::parse_error,
            "line " + std::to_string(lineno) + ": invalid key '" + key + "'");
    require(!cfg.values_.count(key), ErrorKind::parse_error,
            "line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    cfg.values_[key] = value;
    cfg.entries_.emplace_back(key, value);
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::io_error, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

bool KeyValueConfig::has(const std::string& key) const {
  return values_.count(key) != 0;
}

std::string KeyValueConfig::raw(const std::string& key) {
  auto it = values_.find(key);
  require(it != values_.end(), ErrorKind::parse_error,
          "missing required key '" + key + "'");
  consumed_.insert(key);
  return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key) { return raw(key); }

std::string KeyValueConfig::get_string_or(const std::string& key,
                                          const std::string& fallback) {
  return has(key) ? raw(key) : fallback;
}

double KeyValueConfig::get_double(const std::string& key) {
  return parse_double_token(key, raw(key));
}

double KeyValueConfig::get_double_or(const std::string& key, double fallback) {
  return has(key) ? get_double(key) : fallback;
}

int KeyValueConfig::get_int(const std::string& key) {
  const double v = get_double(key);
  const int i = static_cast<int>(v);
  require(static_cast<double>(i) == v, ErrorKind::parse_error,
          "key '" + key + "': expected an integer");
  return i;
}

int KeyValueConfig::get_int_or(const std::string& key, int fallback) {
  return has(key) ? get_int(key) : fallback;
}

bool KeyValueConfig::get_bool(const std::string& key) {
  const std::string v = raw(key);
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  throw LabError(ErrorKind::parse_error,
                 "key '" + key + "': expected true/false, got '" + v + "'");
}

bool KeyValueConfig::get_bool_or(const std::string& key, bool fallback) {
  return has(key) ? get_bool(key) : fallback;
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key) {
  std::vector<double> out;
  for (const std::string& item : split_list(raw(key)))
    out.push_back(parse_double_token(key, item));
  return out;
}

std::vector<double> KeyValueConfig::get_double_list_or(
    const std::string& key, const std::vector<double>& fallback) {
  return has(key) ? get_double_list(key) : fallback;
}

std::vector<std::string> KeyValueConfig::get_string_list_or(
    const std::string& key, const std::vector<std::string>& fallback) {
  if (!has(key)) return fallback;
  return split_list(raw(key));
}

std::vector<std::string> KeyValueConfig::keys_with_prefix(
    const std::string& prefix) const {
  std::vector<std::string> out;
  for (const auto& [key, value] : values_) {
    (void)value;
    if (key.size() > prefix.size() && key.compare(0, prefix.size(), prefix) == 0)
      out.push_back(key);
  }
  return out;
}

void KeyValueConfig::finish() const {
  std::vector<std::string> unknown;
  for (const auto& [key, value] : values_) {
    (void)value;
    if (!consumed_.count(key)) unknown.push_back(key);
  }
  if (!unknown.empty()) {
    std::string msg = "unknown config key(s):";
    for (const auto& k : unknown) msg += " '" + k + "'";
    throw LabError(ErrorKind::parse_error, msg);
  }
}

}  // namespace ovallab
