/// @file config.hpp
/// @brief Flat dotted key-value configuration files.
///
/// Format, one entry per line:
///
///     # comment (also allowed after a value)
///     params.n   = 3
///     flow.initial.d = 1.05, 0.95
///     name       = sym-k2
///
/// Keys are dotted paths, values are scalars or comma-separated lists.
/// Parsing is strict: duplicate keys and malformed lines are errors.
/// Consumers mark the keys they understand; `finish()` rejects any key that
/// was never consumed, reporting its full path (typo protection).

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace ovallab {

class KeyValueConfig {
 public:
  /// Parses `text`. Throws LabError(parse_error) on malformed input.
  static KeyValueConfig parse(const std::string& text);

  /// Reads and parses a file. Throws LabError(io_error / parse_error).
  static KeyValueConfig parse_file(const std::string& path);

  bool has(const std::string& key) const;

  /// Typed getters; each marks the key consumed.  The `_or` variants return
  /// the fallback when the key is absent.  Type mismatches throw parse_error
  /// with the key path in the message.
  std::string get_string(const std::string& key);
  std::string get_string_or(const std::string& key, const std::string& fallback);
  double get_double(const std::string& key);
  double get_double_or(const std::string& key, double fallback);
  int get_int(const std::string& key);
  int get_int_or(const std::string& key, int fallback);
  bool get_bool(const std::string& key);
  bool get_bool_or(const std::string& key, bool fallback);
  std::vector<double> get_double_list(const std::string& key);
  std::vector<double> get_double_list_or(const std::string& key,
                                         const std::vector<double>& fallback);
  std::vector<std::string> get_string_list_or(
      const std::string& key, const std::vector<std::string>& fallback);

  /// Keys with the given dotted prefix (prefix itself excluded), sorted.
  std::vector<std::string> keys_with_prefix(const std::string& prefix) const;

  /// Throws LabError(parse_error) naming every key that was never consumed.
  void finish() const;

  /// All raw entries in file order (for config echo in manifests).
  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

 private:
  std::string raw(const std::string& key);
  std::map<std::string, std::string> values_;
  std::vector<std::pair<std::string, std::string>> entries_;
  std::set<std::string> consumed_;
};

}  // namespace ovallab
