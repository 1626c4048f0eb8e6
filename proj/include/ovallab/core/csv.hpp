/// @file csv.hpp
/// @brief Deterministic CSV output with full double round-trip precision.
///
/// Every numeric cell is written with printf "%.17g" so that re-reading the
/// file reproduces the exact double.  Reruns of the same build on the same
/// machine produce byte-identical files (no timestamps, no locale effects).

#pragma once

#include <string>
#include <vector>

namespace ovallab {

/// Formats one double as %.17g.
std::string format_full(double value);

/// Writes header + rows; every row must match the header arity.
/// Throws LabError(io_error) when the file cannot be written.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// write_csv with optional leading comment lines ("# ..." each).
void write_csv(const std::string& path, const std::vector<std::string>& comments,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Reads a CSV produced by write_csv: skips "#" comments, returns rows.
/// The header (first non-comment line) is returned through `header`.
std::vector<std::vector<double>> read_csv(const std::string& path,
                                          std::vector<std::string>* header);

/// Creates `path` (and parents) as a directory if not present.
void ensure_directory(const std::string& path);

/// Reads a whole file into a string (io_error if unreadable).
std::string read_text_file(const std::string& path);

/// Writes a string to a file atomically enough for our purposes.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace ovallab
