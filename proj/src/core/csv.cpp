#include "ovallab/core/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ovallab/core/errors.hpp"

namespace ovallab {

std::string format_full(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& comments,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  for (const auto& c : comments) out << "# " << c << "\n";
  for (size_t j = 0; j < header.size(); ++j)
    out << header[j] << (j + 1 < header.size() ? "," : "");
  out << "\n";
  for (const auto& row : rows) {
    require(row.size() == header.size(), ErrorKind::invalid_argument,
            "csv row arity " + std::to_string(row.size()) + " != header arity " +
                std::to_string(header.size()));
    for (size_t j = 0; j < row.size(); ++j)
      out << format_full(row[j]) << (j + 1 < row.size() ? "," : "");
    out << "\n";
  }
  write_text_file(path, out.str());
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  write_csv(path, {}, header, rows);
}

std::vector<std::vector<double>> read_csv(const std::string& path,
                                          std::vector<std::string>* header) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::io_error, "cannot open csv '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!saw_header) {
      saw_header = true;
      if (header) {
        header->clear();
        std::istringstream hs(line);
        std::string cell;
        while (std::getline(hs, cell, ',')) header->push_back(cell);
      }
      continue;
    }
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      char* end = nullptr;
      row.push_back(std::strtod(cell.c_str(), &end));
      require(end != cell.c_str(), ErrorKind::parse_error,
              "csv '" + path + "': bad cell '" + cell + "'");
    }
    rows.push_back(std::move(row));
  }
  require(saw_header, ErrorKind::parse_error, "csv '" + path + "': no header row");
  return rows;
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  require(!ec, ErrorKind::io_error,
          "cannot create directory '" + path + "': " + ec.message());
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorKind::io_error, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) ensure_directory(parent.string());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), ErrorKind::io_error, "cannot write '" + path + "'");
  out << content;
  require(out.good(), ErrorKind::io_error, "write failed for '" + path + "'");
}

}  // namespace ovallab
