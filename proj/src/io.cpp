#include "wellpath/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wellpath/errors.hpp"

namespace wellpath {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;  // unreachable: 17 significant digits always round-trip
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) fail_io("cannot create directory '" + path + "': " + ec.message());
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail_io("cannot open '" + path + "' for writing");
  out << content;
  if (!out) fail_io("write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_io("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail_io("read from '" + path + "' failed");
  return ss.str();
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::comment(const std::string& key, const std::string& value) {
  comments_.emplace_back(key, value);
}

void CsvTable::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size()) fail_param("csv row width does not match the header");
  rows_.push_back(cells);
}

std::string CsvTable::str() const {
  std::ostringstream out;
  for (const auto& [k, v] : comments_) out << "# " << k << "=" << v << "\n";
  for (std::size_t c = 0; c < columns_.size(); ++c)
    out << columns_[c] << (c + 1 < columns_.size() ? "," : "\n");
  for (const auto& r : rows_)
    for (std::size_t c = 0; c < r.size(); ++c) out << r[c] << (c + 1 < r.size() ? "," : "\n");
  return out.str();
}

void CsvTable::write(const std::string& path) const { write_text_file(path, str()); }

}  // namespace wellpath
