#pragma once
// Deterministic output plumbing: shortest round-trip float formatting, CSV
// tables with provenance comments, FNV-1a hashing for config provenance, and
// filesystem helpers that throw typed errors. Tables are assembled in memory
// and written in one shot, so identical inputs produce byte-identical files.

#include <cstdint>
#include <string>
#include <vector>

namespace wellpath {

// Shortest decimal string that parses back to exactly v ("0.042", not
// "0.042000000000000003"); nan/inf spelled out.
std::string format_double(double v);

std::uint64_t fnv1a64(const std::string& s);
std::string hex64(std::uint64_t v);  // 16 lowercase hex digits

void ensure_directory(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);
  void comment(const std::string& key, const std::string& value);
  void row(const std::vector<std::string>& cells);  // size must match columns
  std::string str() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::pair<std::string, std::string>> comments_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace wellpath
