#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace dplr::harness {

// A CSV table with '#'-prefixed metadata lines. Only the metadata carries
// anything run-dependent (timestamp), so bodies are byte-identical for
// identical configs and seeds.
struct CsvReport {
  std::vector<std::string> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_metadata(const std::string& line) { metadata.push_back(line); }
  void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }

  void write(std::ostream& out, bool with_timestamp = true) const;
  void write(const std::filesystem::path& path, bool with_timestamp = true) const;
  std::string body() const;  // everything except metadata
};

// Standard '#' header: version, kind, seed and stream derivation, config.
std::vector<std::string> standard_metadata(const std::string& kind, unsigned long long seed,
                                           const std::string& stream_note,
                                           const std::string& config_json);

std::string format_value(double x);  // %.17g, "nan" for NaN
std::string format_bool(bool b);

}  // namespace dplr::harness
