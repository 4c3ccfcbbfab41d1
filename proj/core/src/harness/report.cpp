#include "dplr/harness/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

#include "dplr/error.hpp"
#include "dplr/matrix_io.hpp"
#include "dplr/version.hpp"

namespace dplr::harness {

std::string format_value(double x) { return std::isnan(x) ? "nan" : format_double(x); }
std::string format_bool(bool b) { return b ? "true" : "false"; }

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_body(std::ostream& out, const CsvReport& r) {
  for (std::size_t c = 0; c < r.columns.size(); ++c) out << (c ? "," : "") << r.columns[c];
  if (!r.columns.empty()) out << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << '\n';
  }
}

}  // namespace

void CsvReport::write(std::ostream& out, bool with_timestamp) const {
  for (const auto& m : metadata) out << "# " << m << '\n';
  if (with_timestamp) out << "# generated=" << utc_timestamp() << '\n';
  write_body(out, *this);
}

void CsvReport::write(const std::filesystem::path& path, bool with_timestamp) const {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::InvalidInput, "cannot write " + path.string());
  write(out, with_timestamp);
}

std::string CsvReport::body() const {
  std::ostringstream os;
  write_body(os, *this);
  return os.str();
}

std::vector<std::string> standard_metadata(const std::string& kind, unsigned long long seed,
                                           const std::string& stream_note,
                                           const std::string& config_json) {
  std::vector<std::string> out;
  out.push_back("dplr " + std::string(version()));
  out.push_back("kind=" + kind);
  out.push_back("seed=" + std::to_string(seed) + " streams: " + stream_note);
  if (!config_json.empty()) out.push_back("config=" + config_json);
  return out;
}

}  // namespace dplr::harness
