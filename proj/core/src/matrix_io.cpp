#include "dplr/matrix_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dplr/error.hpp"

namespace dplr {

namespace fs = std::filesystem;

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

MatrixFiles matrix_files(const fs::path& base) {
  std::string s = base.string();
  const std::string suffix = "_re.csv";
  if (s.size() > suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0)
    s.erase(s.size() - suffix.size());
  return {fs::path(s + "_re.csv"), fs::path(s + "_im.csv")};
}

std::vector<std::vector<double>> read_csv_table(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidInput, "cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      while (end && (*end == ' ' || *end == '\t')) ++end;
      if (end == cell.c_str() || (end && *end != '\0'))
        fail(ErrorCode::InvalidInput, "malformed number '" + cell + "' in " + path.string());
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> read_csv_values(const fs::path& path) {
  std::vector<double> out;
  for (const auto& row : read_csv_table(path)) out.insert(out.end(), row.begin(), row.end());
  return out;
}

namespace {

ComplexMatrix table_to_matrix(const std::vector<std::vector<double>>& t, const fs::path& p) {
  require(!t.empty(), ErrorCode::InvalidInput, "empty matrix file");
  const std::size_t cols = t.front().size();
  ComplexMatrix m(t.size(), cols);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i].size() != cols) fail(ErrorCode::InvalidInput, "ragged rows in " + p.string());
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = t[i][j];
  }
  return m;
}

void write_part(const fs::path& path, const ComplexMatrix& m, bool imag,
                const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::InvalidInput, "cannot write " + path.string());
  for (const auto& h : header) out << "# " << h << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(imag ? m(i, j).imag() : m(i, j).real());
    }
    out << '\n';
  }
}

}  // namespace

ComplexMatrix read_matrix(const fs::path& base) {
  const auto files = matrix_files(base);
  ComplexMatrix m = table_to_matrix(read_csv_table(files.re), files.re);
  if (fs::exists(files.im)) {
    const ComplexMatrix im = table_to_matrix(read_csv_table(files.im), files.im);
    require(im.rows() == m.rows() && im.cols() == m.cols(), ErrorCode::InvalidInput,
            "real and imaginary parts differ in shape");
    for (std::size_t n = 0; n < m.data().size(); ++n)
      m.data()[n] = Complex(m.data()[n].real(), im.data()[n].real());
  }
  return m;
}

HermitianMatrix read_hermitian(const fs::path& base) { return HermitianMatrix(read_matrix(base)); }

void write_matrix(const fs::path& base, const ComplexMatrix& m,
                  const std::vector<std::string>& header_lines, bool always_write_imag) {
  const auto files = matrix_files(base);
  write_part(files.re, m, false, header_lines);
  if (always_write_imag || max_abs_imag(m) > 0.0) write_part(files.im, m, true, header_lines);
}

}  // namespace dplr
