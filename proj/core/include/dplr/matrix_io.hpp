#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dplr/matrix.hpp"

namespace dplr {

// Matrices are stored as `<base>_re.csv` and optionally `<base>_im.csv`:
// row-major, comma separated, no header, %.17g. Lines starting with '#' are
// metadata and ignored on read. A missing `_im` file means a real matrix.
struct MatrixFiles {
  std::filesystem::path re;
  std::filesystem::path im;
};

// Accepts either the base name or the `_re.csv` path.
MatrixFiles matrix_files(const std::filesystem::path& base);

ComplexMatrix read_matrix(const std::filesystem::path& base);
HermitianMatrix read_hermitian(const std::filesystem::path& base);

// Writes `_im` only when the matrix has a nonzero imaginary part, unless
// `always_write_imag` is set.
void write_matrix(const std::filesystem::path& base, const ComplexMatrix& m,
                  const std::vector<std::string>& header_lines = {},
                  bool always_write_imag = false);

std::vector<std::vector<double>> read_csv_table(const std::filesystem::path& path);
std::vector<double> read_csv_values(const std::filesystem::path& path);

std::string format_double(double x);  // %.17g

}  // namespace dplr
