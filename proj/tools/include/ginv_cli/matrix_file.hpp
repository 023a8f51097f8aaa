#ifndef GINV_CLI_MATRIX_FILE_HPP
#define GINV_CLI_MATRIX_FILE_HPP

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "ginv/matrix.hpp"

namespace ginv::cli {

/// Malformed or unreadable matrix file.
class MatrixFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"rows": r, "cols": c, "data": [[[re, im], ...], ...]}
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

Matrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const Matrix& m);

}  // namespace ginv::cli

#endif  // GINV_CLI_MATRIX_FILE_HPP
