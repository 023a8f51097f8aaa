#include "ginv_cli/matrix_file.hpp"

#include <cmath>
#include <fstream>

namespace ginv::cli {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    data.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

namespace {

std::size_t dimension(const json& j, const char* key) {
  if (!j.contains(key)) throw MatrixFileError(std::string("matrix file: missing \"") + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw MatrixFileError(std::string("matrix file: \"") + key + "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

double component(const json& v) {
  if (!v.is_number()) throw MatrixFileError("matrix file: entry components must be numbers");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw MatrixFileError("matrix file: non-finite entry");
  return x;
}

}  // namespace

Matrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw MatrixFileError("matrix file: top level must be an object");
  const std::size_t rows = dimension(j, "rows");
  const std::size_t cols = dimension(j, "cols");
  if (!j.contains("data") || !j.at("data").is_array()) {
    throw MatrixFileError("matrix file: \"data\" must be an array");
  }
  const json& data = j.at("data");
  if (data.size() != rows) throw MatrixFileError("matrix file: data has wrong number of rows");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = data[i];
    if (!row.is_array() || row.size() != cols) {
      throw MatrixFileError("matrix file: row " + std::to_string(i) + " has wrong length");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      const json& entry = row[k];
      if (!entry.is_array() || entry.size() != 2) {
        throw MatrixFileError("matrix file: entries must be [re, im] pairs");
      }
      m(i, k) = Complex{component(entry[0]), component(entry[1])};
    }
  }
  return m;
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MatrixFileError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& err) {
    throw MatrixFileError(path + ": " + err.what());
  }
  return matrix_from_json(j);
}

void write_matrix_file(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw MatrixFileError("cannot write " + path);
  out << matrix_to_json(m).dump() << '\n';
  if (!out) throw MatrixFileError("write failed: " + path);
}

}  // namespace ginv::cli
