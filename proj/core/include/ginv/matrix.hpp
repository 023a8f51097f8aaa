#ifndef GINV_MATRIX_HPP
#define GINV_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace ginv {

using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major complex matrix. Every entry is finite; constructors that
/// take data reject NaN and Inf. 0xk and kx0 shapes are legal and act as
/// algebraic zeros.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix zeros(std::size_t n) { return Matrix(n, n); }
  static Matrix identity(std::size_t n);
  static Matrix diagonal(const std::vector<Complex>& entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<Complex>& data() const noexcept { return data_; }

  /// Copy of the r x c block whose top-left corner is (row, col).
  Matrix block(std::size_t row, std::size_t col, std::size_t r, std::size_t c) const;
  void set_block(std::size_t row, std::size_t col, const Matrix& b);

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(Complex s);

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix mul(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, Complex s);
Matrix transpose(const Matrix& a);
Matrix conj_transpose(const Matrix& a);
double frobenius_norm(const Matrix& a);

/// a^k for square a; a^0 is the identity.
Matrix matrix_power(const Matrix& a, unsigned k);

inline Matrix operator+(const Matrix& a, const Matrix& b) { return add(a, b); }
inline Matrix operator-(const Matrix& a, const Matrix& b) { return sub(a, b); }
inline Matrix operator-(const Matrix& a) { return scale(a, -1.0); }
inline Matrix operator*(const Matrix& a, const Matrix& b) { return mul(a, b); }
inline Matrix operator*(Complex s, const Matrix& a) { return scale(a, s); }

/// ||a - b||_F / max(1, ||b||_F).
double relative_difference(const Matrix& a, const Matrix& b);

/// Assembles [[tl, tr], [bl, br]]. Row heights and column widths must agree.
Matrix assemble_blocks(const Matrix& tl, const Matrix& tr, const Matrix& bl, const Matrix& br);

/// Square block diagonal diag(a, b).
Matrix block_diagonal(const Matrix& a, const Matrix& b);

/// Full-rank factorization a ~= left * right with left n x r and right r x m.
struct RankFactorization {
  Matrix left;
  Matrix right;
  std::size_t rank = 0;
  double tolerance_used = 0.0;
};

/// Gaussian elimination with complete pivoting. A pivot is kept while its
/// modulus exceeds tol times the first (largest) pivot modulus and also
/// exceeds the absolute `floor`.
RankFactorization rank_factorize(const Matrix& a, double tol = kDefaultTol, double floor = 0.0);

std::size_t numerical_rank(const Matrix& a, double tol = kDefaultTol, double floor = 0.0);

/// Solves a * x = b for square a. Throws SingularMatrixError when a is
/// rank deficient at tol.
Matrix solve(const Matrix& a, const Matrix& b, double tol = kDefaultTol);
Matrix invert(const Matrix& a, double tol = kDefaultTol);

std::string to_string(const Matrix& a, int precision = 6);

}  // namespace ginv

#endif  // GINV_MATRIX_HPP
