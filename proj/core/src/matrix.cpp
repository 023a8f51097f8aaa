#include "ginv/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <utility>

namespace ginv {

namespace {

bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << op << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
        << b.cols();
    throw ShapeError(msg.str());
  }
}

// In-place elimination with complete pivoting. On return the leading rank x rank
// part of `w` holds L (strictly below the diagonal, unit diagonal implied) and U.
struct Elimination {
  Matrix w;
  std::vector<std::size_t> row_perm;
  std::vector<std::size_t> col_perm;
  std::size_t rank = 0;
};

Elimination eliminate(const Matrix& a, double tol, double floor) {
  Elimination e{a, {}, {}, 0};
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  e.row_perm.resize(n);
  e.col_perm.resize(m);
  std::iota(e.row_perm.begin(), e.row_perm.end(), 0);
  std::iota(e.col_perm.begin(), e.col_perm.end(), 0);

  Matrix& w = e.w;
  double first_pivot = 0.0;
  const std::size_t steps = std::min(n, m);
  for (std::size_t k = 0; k < steps; ++k) {
    std::size_t pi = k;
    std::size_t pj = k;
    double best = -1.0;
    for (std::size_t i = k; i < n; ++i) {
      for (std::size_t j = k; j < m; ++j) {
        const double v = std::abs(w(i, j));
        if (v > best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    }
    if (k == 0) first_pivot = best;
    if (best == 0.0 || best <= tol * first_pivot || best <= floor) break;

    if (pi != k) {
      for (std::size_t j = 0; j < m; ++j) std::swap(w(k, j), w(pi, j));
      std::swap(e.row_perm[k], e.row_perm[pi]);
    }
    if (pj != k) {
      for (std::size_t i = 0; i < n; ++i) std::swap(w(i, k), w(i, pj));
      std::swap(e.col_perm[k], e.col_perm[pj]);
    }

    const Complex pivot = w(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex l = w(i, k) / pivot;
      w(i, k) = l;
      if (l == Complex{}) continue;
      for (std::size_t j = k + 1; j < m; ++j) w(i, j) -= l * w(k, j);
    }
    e.rank = k + 1;
  }
  return e;
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw ShapeError("Matrix: data length " + std::to_string(data_.size()) + " does not match " +
                     std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  for (const auto& z : data_) {
    if (!finite(z)) throw std::invalid_argument("Matrix: non-finite entry");
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ShapeError("Matrix: ragged initializer");
    for (const auto& z : row) {
      if (!finite(z)) throw std::invalid_argument("Matrix: non-finite entry");
      data_.push_back(z);
    }
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) r(i, i) = 1.0;
  return r;
}

Matrix Matrix::diagonal(const std::vector<Complex>& entries) {
  Matrix r(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!finite(entries[i])) throw std::invalid_argument("Matrix: non-finite entry");
    r(i, i) = entries[i];
  }
  return r;
}

Matrix Matrix::block(std::size_t row, std::size_t col, std::size_t r, std::size_t c) const {
  if (row + r > rows_ || col + c > cols_) throw ShapeError("Matrix::block: out of range");
  Matrix out(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) out(i, j) = (*this)(row + i, col + j);
  }
  return out;
}

void Matrix::set_block(std::size_t row, std::size_t col, const Matrix& b) {
  if (row + b.rows() > rows_ || col + b.cols() > cols_) {
    throw ShapeError("Matrix::set_block: out of range");
  }
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(row + i, col + j) = b(i, j);
  }
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_shape(*this, other, "add");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_shape(*this, other, "sub");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

Matrix add(const Matrix& a, const Matrix& b) {
  Matrix r = a;
  r += b;
  return r;
}

Matrix sub(const Matrix& a, const Matrix& b) {
  Matrix r = a;
  r -= b;
  return r;
}

Matrix mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream msg;
    msg << "mul: inner dimensions differ (" << a.rows() << "x" << a.cols() << " * " << b.rows()
        << "x" << b.cols() << ")";
    throw ShapeError(msg.str());
  }
  Matrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  }
  return r;
}

Matrix scale(const Matrix& a, Complex s) {
  Matrix r = a;
  r *= s;
  return r;
}

Matrix transpose(const Matrix& a) {
  Matrix r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  }
  return r;
}

Matrix conj_transpose(const Matrix& a) {
  Matrix r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = std::conj(a(i, j));
  }
  return r;
}

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (const auto& z : a.data()) s += std::norm(z);
  return std::sqrt(s);
}

Matrix matrix_power(const Matrix& a, unsigned k) {
  if (!a.square()) throw ShapeError("matrix_power: matrix is not square");
  Matrix result = Matrix::identity(a.rows());
  Matrix base = a;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

double relative_difference(const Matrix& a, const Matrix& b) {
  return frobenius_norm(a - b) / std::max(1.0, frobenius_norm(b));
}

Matrix assemble_blocks(const Matrix& tl, const Matrix& tr, const Matrix& bl, const Matrix& br) {
  if (tl.rows() != tr.rows() || bl.rows() != br.rows() || tl.cols() != bl.cols() ||
      tr.cols() != br.cols()) {
    throw ShapeError("assemble_blocks: incompatible block shapes");
  }
  Matrix r(tl.rows() + bl.rows(), tl.cols() + tr.cols());
  r.set_block(0, 0, tl);
  r.set_block(0, tl.cols(), tr);
  r.set_block(tl.rows(), 0, bl);
  r.set_block(tl.rows(), tl.cols(), br);
  return r;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  return assemble_blocks(a, Matrix(a.rows(), b.cols()), Matrix(b.rows(), a.cols()), b);
}

RankFactorization rank_factorize(const Matrix& a, double tol, double floor) {
  if (!(tol > 0.0)) throw std::invalid_argument("rank_factorize: tol must be positive");
  const Elimination e = eliminate(a, tol, floor);
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  const std::size_t r = e.rank;

  RankFactorization f{Matrix(n, r), Matrix(r, m), r, tol};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < r && k <= i; ++k) {
      f.left(e.row_perm[i], k) = (i == k) ? Complex{1.0} : e.w(i, k);
    }
  }
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t j = k; j < m; ++j) f.right(k, e.col_perm[j]) = e.w(k, j);
  }
  return f;
}

std::size_t numerical_rank(const Matrix& a, double tol, double floor) {
  return eliminate(a, tol, floor).rank;
}

Matrix solve(const Matrix& a, const Matrix& b, double tol) {
  if (!a.square()) throw ShapeError("solve: matrix is not square");
  if (b.rows() != a.rows()) throw ShapeError("solve: right-hand side has wrong row count");
  const std::size_t n = a.rows();
  const Elimination e = eliminate(a, tol, 0.0);
  if (e.rank < n) {
    throw SingularMatrixError("solve: matrix is singular to tolerance (rank " +
                              std::to_string(e.rank) + " of " + std::to_string(n) + ")");
  }
  Matrix x(n, b.cols());
  std::vector<Complex> z(n);
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i) z[i] = b(e.row_perm[i], c);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < i; ++k) z[i] -= e.w(i, k) * z[k];
    }
    for (std::size_t ii = n; ii-- > 0;) {
      for (std::size_t k = ii + 1; k < n; ++k) z[ii] -= e.w(ii, k) * z[k];
      z[ii] /= e.w(ii, ii);
    }
    for (std::size_t j = 0; j < n; ++j) x(e.col_perm[j], c) = z[j];
  }
  return x;
}

Matrix invert(const Matrix& a, double tol) { return solve(a, Matrix::identity(a.rows()), tol); }

std::string to_string(const Matrix& a, int precision) {
  std::ostringstream os;
  os << std::setprecision(precision);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    os << (i == 0 ? "[[" : " [");
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex z = a(i, j);
      if (j > 0) os << ", ";
      os << z.real();
      if (z.imag() != 0.0) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    }
    os << (i + 1 == a.rows() ? "]]" : "]\n");
  }
  if (a.rows() == 0) os << "[]";
  return os.str();
}

}  // namespace ginv
