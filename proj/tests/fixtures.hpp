#ifndef GINV_TESTS_FIXTURES_HPP
#define GINV_TESTS_FIXTURES_HPP

#include <random>

#include "ginv/ginv.hpp"

namespace ginv::test {

/// Largest entrywise modulus of a - b.
inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, double bound = 1.0) {
  std::uniform_real_distribution<double> u(-bound, bound);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Complex{u(rng), u(rng)};
  }
  return m;
}

/// n x n nilpotent Jordan block of index n.
inline Matrix jordan(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = 1.0;
  return m;
}

/// Diagonally dominant, hence comfortably invertible.
inline Matrix well_conditioned(std::mt19937_64& rng, std::size_t n) {
  Matrix m = random_matrix(rng, n, n, 0.5);
  for (std::size_t i = 0; i < n; ++i) m(i, i) += static_cast<double>(n) + 1.0;
  return m;
}

enum class Mix { Invertible, Nilpotent, Idempotent, Similarity, Dense };

/// Square matrix of order n from one of the Mix families. Similarity builds
/// S diag(C, N) S^-1 with C invertible and N a sum of Jordan blocks.
inline Matrix mixed_matrix(std::mt19937_64& rng, std::size_t n, Mix kind) {
  std::uniform_int_distribution<std::size_t> split(0, n);
  switch (kind) {
    case Mix::Invertible:
      return well_conditioned(rng, n);
    case Mix::Nilpotent: {
      const Matrix s = well_conditioned(rng, n);
      return s * jordan(n) * invert(s);
    }
    case Mix::Idempotent: {
      const std::size_t r = split(rng);
      std::vector<Complex> d(n, 0.0);
      for (std::size_t i = 0; i < r; ++i) d[i] = 1.0;
      const Matrix s = well_conditioned(rng, n);
      return s * Matrix::diagonal(d) * invert(s);
    }
    case Mix::Similarity: {
      const std::size_t r = split(rng);
      Matrix core = Matrix::zeros(n);
      core.set_block(0, 0, well_conditioned(rng, r));
      // Nilpotent part: Jordan blocks of random sizes.
      std::size_t at = r;
      while (at < n) {
        const std::size_t size = std::uniform_int_distribution<std::size_t>(1, n - at)(rng);
        core.set_block(at, at, jordan(size));
        at += size;
      }
      const Matrix s = well_conditioned(rng, n);
      return s * core * invert(s);
    }
    case Mix::Dense:
      return random_matrix(rng, n, n);
  }
  return Matrix::zeros(n);
}

}  // namespace ginv::test

#endif  // GINV_TESTS_FIXTURES_HPP
