#ifndef GINV_TESTS_SUPPORT_HPP
#define GINV_TESTS_SUPPORT_HPP

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace ginv {

// Readable parameter values in test names and failure output.
inline void PrintTo(FormulaId id, std::ostream* os) { *os << to_string(id); }

namespace test {

inline const char* mix_name(Mix kind) {
  switch (kind) {
    case Mix::Invertible:
      return "Invertible";
    case Mix::Nilpotent:
      return "Nilpotent";
    case Mix::Idempotent:
      return "Idempotent";
    case Mix::Similarity:
      return "Similarity";
    case Mix::Dense:
      return "Dense";
  }
  return "?";
}

inline void PrintTo(Mix kind, std::ostream* os) { *os << mix_name(kind); }

inline ::testing::AssertionResult close(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return ::testing::AssertionFailure() << "shape " << a.rows() << "x" << a.cols() << " vs "
                                         << b.rows() << "x" << b.cols();
  }
  const double d = relative_difference(a, b);
  if (d <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "relative difference " << d << " > " << tol << "\n"
                                       << to_string(a) << "\nvs\n"
                                       << to_string(b);
}

}  // namespace test
}  // namespace ginv

#endif  // GINV_TESTS_SUPPORT_HPP
