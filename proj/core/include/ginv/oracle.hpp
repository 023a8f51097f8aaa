#ifndef GINV_ORACLE_HPP
#define GINV_ORACLE_HPP

#include <optional>

#include "ginv/block_formulas.hpp"

namespace ginv {

/// Default relative tolerance for formula-vs-oracle comparison.
inline constexpr double kCompareTol = 1e-8;

/// The 2n x 2n matrix for the pair's pattern:
///   EI_F0 [[E, I], [F, 0]],  EF_I0 [[E, F], [I, 0]],  EF_F0 [[E, F], [F, 0]].
Matrix assemble(const BlockPair& pair);

/// Direct inverse of the assembled matrix, computed without any block structure.
struct OracleResult {
  InverseKind kind = InverseKind::Drazin;
  unsigned index = 0;
  /// False only when a group inverse was requested and the index is >= 2.
  bool exists = true;
  Matrix inverse;
  Matrix idempotent;
};

OracleResult oracle_inverse(const BlockPair& pair, InverseKind kind, double tol = kDefaultTol);

struct ComparisonVerdict {
  double relative_error = 0.0;
  double tolerance = kCompareTol;
  bool pass = false;
  unsigned oracle_index = 0;
  InverseKind kind = InverseKind::Drazin;
  /// Formula output checked against the Drazin axioms on the assembled matrix.
  bool axioms_pass = false;
  /// Formula and oracle agree on whether the group inverse exists.
  bool existence_agrees = true;
};

/// ||X - Y||_F / max(1, ||Y||_F) between the formula output X and the oracle
/// output Y. A missing group inverse passes iff the oracle index is >= 2.
ComparisonVerdict compare(const FormulaOutcome& outcome, const BlockPair& pair,
                          double tolerance = kCompareTol, double tol = kDefaultTol);

}  // namespace ginv

#endif  // GINV_ORACLE_HPP
