#ifndef GINV_DRAZIN_HPP
#define GINV_DRAZIN_HPP

#include <string>
#include <vector>

#include "ginv/matrix.hpp"

namespace ginv {

/// A^D together with ind(A) and the spectral idempotent A^pi = I - A A^D.
struct DrazinResult {
  Matrix drazin;
  unsigned index = 0;
  Matrix idempotent;
  double commutation_residual = 0.0;  // ||A X - X A||
  double inner_residual = 0.0;        // ||X A X - X||
  double power_residual = 0.0;        // ||A^{k+1} X - A^k||
};

struct GroupResult {
  Matrix group;
  Matrix idempotent;
};

class NoGroupInverseError : public std::runtime_error {
 public:
  explicit NoGroupInverseError(unsigned index);
  unsigned index() const noexcept { return index_; }

 private:
  unsigned index_;
};

/// Raised when rank decisions across recursion levels are inconsistent.
class RankToleranceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One named residual compared against its threshold.
struct ConditionEntry {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
  /// Existence clauses decide whether a group inverse exists; all other
  /// entries are hypotheses whose failure is a usage error.
  bool existence_clause = false;
};

struct ConditionReport {
  std::vector<ConditionEntry> entries;
  bool overall = true;

  void add(ConditionEntry entry);
  const ConditionEntry* find(const std::string& name) const;
  bool hypotheses_hold() const;
  bool existence_holds() const;
  std::vector<std::string> failed(bool existence_clauses) const;
};

/// Smallest k with rank(a^k) == rank(a^{k+1}).
/// `scale` raises the noise floor when a is a small piece of a larger
/// computation: pivots below tol * max(||a||, scale)^k count as zero.
unsigned index_of(const Matrix& a, double tol = kDefaultTol, double scale = 0.0);

/// Drazin inverse by the full-rank-factorization recursion
///   a = B C,  a^D = B ((C B)^D)^2 C,
/// stopping when C B is invertible or zero. The returned index is read off
/// the recursion depth: rank(a^j) equals the order of the j-th level matrix.
/// Pivots below tol * max(||a||, scale) count as zero.
DrazinResult drazin(const Matrix& a, double tol = kDefaultTol, double scale = 0.0);

Matrix spectral_idempotent(const Matrix& a, double tol = kDefaultTol);

/// Throws NoGroupInverseError when ind(a) >= 2.
GroupResult group_inverse(const Matrix& a, double tol = kDefaultTol);

/// Residuals of  A X = X A,  X A X = X,  A^{k+1} X = A^k,  each against
/// tol * max(1, ||a||) * max(1, ||x||).
ConditionReport verify_drazin_axioms(const Matrix& a, const Matrix& x, unsigned k,
                                     double tol = kDefaultTol);

}  // namespace ginv

#endif  // GINV_DRAZIN_HPP
