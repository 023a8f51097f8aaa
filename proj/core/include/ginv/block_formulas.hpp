#ifndef GINV_BLOCK_FORMULAS_HPP
#define GINV_BLOCK_FORMULAS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ginv/block_pair.hpp"
#include "ginv/conditions.hpp"
#include "ginv/drazin.hpp"

namespace ginv {

enum class InverseKind { GDrazin, Drazin, Group };

std::string_view to_string(InverseKind kind);

/// The four n x n blocks of a 2n x 2n inverse, [[tl, tr], [bl, br]].
struct Blocks {
  Matrix tl, tr, bl, br;

  Matrix assemble() const { return assemble_blocks(tl, tr, bl, br); }
  static Blocks split(const Matrix& m);
};

/// Agreement between the displayed closed form and an independent route.
struct RouteCheck {
  std::string name;
  double difference = 0.0;  // relative Frobenius difference
  bool agree = false;
};

struct Diagnostics {
  std::vector<RouteCheck> routes;
  std::vector<std::string> notes;
  std::map<std::string, unsigned> truncation;
  /// "display" when the closed form is returned, otherwise the route used.
  std::string returned = "display";

  bool discrepancy() const;
};

/// Relative tolerance under which two routes are said to agree.
inline constexpr double kRouteTol = 1e-8;

struct BlockResult {
  Blocks blocks;
  InverseKind kind = InverseKind::Drazin;
  Diagnostics diagnostics;
};

/// Symbols of the Pierce splitting of [[E, I], [F, 0]] with respect to
/// p = diag(F^pi, 0). Every symbol is stored as a 2n x 2n matrix.
struct PierceSplitting {
  Matrix pierce_p;
  Matrix alpha;    // p M p        = diag(E F^pi, 0)
  Matrix beta;     // p M (1 - p)  = [[F^pi E F F^D, F^pi], [0, 0]]
  Matrix gamma;    // (1 - p) M p  = [[0, 0], [F F^pi, 0]]
  Matrix delta;    // (1 - p) M (1 - p)
  Matrix delta_d;  // [[0, F^D], [F F^D, -F F^D E F^D]]
  Matrix lambda, sigma, gamma_blk, delta_blk;  // series in alpha^D and beta gamma
  Matrix eps, zeta, eta, theta;                // summands of Q^D, Q = alpha + beta + gamma
  /// Corners of Q^n for n = 1, 2, ...: eps_n = p Q^n p, zeta_n = p Q^n (1-p),
  /// eta_n = (1-p) Q^n p, theta_n = (1-p) Q^n (1-p).
  std::vector<Matrix> eps_n, zeta_n, eta_n, theta_n;
};

struct PierceResult {
  BlockResult result;
  PierceSplitting parts;
};

/// Names the clauses that failed when a group inverse does not exist.
struct NoGroupInverse {
  std::vector<std::string> failed;
};

struct GroupFormulaResult {
  /// [[Gamma, Delta], [Lambda, Xi]] when the group inverse exists.
  std::optional<Blocks> blocks;
  NoGroupInverse absent;
  Diagnostics diagnostics;

  bool exists() const { return blocks.has_value(); }
};

/// A hypothesis of the formula does not hold; carries the full report.
class HypothesisError : public std::invalid_argument {
 public:
  HypothesisError(const std::string& formula, ConditionReport report);
  const ConditionReport& report() const noexcept { return report_; }

 private:
  ConditionReport report_;
};

// Building blocks --------------------------------------------------------

/// Drazin inverse of the lower-triangular [[A, 0], [C, B]]:
/// [[A^D, 0], [Z, B^D]] with
/// Z = sum (B^D)^{i+2} C A^i A^pi + sum B^i B^pi C (A^D)^{i+2} - B^D C A^D.
/// Here A is k x k, B is m x m and C is m x k; the blocks are not square in general.
struct TriangularBlocks {
  Matrix a_d, z, b_d;
  std::map<std::string, unsigned> truncation;
  Matrix assemble() const;
};
TriangularBlocks triangular_drazin(const Matrix& a, const Matrix& b, const Matrix& c,
                                   double tol = kDefaultTol);

/// (P + Q)^D when PQP = 0 and Q^2 P = 0.
Matrix additive_drazin_pqp(const Matrix& p, const Matrix& q, double tol = kDefaultTol);

/// (P + Q)^D when PQ = 0.
Matrix additive_drazin_pq(const Matrix& p, const Matrix& q, double tol = kDefaultTol);

/// (A B)^D = A ((B A)^D)^2 B.
Matrix cline_drazin(const Matrix& a, const Matrix& b, double tol = kDefaultTol);

// Drazin inverses of anti-triangular matrices ------------------------------

/// [[E, I], [F, 0]] under EFE = 0, F^2 E = 0. Blocks [[Lambda, Sigma], [Gamma, Delta]].
BlockResult drazin_ei_f0_strict(const Matrix& e, const Matrix& f, double tol = kDefaultTol);

/// [[E, I], [F, 0]] under EFEF^pi = 0, F^2 E F^pi = 0.
PierceResult drazin_ei_f0(const Matrix& e, const Matrix& f, double tol = kDefaultTol);

/// [[E, F], [I, 0]] under the same hypotheses, by Cline's formula.
BlockResult drazin_ef_i0(const Matrix& e, const Matrix& f, double tol = kDefaultTol);

/// As drazin_ei_f0 with the caps k = ind(EF^pi) + 2 ind(F) and m = ind(F)
/// applied literally to every series.
PierceResult drazin_ei_f0_bounded(const Matrix& e, const Matrix& f, double tol = kDefaultTol);

// Group inverses -----------------------------------------------------------

/// [[E, I], [F, 0]] under FEF^pi = 0. Exists iff F^# exists and E^pi F^pi = 0.
GroupFormulaResult group_ei_f0(const Matrix& e, const Matrix& f, double tol = kDefaultTol);

/// [[E, F], [I, 0]] under FEF^pi = 0; same existence clause.
GroupFormulaResult group_ef_i0(const Matrix& e, const Matrix& f, double tol = kDefaultTol);

/// [[E, F], [I, 0]] under F^pi E F = 0. Exists iff F^# exists and F^pi E^pi = 0.
GroupFormulaResult group_ef_i0_dual(const Matrix& e, const Matrix& f, double tol = kDefaultTol);

/// [[E, I], [F, 0]] under F^pi E F = 0; same existence clause.
GroupFormulaResult group_ei_f0_dual(const Matrix& e, const Matrix& f, double tol = kDefaultTol);

/// [[E, F], [I, 0]] when EF = lambda FE or EF^2 = FEF. Without lambda the
/// least-squares fit is used.
GroupFormulaResult group_ef_i0_commuting(const Matrix& e, const Matrix& f,
                                         std::optional<Complex> lambda = std::nullopt,
                                         double tol = kDefaultTol);

/// [[E, F], [F, 0]] under FEF^pi = 0 with F group invertible.
/// Exists iff E E^pi F^pi = 0.
GroupFormulaResult group_ef_f0(const Matrix& e, const Matrix& f, double tol = kDefaultTol);

/// [[E, F], [F, 0]] under F^pi E F = 0 with F group invertible.
/// Exists iff F^pi E^pi E = 0.
GroupFormulaResult group_ef_f0_dual(const Matrix& e, const Matrix& f, double tol = kDefaultTol);

/// [[E, F], [F, 0]] with E and F group invertible and FEF^pi = 0 or
/// F^pi E F = 0. Always exists.
GroupFormulaResult group_ef_f0_both_group(const Matrix& e, const Matrix& f,
                                          double tol = kDefaultTol);

/// [[E, F], [F, 0]] with E, F group invertible and EF = lambda FE or EF^2 = FEF.
GroupFormulaResult group_ef_f0_commuting(const Matrix& e, const Matrix& f,
                                         std::optional<Complex> lambda = std::nullopt,
                                         double tol = kDefaultTol);

// Dispatch -----------------------------------------------------------------

/// Uniform view of any formula's answer.
struct FormulaOutcome {
  FormulaId formula = FormulaId::thm25;
  InverseKind kind = InverseKind::Drazin;
  bool exists = true;
  Blocks blocks;                    // meaningful when exists
  std::vector<std::string> absent;  // failed existence clauses otherwise
  Diagnostics diagnostics;
};

/// Runs the formula for `id` on the pair. Throws HypothesisError when a
/// hypothesis fails.
FormulaOutcome evaluate(FormulaId id, const BlockPair& pair, double tol = kDefaultTol);

}  // namespace ginv

#endif  // GINV_BLOCK_FORMULAS_HPP
