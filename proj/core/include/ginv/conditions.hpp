#ifndef GINV_CONDITIONS_HPP
#define GINV_CONDITIONS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ginv/block_pair.hpp"
#include "ginv/drazin.hpp"

namespace ginv {

/// Threshold scale shared by every hypothesis check:
/// tol * max(1, ||E||) * max(1, ||F||).
double condition_threshold(const Matrix& e, const Matrix& f, double tol);

/// Least-squares fit of lambda in EF = lambda FE (0 when FE = 0).
Complex fit_lambda(const Matrix& e, const Matrix& f);

/// Residual names used in reports:
///   EFE, F2E            ||EFE||, ||F^2 E||
///   EFEFpi, F2EFpi      ||EFEF^pi||, ||F^2 E F^pi||
///   FEFpi, FpiEF        ||FEF^pi||, ||F^pi E F||
///   FEFpi|FpiEF         the smaller of the two
///   EpiFpi, FpiEpi      ||E^pi F^pi||, ||F^pi E^pi||
///   EEpiFpi, FpiEpiE    ||E E^pi F^pi||, ||F^pi E^pi E||
///   F_group, E_group    ||F F^pi||, ||E E^pi||  (zero iff index <= 1)
///   commutation         min(||EF - lambda FE||, ||EF^2 - FEF||)
/// Entries flagged existence_clause decide existence of the group inverse.
ConditionReport check_conditions(const Matrix& e, const Matrix& f, FormulaId id,
                                 double tol = kDefaultTol,
                                 std::optional<Complex> lambda = std::nullopt);

/// Names of the conditions check_conditions reports for `id`, in order.
std::vector<std::string> condition_names(FormulaId id);

struct GeneratorRecipe {
  FormulaId formula = FormulaId::thm25;
  std::size_t dimension = 2;
  std::uint64_t seed = 0;
  /// Condition name to break on purpose; empty for a satisfying pair.
  std::string violate;
};

class InfeasibleRecipeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Deterministic (E, F) for the recipe. F = S diag(C, N) S^-1 with S a well-conditioned
/// unimodular integer matrix, C diagonal invertible and N nilpotent Jordan
/// blocks; E = S E' S^-1 where E' has the block shape each hypothesis forces.
/// Every candidate is screened with check_conditions and regenerated from a
/// derived seed until it passes (or fails exactly the requested condition).
BlockPair generate(const GeneratorRecipe& recipe);

/// E = [[1, 2], [0, -1]], F = [[i, i], [0, 0]], pattern EF_F0.
BlockPair example_45();

}  // namespace ginv

#endif  // GINV_CONDITIONS_HPP
