#ifndef GINV_BLOCK_PAIR_HPP
#define GINV_BLOCK_PAIR_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "ginv/matrix.hpp"

namespace ginv {

/// Placement of E and F in the 2n x 2n matrix.
enum class Pattern {
  EI_F0,  // [[E, I], [F, 0]]
  EF_I0,  // [[E, F], [I, 0]]
  EF_F0,  // [[E, F], [F, 0]]
};

struct BlockPair {
  Matrix e;
  Matrix f;
  Pattern pattern = Pattern::EI_F0;
  /// Commutation scalar for EF = lambda FE, when known.
  std::optional<Complex> lambda;
};

/// Closed-form block representations. The string ids are the names used on
/// the command line.
enum class FormulaId {
  thm23,  // Drazin, [[E,I],[F,0]], EFE = 0 and F^2 E = 0
  thm25,  // Drazin, [[E,I],[F,0]], EFEF^pi = 0 and F^2 E F^pi = 0
  cor26,  // Drazin, [[E,F],[I,0]], same hypotheses
  thm27,  // as thm25 with explicit series caps
  thm31,  // group, [[E,I],[F,0]], FEF^pi = 0
  cor32,  // group, [[E,F],[I,0]], FEF^pi = 0
  thm33,  // group, [[E,F],[I,0]], F^pi E F = 0
  cor34,  // group, [[E,I],[F,0]], F^pi E F = 0
  cor35,  // group, [[E,F],[I,0]], EF = lambda FE or EF^2 = FEF
  thm41,  // group, [[E,F],[F,0]], FEF^pi = 0, F group invertible
  cor42,  // group, [[E,F],[F,0]], F^pi E F = 0, F group invertible
  cor43,  // group, [[E,F],[F,0]], E and F group invertible
  cor44,  // group, [[E,F],[F,0]], commutation, E and F group invertible
};

inline constexpr std::array<FormulaId, 13> kAllFormulas = {
    FormulaId::thm23, FormulaId::thm25, FormulaId::cor26, FormulaId::thm27, FormulaId::thm31,
    FormulaId::cor32, FormulaId::thm33, FormulaId::cor34, FormulaId::cor35, FormulaId::thm41,
    FormulaId::cor42, FormulaId::cor43, FormulaId::cor44};

std::string_view to_string(FormulaId id);
std::optional<FormulaId> parse_formula_id(std::string_view name);

std::string_view to_string(Pattern pattern);
std::optional<Pattern> parse_pattern(std::string_view name);

/// The assembly pattern each formula is stated for.
Pattern pattern_of(FormulaId id);

/// True for the group-inverse family, whose answer may be "does not exist".
bool is_group_formula(FormulaId id);

}  // namespace ginv

#endif  // GINV_BLOCK_PAIR_HPP
