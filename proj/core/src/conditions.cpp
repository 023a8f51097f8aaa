#include "ginv/conditions.hpp"

#include <algorithm>

namespace ginv {

namespace {

struct NamedFormula {
  FormulaId id;
  std::string_view name;
  Pattern pattern;
  bool group;
};

constexpr NamedFormula kFormulaTable[] = {
    {FormulaId::thm23, "thm23", Pattern::EI_F0, false},
    {FormulaId::thm25, "thm25", Pattern::EI_F0, false},
    {FormulaId::cor26, "cor26", Pattern::EF_I0, false},
    {FormulaId::thm27, "thm27", Pattern::EI_F0, false},
    {FormulaId::thm31, "thm31", Pattern::EI_F0, true},
    {FormulaId::cor32, "cor32", Pattern::EF_I0, true},
    {FormulaId::thm33, "thm33", Pattern::EF_I0, true},
    {FormulaId::cor34, "cor34", Pattern::EI_F0, true},
    {FormulaId::cor35, "cor35", Pattern::EF_I0, true},
    {FormulaId::thm41, "thm41", Pattern::EF_F0, true},
    {FormulaId::cor42, "cor42", Pattern::EF_F0, true},
    {FormulaId::cor43, "cor43", Pattern::EF_F0, true},
    {FormulaId::cor44, "cor44", Pattern::EF_F0, true},
};

const NamedFormula& lookup(FormulaId id) {
  for (const auto& row : kFormulaTable) {
    if (row.id == id) return row;
  }
  throw std::invalid_argument("unknown formula id");
}

// Spectral idempotents are computed on demand and shared between entries.
class Workspace {
 public:
  Workspace(const Matrix& e, const Matrix& f, double tol) : e_(e), f_(f), tol_(tol) {}

  const Matrix& e() const { return e_; }
  const Matrix& f() const { return f_; }
  const Matrix& e_pi() {
    if (!e_pi_) e_pi_ = spectral_idempotent(e_, tol_);
    return *e_pi_;
  }
  const Matrix& f_pi() {
    if (!f_pi_) f_pi_ = spectral_idempotent(f_, tol_);
    return *f_pi_;
  }

 private:
  const Matrix& e_;
  const Matrix& f_;
  double tol_;
  std::optional<Matrix> e_pi_;
  std::optional<Matrix> f_pi_;
};

double residual_of(const std::string& name, Workspace& w, std::optional<Complex> lambda) {
  const Matrix& e = w.e();
  const Matrix& f = w.f();
  if (name == "EFE") return frobenius_norm(e * f * e);
  if (name == "F2E") return frobenius_norm(f * f * e);
  if (name == "EFEFpi") return frobenius_norm(e * f * e * w.f_pi());
  if (name == "F2EFpi") return frobenius_norm(f * f * e * w.f_pi());
  if (name == "FEFpi") return frobenius_norm(f * e * w.f_pi());
  if (name == "FpiEF") return frobenius_norm(w.f_pi() * e * f);
  if (name == "FEFpi|FpiEF") {
    return std::min(frobenius_norm(f * e * w.f_pi()), frobenius_norm(w.f_pi() * e * f));
  }
  if (name == "EpiFpi") return frobenius_norm(w.e_pi() * w.f_pi());
  if (name == "FpiEpi") return frobenius_norm(w.f_pi() * w.e_pi());
  if (name == "EEpiFpi") return frobenius_norm(e * w.e_pi() * w.f_pi());
  if (name == "FpiEpiE") return frobenius_norm(w.f_pi() * w.e_pi() * e);
  if (name == "F_group") return frobenius_norm(f * w.f_pi());
  if (name == "E_group") return frobenius_norm(e * w.e_pi());
  if (name == "commutation") {
    const Matrix ef = e * f;
    const Matrix fe = f * e;
    const Complex l = lambda ? *lambda : fit_lambda(e, f);
    return std::min(frobenius_norm(ef - l * fe), frobenius_norm(ef * f - f * e * f));
  }
  throw std::invalid_argument("unknown condition name: " + name);
}

struct ConditionSpec {
  std::string name;
  bool existence;
};

std::vector<ConditionSpec> specs_for(FormulaId id) {
  switch (id) {
    case FormulaId::thm23:
      return {{"EFE", false}, {"F2E", false}};
    case FormulaId::thm25:
    case FormulaId::cor26:
    case FormulaId::thm27:
      return {{"EFEFpi", false}, {"F2EFpi", false}};
    case FormulaId::thm31:
    case FormulaId::cor32:
      return {{"FEFpi", false}, {"F_group", true}, {"EpiFpi", true}};
    case FormulaId::thm33:
    case FormulaId::cor34:
      return {{"FpiEF", false}, {"F_group", true}, {"FpiEpi", true}};
    case FormulaId::cor35:
      return {{"commutation", false}, {"F_group", true}, {"FpiEpi", true}};
    case FormulaId::thm41:
      return {{"FEFpi", false}, {"F_group", false}, {"EEpiFpi", true}};
    case FormulaId::cor42:
      return {{"FpiEF", false}, {"F_group", false}, {"FpiEpiE", true}};
    case FormulaId::cor43:
      return {{"FEFpi|FpiEF", false}, {"E_group", false}, {"F_group", false}};
    case FormulaId::cor44:
      return {{"commutation", false}, {"E_group", false}, {"F_group", false}};
  }
  throw std::invalid_argument("unknown formula id");
}

}  // namespace

std::string_view to_string(FormulaId id) { return lookup(id).name; }

std::optional<FormulaId> parse_formula_id(std::string_view name) {
  for (const auto& row : kFormulaTable) {
    if (row.name == name) return row.id;
  }
  return std::nullopt;
}

std::string_view to_string(Pattern pattern) {
  switch (pattern) {
    case Pattern::EI_F0:
      return "EI_F0";
    case Pattern::EF_I0:
      return "EF_I0";
    case Pattern::EF_F0:
      return "EF_F0";
  }
  return "?";
}

std::optional<Pattern> parse_pattern(std::string_view name) {
  for (Pattern p : {Pattern::EI_F0, Pattern::EF_I0, Pattern::EF_F0}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

Pattern pattern_of(FormulaId id) { return lookup(id).pattern; }

bool is_group_formula(FormulaId id) { return lookup(id).group; }

double condition_threshold(const Matrix& e, const Matrix& f, double tol) {
  return tol * std::max(1.0, frobenius_norm(e)) * std::max(1.0, frobenius_norm(f));
}

Complex fit_lambda(const Matrix& e, const Matrix& f) {
  const Matrix ef = e * f;
  const Matrix fe = f * e;
  Complex num{};
  double den = 0.0;
  for (std::size_t k = 0; k < fe.data().size(); ++k) {
    num += std::conj(fe.data()[k]) * ef.data()[k];
    den += std::norm(fe.data()[k]);
  }
  return den == 0.0 ? Complex{} : num / den;
}

std::vector<std::string> condition_names(FormulaId id) {
  std::vector<std::string> names;
  for (auto& s : specs_for(id)) names.push_back(std::move(s.name));
  return names;
}

ConditionReport check_conditions(const Matrix& e, const Matrix& f, FormulaId id, double tol,
                                 std::optional<Complex> lambda) {
  if (!e.square() || !f.square() || e.rows() != f.rows()) {
    throw ShapeError("check_conditions: E and F must be square of equal order");
  }
  const double threshold = condition_threshold(e, f, tol);
  Workspace w(e, f, tol);
  ConditionReport report;
  for (const auto& spec : specs_for(id)) {
    const double r = residual_of(spec.name, w, lambda);
    report.add({spec.name, r, threshold, r <= threshold, spec.existence});
  }
  return report;
}

BlockPair example_45() {
  const Complex i{0.0, 1.0};
  return {Matrix{{1.0, 2.0}, {0.0, -1.0}}, Matrix{{i, i}, {0.0, 0.0}}, Pattern::EF_F0,
          std::nullopt};
}

}  // namespace ginv
