#include "ginv/drazin.hpp"

#include <algorithm>

namespace ginv {

NoGroupInverseError::NoGroupInverseError(unsigned index)
    : std::runtime_error("no group inverse: index " + std::to_string(index) + " >= 2"),
      index_(index) {}

void ConditionReport::add(ConditionEntry entry) {
  overall = overall && entry.pass;
  entries.push_back(std::move(entry));
}

const ConditionEntry* ConditionReport::find(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

bool ConditionReport::hypotheses_hold() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const ConditionEntry& e) { return e.existence_clause || e.pass; });
}

bool ConditionReport::existence_holds() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const ConditionEntry& e) { return !e.existence_clause || e.pass; });
}

std::vector<std::string> ConditionReport::failed(bool existence_clauses) const {
  std::vector<std::string> names;
  for (const auto& e : entries) {
    if (!e.pass && e.existence_clause == existence_clauses) names.push_back(e.name);
  }
  return names;
}

unsigned index_of(const Matrix& a, double tol, double scale) {
  if (!a.square()) throw ShapeError("index_of: matrix is not square");
  const std::size_t n = a.rows();
  // Rounding noise in a^k scales like ||a||^k, so the floor does too.
  const double norm = std::max(frobenius_norm(a), scale);
  std::size_t prev_rank = n;
  Matrix power = a;
  double floor = tol * norm;
  for (unsigned k = 0; k <= n; ++k) {
    const std::size_t r = numerical_rank(power, tol, floor);
    if (r == prev_rank) return k;
    prev_rank = r;
    power = power * a;
    floor *= norm;
  }
  throw RankToleranceError("index_of: rank sequence did not stabilise within n steps");
}

namespace {

struct Level {
  Matrix left;   // B_j
  Matrix right;  // C_j
};

}  // namespace

DrazinResult drazin(const Matrix& a, double tol, double scale) {
  if (!a.square()) throw ShapeError("drazin: matrix is not square");
  const std::size_t n = a.rows();

  // Every level is similar to a compression of a, so entries below
  // tol * ||a|| are treated as rounding noise.
  const double floor = tol * std::max(frobenius_norm(a), scale);
  std::vector<Level> levels;
  Matrix current = a;
  Matrix core;  // Drazin inverse at the deepest level
  unsigned index = 0;
  for (std::size_t depth = 0;; ++depth) {
    if (depth > n) throw RankToleranceError("drazin: recursion deeper than matrix order");
    const std::size_t order = current.rows();
    if (order == 0) {
      core = Matrix();
      index = static_cast<unsigned>(depth);
      break;
    }
    RankFactorization f = rank_factorize(current, tol, floor);
    if (f.rank == order) {
      core = invert(current, tol);
      index = static_cast<unsigned>(depth);
      break;
    }
    if (f.rank == 0) {
      core = Matrix::zeros(order);
      index = static_cast<unsigned>(depth + 1);
      break;
    }
    current = f.right * f.left;
    levels.push_back({std::move(f.left), std::move(f.right)});
  }

  Matrix x = std::move(core);
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    x = it->left * (x * x) * it->right;
  }

  DrazinResult result;
  result.drazin = std::move(x);
  result.index = index;
  result.idempotent = Matrix::identity(n) - a * result.drazin;
  const Matrix ax = a * result.drazin;
  result.commutation_residual = frobenius_norm(ax - result.drazin * a);
  result.inner_residual = frobenius_norm(result.drazin * ax - result.drazin);
  const Matrix ak = matrix_power(a, index);
  result.power_residual = frobenius_norm(ak * ax - ak);
  return result;
}

Matrix spectral_idempotent(const Matrix& a, double tol) { return drazin(a, tol).idempotent; }

GroupResult group_inverse(const Matrix& a, double tol) {
  DrazinResult d = drazin(a, tol);
  if (d.index > 1) throw NoGroupInverseError(d.index);
  return {std::move(d.drazin), std::move(d.idempotent)};
}

ConditionReport verify_drazin_axioms(const Matrix& a, const Matrix& x, unsigned k, double tol) {
  if (!a.square() || a.rows() != x.rows() || a.cols() != x.cols()) {
    throw ShapeError("verify_drazin_axioms: shapes do not match");
  }
  const double threshold =
      tol * std::max(1.0, frobenius_norm(a)) * std::max(1.0, frobenius_norm(x));
  const Matrix ax = a * x;
  const Matrix ak = matrix_power(a, k);

  ConditionReport report;
  auto entry = [&](std::string name, double residual) {
    report.add({std::move(name), residual, threshold, residual <= threshold, false});
  };
  entry("commutation", frobenius_norm(ax - x * a));
  entry("inner", frobenius_norm(x * ax - x));
  entry("power", frobenius_norm(ak * ax - ak));
  return report;
}

}  // namespace ginv
