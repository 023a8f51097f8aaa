#include "ginv/oracle.hpp"

#include <algorithm>

namespace ginv {

Matrix assemble(const BlockPair& pair) {
  const Matrix& e = pair.e;
  const Matrix& f = pair.f;
  if (!e.square() || !f.square() || e.rows() != f.rows()) {
    throw ShapeError("assemble: E and F must be square of equal order");
  }
  const std::size_t n = e.rows();
  const Matrix in = Matrix::identity(n);
  const Matrix zn = Matrix::zeros(n);
  switch (pair.pattern) {
    case Pattern::EI_F0:
      return assemble_blocks(e, in, f, zn);
    case Pattern::EF_I0:
      return assemble_blocks(e, f, in, zn);
    case Pattern::EF_F0:
      return assemble_blocks(e, f, f, zn);
  }
  throw std::invalid_argument("assemble: unknown pattern");
}

OracleResult oracle_inverse(const BlockPair& pair, InverseKind kind, double tol) {
  const Matrix m = assemble(pair);
  DrazinResult d = drazin(m, tol);
  OracleResult out;
  out.kind = kind;
  out.index = d.index;
  out.exists = kind != InverseKind::Group || d.index <= 1;
  out.inverse = std::move(d.drazin);
  out.idempotent = std::move(d.idempotent);
  return out;
}

ComparisonVerdict compare(const FormulaOutcome& outcome, const BlockPair& pair, double tolerance,
                          double tol) {
  const OracleResult oracle = oracle_inverse(pair, outcome.kind, tol);
  ComparisonVerdict v;
  v.tolerance = tolerance;
  v.kind = outcome.kind;
  v.oracle_index = oracle.index;
  v.existence_agrees = outcome.exists == oracle.exists;
  if (!outcome.exists) {
    v.relative_error = 0.0;
    v.axioms_pass = false;
    v.pass = !oracle.exists;
    return v;
  }
  const Matrix x = outcome.blocks.assemble();
  if (x.rows() != oracle.inverse.rows() || x.cols() != oracle.inverse.cols()) {
    throw ShapeError("compare: formula output does not match the assembled matrix");
  }
  v.relative_error = frobenius_norm(x - oracle.inverse) /
                     std::max(1.0, frobenius_norm(oracle.inverse));
  const Matrix m = assemble(pair);
  v.axioms_pass = verify_drazin_axioms(m, x, oracle.index, tolerance).overall;
  v.pass = v.existence_agrees && v.relative_error <= tolerance;
  return v;
}

}  // namespace ginv
