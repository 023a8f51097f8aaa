#include "ginv/block_formulas.hpp"

#include <algorithm>
#include <sstream>

namespace ginv {

namespace {

Matrix blk(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
  return assemble_blocks(a, b, c, d);
}

Matrix pw(const Matrix& a, unsigned k) { return matrix_power(a, k); }

/// A^D, A^pi and ind(A) in one go.
struct Spectral {
  Matrix d;
  Matrix pi;
  unsigned index = 0;
};

// `scale` is the norm of the enclosing matrix when `a` is one of its pieces.
Spectral spectral(const Matrix& a, double tol, double scale = 0.0) {
  DrazinResult r = drazin(a, tol, scale);
  return {std::move(r.drazin), std::move(r.idempotent), r.index};
}

/// Records a route comparison and returns whether it agrees.
bool check_route(Diagnostics& diag, const std::string& name, const Matrix& value,
                 const Matrix& reference) {
  const double diff = relative_difference(value, reference);
  const bool agree = diff <= kRouteTol;
  diag.routes.push_back({name, diff, agree});
  return agree;
}

std::string format_residual(double r) {
  std::ostringstream os;
  os.precision(3);
  os << r;
  return os.str();
}

void require_hypotheses(const std::string& formula, const ConditionReport& report) {
  if (!report.hypotheses_hold()) throw HypothesisError(formula, report);
}

ConditionReport checked(FormulaId id, const Matrix& e, const Matrix& f, double tol,
                        std::optional<Complex> lambda = std::nullopt) {
  ConditionReport report = check_conditions(e, f, id, tol, lambda);
  require_hypotheses(std::string(to_string(id)), report);
  return report;
}

/// Group inverse of the lower-triangular Pierce matrix x = a + c + d relative
/// to the idempotent `e_idem` (a = e x e, c = (1-e) x e, d = (1-e) x (1-e)):
///   x^D = a^D + z + d^D,
///   z = sum (d^D)^{i+2} c a^i a^pi + sum d^i d^pi c (a^D)^{i+2} - d^D c a^D
/// with corner-relative idempotents a^pi = e - a a^D and d^pi = (1-e) - d d^D.
Matrix pierce_lower_drazin(const Matrix& a, const Matrix& c, const Matrix& d, const Matrix& e_idem,
                           double tol, double scale) {
  const std::size_t n = a.rows();
  const Matrix one = Matrix::identity(n);
  const Spectral sa = spectral(a, tol, scale);
  const Spectral sd = spectral(d, tol, scale);
  const Matrix a_pi = e_idem - a * sa.d;
  const Matrix d_pi = (one - e_idem) - d * sd.d;
  Matrix z = -(sd.d * c * sa.d);
  Matrix a_term = a_pi;  // a^i a^pi
  Matrix dd_pow = sd.d * sd.d;
  for (unsigned i = 0; i < std::max(sa.index, 1U); ++i) {
    z += dd_pow * c * a_term;
    a_term = a * a_term;
    dd_pow = dd_pow * sd.d;
  }
  Matrix d_term = d_pi;  // d^i d^pi
  Matrix ad_pow = sa.d * sa.d;
  for (unsigned i = 0; i < std::max(sd.index, 1U); ++i) {
    z += d_term * c * ad_pow;
    d_term = d * d_term;
    ad_pow = ad_pow * sa.d;
  }
  return sa.d + z + sd.d;
}

// Pierce splitting --------------------------------------------------------

struct PierceOptions {
  bool bounded = false;  // apply the explicit caps k and m
};

PierceResult pierce_route(const Matrix& e, const Matrix& f, double tol, PierceOptions opt) {
  const std::size_t n = e.rows();
  const Matrix zn = Matrix::zeros(n);
  const Matrix i2 = Matrix::identity(2 * n);

  const Spectral sf = spectral(f, tol);
  const Matrix& fd = sf.d;
  const Matrix& fpi = sf.pi;
  const unsigned ind_f = sf.index;
  const Matrix ffd = f * fd;

  PierceResult out;
  PierceSplitting& s = out.parts;
  Diagnostics& diag = out.result.diagnostics;

  s.pierce_p = blk(fpi, zn, zn, zn);
  s.alpha = blk(e * fpi, zn, zn, zn);
  s.beta = blk(fpi * e * f * fd, fpi, zn, zn);
  s.gamma = blk(zn, zn, f * fpi, zn);
  s.delta = blk(ffd * e, ffd, f * ffd, zn);
  s.delta_d = blk(zn, fd, ffd, -(ffd * e * fd));

  const Matrix& al = s.alpha;
  const Matrix& be = s.beta;
  const Matrix& ga = s.gamma;
  const Matrix& p = s.pierce_p;

  const double scale = frobenius_norm(assemble_blocks(e, Matrix::identity(n), f, zn));
  const Spectral s_alpha = spectral(al, tol, scale);
  const Matrix& ald = s_alpha.d;
  const Matrix bg = be * ga;  // diag(F F^pi, 0): nilpotent of index ind(F)

  const unsigned ind_efpi = index_of(e * fpi, tol, scale);
  // Inner series in (beta gamma)^i: i < ind(F) suffices, the bounded form
  // runs i = 0..m inclusive.
  const unsigned inner_terms = opt.bounded ? ind_f + 1 : std::max(ind_f, 1U);

  const Matrix lead = i2 + bg * ald * ald;
  Matrix lam = Matrix::zeros(2 * n), sig = lam, gam = lam, del = lam;
  {
    Matrix ad_pow = ald;           // (alpha^D)^{2i+1}
    Matrix bg_pow = i2;            // (beta gamma)^i
    for (unsigned i = 0; i < inner_terms; ++i) {
      const Matrix t1 = ad_pow * bg_pow;
      const Matrix t2 = ald * t1;
      const Matrix t3 = ald * t2;
      lam += lead * t1;
      sig += lead * t2;
      gam += bg * t2;
      del += bg * t3;
      ad_pow = ald * ald * ad_pow;
      bg_pow = bg_pow * bg;
    }
  }
  s.lambda = lam;
  s.sigma = sig;
  s.gamma_blk = gam;
  s.delta_blk = del;

  const Matrix al_lam_gam = al * lam + gam;
  const Matrix al_sig_del = al * sig + del;
  s.eps = al_lam_gam * lam + al_sig_del * gam;
  s.zeta = al_lam_gam * sig * be + al_sig_del * del * be;
  s.eta = ga * lam * lam + ga * sig * gam;
  s.theta = ga * lam * sig * be + ga * sig * del * be;

  const Matrix q = al + be + ga;
  const Matrix qd = s.eps + s.zeta + s.eta + s.theta;
  const Matrix q_nil = q * (i2 - q * qd);  // Q Q^pi; Q^i Q^pi = (Q Q^pi)^i for i >= 1
  const Matrix q_pi = i2 - q * qd;
  const Matrix& dd = s.delta_d;
  const Matrix d_pi = i2 - s.delta * dd;

  unsigned q_terms;     // Q-series runs i = 1..q_terms
  unsigned delta_terms;  // P-series runs i = 0..delta_terms-1
  if (opt.bounded) {
    q_terms = ind_efpi + 2 * ind_f;
    delta_terms = 1;
    out.result.kind = InverseKind::Drazin;
    diag.truncation["k"] = q_terms;
    diag.truncation["m"] = ind_f;
  } else {
    const unsigned ind_q = index_of(q, tol, scale);
    q_terms = ind_q == 0 ? 0 : ind_q - 1;
    delta_terms = std::max(index_of(s.delta, tol, scale), 1U);
    out.result.kind = InverseKind::GDrazin;
    diag.truncation["q_series"] = q_terms;
    diag.truncation["inner_series"] = inner_terms;
    diag.truncation["delta_series"] = delta_terms;
  }

  // Corners of Q^n.
  s.eps_n = {al};
  s.zeta_n = {be};
  s.eta_n = {ga};
  s.theta_n = {Matrix::zeros(2 * n)};
  for (unsigned i = 1; i < std::max(q_terms, 1U); ++i) {
    const Matrix& en = s.eps_n.back();
    const Matrix& zn_ = s.zeta_n.back();
    const Matrix& hn = s.eta_n.back();
    const Matrix& tn = s.theta_n.back();
    Matrix e_next = al * en + be * hn;
    Matrix z_next = al * zn_ + be * tn;
    Matrix h_next = ga * en;
    Matrix t_next = ga * zn_;
    s.eps_n.push_back(std::move(e_next));
    s.zeta_n.push_back(std::move(z_next));
    s.eta_n.push_back(std::move(h_next));
    s.theta_n.push_back(std::move(t_next));
  }

  // Additive route: M^D = sum (Q^D)^{i+1} delta^i delta^pi + Q^pi delta^D
  //                      + sum_{i>=1} Q^i Q^pi (delta^D)^{i+1}.
  Matrix additive = q_pi * dd;
  {
    Matrix qd_pow = qd;
    Matrix delta_pow = i2;
    for (unsigned i = 0; i < delta_terms; ++i) {
      additive += qd_pow * delta_pow * d_pi;
      qd_pow = qd_pow * qd;
      delta_pow = delta_pow * s.delta;
    }
    Matrix nil_pow = q_nil;
    Matrix dd_pow = dd * dd;
    for (unsigned i = 1; i <= q_terms; ++i) {
      additive += nil_pow * dd_pow;
      nil_pow = nil_pow * q_nil;
      dd_pow = dd_pow * dd;
    }
  }

  // Closed form as displayed, with the sequences seeded at (eps, zeta, eta,
  // theta) and the scalar 1 read either as the identity or as 1 - p.
  const Matrix x = al * s.zeta + be * s.theta;
  auto displayed = [&](const Matrix& one) {
    Matrix out_m = s.eps + s.eta + (s.zeta - x) * dd + (s.theta + one - ga * s.zeta) * dd;
    Matrix en = s.eps, zn_ = s.zeta, hn = s.eta, tn = s.theta;
    Matrix dd_pow = dd * dd;
    for (unsigned i = 1; i <= q_terms; ++i) {
      out_m += ((zn_ + tn) * (one - ga * s.zeta) - (en + hn) * x) * dd_pow;
      Matrix e_next = al * en + be * hn;
      Matrix z_next = al * zn_ + be * tn;
      Matrix h_next = ga * en;
      Matrix t_next = ga * tn;
      en = std::move(e_next);
      zn_ = std::move(z_next);
      hn = std::move(h_next);
      tn = std::move(t_next);
      dd_pow = dd_pow * dd;
    }
    return out_m;
  };
  const Matrix display_unit = displayed(i2);
  const Matrix display_complement = displayed(i2 - p);

  // Same layout with delta^pi in place of delta^D on the zeta, theta terms
  // and the sequences taken as the corners of Q^n.
  Matrix corrected = s.eps + s.eta + s.zeta * d_pi - x * dd + s.theta * d_pi +
                     (i2 - p - ga * s.zeta) * dd;
  {
    Matrix dd_pow = dd * dd;
    for (unsigned i = 1; i <= q_terms; ++i) {
      const std::size_t j = i - 1;
      corrected += ((s.zeta_n[j] + s.theta_n[j]) * (i2 - p - ga * s.zeta) -
                    (s.eps_n[j] + s.eta_n[j]) * x) *
                   dd_pow;
      dd_pow = dd_pow * dd;
    }
  }

  check_route(diag, "corner_drazin", qd, spectral(q, tol, scale).d);
  check_route(diag, "delta_drazin", dd, spectral(s.delta, tol, scale).d);
  const bool unit_ok = check_route(diag, "display_unit", display_unit, additive);
  const bool complement_ok = check_route(diag, "display_complement", display_complement, additive);
  const bool corrected_ok = check_route(diag, "display_corrected", corrected, additive);
  check_route(diag, "unit_vs_complement", display_unit, display_complement);

  if (unit_ok) {
    out.result.blocks = Blocks::split(display_unit);
  } else {
    out.result.blocks = Blocks::split(additive);
    diag.returned = "additive";
    diag.notes.push_back(std::string("displayed closed form disagrees with the additive route") +
                         (complement_ok ? "; the 1 - p reading agrees" : "") +
                         (corrected_ok ? "; the delta^pi / Q^n-corner form agrees" : ""));
  }
  return out;
}

// Group formulas ----------------------------------------------------------

struct GroupParts {
  Matrix ed, epi, fs, fpi;
};

GroupParts group_parts(const Matrix& e, const Matrix& f, double tol) {
  const Spectral se = spectral(e, tol);
  const Spectral sf = spectral(f, tol);
  return {se.d, se.pi, sf.d, sf.pi};
}

// [[E, I], [F, 0]] under FEF^pi = 0.
Blocks ei_f0_blocks(const Matrix& e, const Matrix& f, const GroupParts& g) {
  const Matrix edfpi = g.ed * g.fpi;
  return {edfpi, g.fs + edfpi * edfpi - edfpi * e * g.fs, f * g.fs, -(f * g.fs * e * g.fs)};
}

// [[E, F], [I, 0]] under F^pi E F = 0.
Blocks ef_i0_dual_blocks(const Matrix& e, const Matrix& f, const GroupParts& g) {
  const Matrix fpied = g.fpi * g.ed;
  return {fpied, f * g.fs, g.fs + fpied * fpied - g.fs * e * fpied, -(g.fs * e * f * g.fs)};
}

// [[E, F], [F, 0]] under FEF^pi = 0; `ed` is E^D (or E^# when it exists).
Blocks ef_f0_blocks(const Matrix& e, const Matrix& f, const GroupParts& g) {
  const std::size_t n = e.rows();
  const Matrix in = Matrix::identity(n);
  const Matrix& ed = g.ed;
  const Matrix& fs = g.fs;
  const Matrix fs2 = fs * fs;
  const Matrix epifpi = g.epi * g.fpi;
  const Matrix w = epifpi * e * fs2;  // E^pi F^pi E (F^#)^2
  const Matrix lead = in - epifpi;
  const Matrix head = ed * g.fpi + w;
  const Matrix tail = fs - w * e * fs - ed * g.fpi * e * fs;
  Blocks b;
  b.tl = lead * head + w;
  b.tr = lead * tail - w * e * fs;
  const Matrix efs2 = e * fs2;
  b.bl = f * head * head + fs - f * epifpi * efs2 * efs2 - f * ed * g.fpi * efs2;
  b.br = (f * ed * g.fpi + f * w) * tail -
         (fs - f * epifpi * efs2 * efs2 - f * ed * g.fpi * efs2) * e * fs;
  return b;
}

// [[E, F], [F, 0]] under F^pi E F = 0, blocks in the displayed positions.
Blocks ef_f0_dual_blocks(const Matrix& e, const Matrix& f, const GroupParts& g) {
  const std::size_t n = e.rows();
  const Matrix in = Matrix::identity(n);
  const Matrix& ed = g.ed;
  const Matrix& fs = g.fs;
  const Matrix fs2 = fs * fs;
  const Matrix fpiepi = g.fpi * g.epi;
  const Matrix w = fs2 * e * fpiepi;  // (F^#)^2 E F^pi E^pi
  const Matrix trail = in - fpiepi;
  const Matrix head = g.fpi * ed + w;
  const Matrix tail = fs - fs * e * w - fs * e * g.fpi * ed;
  const Matrix fs2e = fs2 * e;
  Blocks b;
  b.tl = head * trail + w;
  b.tr = tail * trail - fs * e * w;
  b.bl = head * head * f + fs - fs2e * fs2e * fpiepi * f - fs2e * g.fpi * ed * f;
  b.br = tail * (g.fpi * ed * f + w * f) -
         fs * e * (fs - fs2e * fs2e * fpiepi * f - fs2e * g.fpi * ed * f);
  return b;
}

/// M^D for M = [[E, F], [F, 0]] through N = [[E, I], [F^2, 0]] = B A with
/// A = [[E, I], [F, 0]], B = [[I, 0], [0, F]]: N is lower triangular in the
/// Pierce splitting by e = diag(F F^#, I), and M^D = A (N^D)^2 B.
Matrix ef_f0_cline_route(const Matrix& e, const Matrix& f, const GroupParts& g, double tol,
                         Diagnostics* diag) {
  const std::size_t n = e.rows();
  const Matrix in = Matrix::identity(n);
  const Matrix zn = Matrix::zeros(n);
  const Matrix i2 = Matrix::identity(2 * n);
  const Matrix big_n = blk(e, in, f * f, zn);
  const Matrix idem = blk(f * g.fs, zn, zn, in);
  const Matrix co = i2 - idem;
  const Matrix a = idem * big_n * idem;
  const Matrix c = co * big_n * idem;
  const Matrix d = co * big_n * co;
  if (diag != nullptr) {
    const double upper = frobenius_norm(idem * big_n * co);
    if (upper > kRouteTol * std::max(1.0, frobenius_norm(big_n))) {
      diag->notes.push_back("upper Pierce corner of N is not zero (" + format_residual(upper) + ")");
    }
  }
  const Matrix nd = pierce_lower_drazin(a, c, d, idem, tol, frobenius_norm(big_n));
  const Matrix left = blk(e, in, f, zn);
  const Matrix right = blk(in, zn, zn, f);
  return left * nd * nd * right;
}

GroupFormulaResult absent_result(const ConditionReport& report) {
  GroupFormulaResult r;
  r.absent.failed = report.failed(true);
  return r;
}

/// Returns the display when it agrees with the route, otherwise the route.
void settle(GroupFormulaResult& r, const Blocks& display, const Matrix& route_value,
            const std::string& route_name) {
  const Matrix shown = display.assemble();
  if (check_route(r.diagnostics, route_name, shown, route_value)) {
    r.blocks = display;
  } else {
    r.blocks = Blocks::split(route_value);
    r.diagnostics.returned = route_name;
    r.diagnostics.notes.push_back("displayed closed form disagrees with the " + route_name +
                                  " route; returning the route value");
  }
}

GroupFormulaResult ef_f0_both_group_impl(const Matrix& e, const Matrix& f, double tol) {
  const GroupParts g = group_parts(e, f, tol);
  GroupFormulaResult r;
  const double threshold = condition_threshold(e, f, tol);
  const double fefpi_residual = frobenius_norm(f * e * g.fpi);
  const Blocks display = ef_f0_blocks(e, f, g);
  if (fefpi_residual <= threshold) {
    r.diagnostics.notes.push_back("hypothesis family: FEF^pi = 0");
    settle(r, display, ef_f0_cline_route(e, f, g, tol, &r.diagnostics), "cline_pierce");
  } else {
    r.diagnostics.notes.push_back("hypothesis family: F^pi E F = 0");
    const Matrix et = transpose(e);
    const Matrix ft = transpose(f);
    const Matrix route = transpose(ef_f0_cline_route(et, ft, group_parts(et, ft, tol), tol, nullptr));
    settle(r, display, route, "transpose");
  }
  return r;
}

Complex effective_lambda(const Matrix& e, const Matrix& f, std::optional<Complex> lambda,
                         Diagnostics& diag) {
  if (lambda) return *lambda;
  const Complex l = fit_lambda(e, f);
  std::ostringstream os;
  os << "lambda fitted by least squares: " << l.real() << (l.imag() < 0 ? "" : "+") << l.imag()
     << "i";
  diag.notes.push_back(os.str());
  return l;
}

/// The commutation hypotheses imply F^pi E F = 0 once F is group invertible.
void verify_reduction(const std::string& formula, const Matrix& e, const Matrix& f, double tol,
                      Diagnostics& diag) {
  const Matrix fpi = spectral_idempotent(f, tol);
  const double residual = frobenius_norm(fpi * e * f);
  const double threshold = condition_threshold(e, f, tol);
  ConditionReport reduction;
  reduction.add({"FpiEF", residual, threshold, residual <= threshold, false});
  if (!reduction.overall) throw HypothesisError(formula, reduction);
  diag.notes.push_back("reduced to F^pi E F = 0 (residual " + format_residual(residual) + ")");
}

}  // namespace

// Public API ---------------------------------------------------------------

std::string_view to_string(InverseKind kind) {
  switch (kind) {
    case InverseKind::GDrazin:
      return "gDrazin";
    case InverseKind::Drazin:
      return "Drazin";
    case InverseKind::Group:
      return "Group";
  }
  return "?";
}

Blocks Blocks::split(const Matrix& m) {
  if (!m.square() || m.rows() % 2 != 0) throw ShapeError("Blocks::split: need a 2n x 2n matrix");
  const std::size_t n = m.rows() / 2;
  return {m.block(0, 0, n, n), m.block(0, n, n, n), m.block(n, 0, n, n), m.block(n, n, n, n)};
}

bool Diagnostics::discrepancy() const {
  return std::any_of(routes.begin(), routes.end(), [](const RouteCheck& r) { return !r.agree; });
}

HypothesisError::HypothesisError(const std::string& formula, ConditionReport report)
    : std::invalid_argument([&] {
        std::string msg = formula + ": hypothesis does not hold:";
        for (const auto& entry : report.entries) {
          if (!entry.pass && !entry.existence_clause) {
            msg += " " + entry.name + " = " + format_residual(entry.residual) + " > " +
                   format_residual(entry.threshold);
          }
        }
        return msg;
      }()),
      report_(std::move(report)) {}

Matrix TriangularBlocks::assemble() const {
  return assemble_blocks(a_d, Matrix(a_d.rows(), b_d.cols()), z, b_d);
}

TriangularBlocks triangular_drazin(const Matrix& a, const Matrix& b, const Matrix& c, double tol) {
  if (!a.square() || !b.square() || c.rows() != b.rows() || c.cols() != a.cols()) {
    throw ShapeError("triangular_drazin: need square A, B and C with rows(B) x cols(A)");
  }
  const Spectral sa = spectral(a, tol);
  const Spectral sb = spectral(b, tol);
  TriangularBlocks out;
  out.a_d = sa.d;
  out.b_d = sb.d;
  Matrix z = -(sb.d * c * sa.d);
  {
    Matrix bd_pow = sb.d * sb.d;  // (B^D)^{i+2}
    Matrix a_term = sa.pi;        // A^i A^pi
    for (unsigned i = 0; i < sa.index; ++i) {
      z += bd_pow * c * a_term;
      bd_pow = bd_pow * sb.d;
      a_term = a * a_term;
    }
  }
  {
    Matrix ad_pow = sa.d * sa.d;
    Matrix b_term = sb.pi;
    for (unsigned i = 0; i < sb.index; ++i) {
      z += b_term * c * ad_pow;
      ad_pow = ad_pow * sa.d;
      b_term = b * b_term;
    }
  }
  out.z = std::move(z);
  out.truncation["A"] = sa.index;
  out.truncation["B"] = sb.index;
  return out;
}

Matrix additive_drazin_pqp(const Matrix& p, const Matrix& q, double tol) {
  if (!p.square() || p.rows() != q.rows() || !q.square()) {
    throw ShapeError("additive_drazin_pqp: P and Q must be square of equal order");
  }
  const double threshold = condition_threshold(p, q, tol);
  ConditionReport report;
  const double pqp = frobenius_norm(p * q * p);
  const double q2p = frobenius_norm(q * q * p);
  report.add({"PQP", pqp, threshold, pqp <= threshold, false});
  report.add({"Q2P", q2p, threshold, q2p <= threshold, false});
  require_hypotheses("additive_drazin_pqp", report);

  const Spectral sp = spectral(p, tol);
  const Spectral sq = spectral(q, tol);
  const Matrix s = p + q;
  Matrix out = -(s * sp.d * sq.d);
  {
    Matrix pd_pow = sp.d * sp.d;
    Matrix q_term = sq.pi;
    for (unsigned i = 0; i < sq.index; ++i) {
      out += s * pd_pow * q_term;
      pd_pow = pd_pow * sp.d;
      q_term = q * q_term;
    }
  }
  {
    Matrix qd_pow = sq.d * sq.d;
    Matrix p_term = sp.pi;  // P^i P^pi
    for (unsigned i = 0; i < sp.index; ++i) {
      const Matrix next = p * p_term;  // P^{i+1} P^pi
      out += next * qd_pow + q * p_term * qd_pow;
      qd_pow = qd_pow * sq.d;
      p_term = next;
    }
  }
  return out;
}

Matrix additive_drazin_pq(const Matrix& p, const Matrix& q, double tol) {
  if (!p.square() || p.rows() != q.rows() || !q.square()) {
    throw ShapeError("additive_drazin_pq: P and Q must be square of equal order");
  }
  const double threshold = condition_threshold(p, q, tol);
  ConditionReport report;
  const double pq = frobenius_norm(p * q);
  report.add({"PQ", pq, threshold, pq <= threshold, false});
  require_hypotheses("additive_drazin_pq", report);

  const Spectral sp = spectral(p, tol);
  const Spectral sq = spectral(q, tol);
  Matrix out = Matrix::zeros(p.rows());
  {
    Matrix pd_pow = sp.d;
    Matrix q_term = sq.pi;
    for (unsigned i = 0; i < sq.index; ++i) {
      out += q_term * pd_pow;
      pd_pow = pd_pow * sp.d;
      q_term = q * q_term;
    }
  }
  {
    Matrix qd_pow = sq.d;
    Matrix p_term = sp.pi;
    for (unsigned i = 0; i < sp.index; ++i) {
      out += qd_pow * p_term;
      qd_pow = qd_pow * sq.d;
      p_term = p * p_term;
    }
  }
  return out;
}

Matrix cline_drazin(const Matrix& a, const Matrix& b, double tol) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw ShapeError("cline_drazin: A must be n x m and B m x n");
  }
  const Matrix x = drazin(b * a, tol).drazin;
  return a * x * x * b;
}

BlockResult drazin_ei_f0_strict(const Matrix& e, const Matrix& f, double tol) {
  checked(FormulaId::thm23, e, f, tol);
  const std::size_t n = e.rows();
  const Matrix in = Matrix::identity(n);
  const Spectral se = spectral(e, tol);
  const Spectral sf = spectral(f, tol);
  const Matrix& ed = se.d;
  const Matrix& epi = se.pi;
  const Matrix& fd = sf.d;
  const Matrix& fpi = sf.pi;
  const unsigned ind_e = se.index;
  const unsigned ind_f = sf.index;

  const Matrix lead = in + f * ed * ed;
  Matrix lam = e * epi * fd - f * ed * fd;
  Matrix sig = -(e * ed * fd) - f * ed * ed * fd;
  Matrix gam = f * epi * fd;
  Matrix del = -(f * ed * fd);

  // Terms carrying F^i F^pi vanish once i >= ind(F).
  {
    Matrix ed_pow = ed;  // (E^D)^{2i+1}
    Matrix f_term = fpi;  // F^i F^pi
    for (unsigned i = 0; i < ind_f; ++i) {
      const Matrix t1 = ed_pow * f_term;
      const Matrix t2 = ed * t1;
      const Matrix t3 = ed * t2;
      lam += lead * t1;
      sig += lead * t2;
      gam += f * t2;
      del += f * t3;
      ed_pow = ed * ed * ed_pow;
      f_term = f * f_term;
    }
  }
  // Terms carrying E^j E^pi vanish once j >= ind(E).
  {
    const Matrix fd2 = fd * fd;
    Matrix fd_pow = fd2;  // (F^D)^{i+2}
    for (unsigned i = 0; 2 * i < ind_e; ++i) {
      auto e_term = [&](unsigned j) -> Matrix {
        return j < ind_e ? pw(e, j) * epi * fd_pow : Matrix::zeros(n);
      };
      lam += e_term(2 * i + 3) + f * e_term(2 * i + 1);
      sig += e_term(2 * i + 2) + f * e_term(2 * i);
      gam += f * e_term(2 * i + 2);
      del += f * e_term(2 * i + 1);
      fd_pow = fd_pow * fd;
    }
  }

  BlockResult out;
  out.kind = InverseKind::GDrazin;
  out.blocks = {lam, sig, gam, del};
  out.diagnostics.truncation["ind_E"] = ind_e;
  out.diagnostics.truncation["ind_F"] = ind_f;

  // Independent route: M^D = M (M^2)^D with M^2 = P + Q, PQP = 0, Q^2 P = 0.
  const Matrix zn = Matrix::zeros(n);
  const Matrix m = blk(e, in, f, zn);
  const Matrix p = blk(e * e, e, zn, zn);
  const Matrix q = blk(f, zn, f * e, f);
  try {
    const Matrix route = m * additive_drazin_pqp(p, q, tol);
    if (!check_route(out.diagnostics, "square_split", out.blocks.assemble(), route)) {
      out.blocks = Blocks::split(route);
      out.diagnostics.returned = "square_split";
      out.diagnostics.notes.push_back(
          "displayed closed form disagrees with the square-split route; returning the route value");
    }
  } catch (const HypothesisError& err) {
    out.diagnostics.notes.push_back(std::string("square-split route skipped: ") + err.what());
  }
  return out;
}

PierceResult drazin_ei_f0(const Matrix& e, const Matrix& f, double tol) {
  checked(FormulaId::thm25, e, f, tol);
  return pierce_route(e, f, tol, {false});
}

PierceResult drazin_ei_f0_bounded(const Matrix& e, const Matrix& f, double tol) {
  checked(FormulaId::thm27, e, f, tol);
  return pierce_route(e, f, tol, {true});
}

BlockResult drazin_ef_i0(const Matrix& e, const Matrix& f, double tol) {
  checked(FormulaId::cor26, e, f, tol);
  PierceResult inner = pierce_route(e, f, tol, {false});
  const std::size_t n = e.rows();
  const Matrix in = Matrix::identity(n);
  const Matrix zn = Matrix::zeros(n);
  const Matrix x = inner.result.blocks.assemble();
  BlockResult out;
  out.kind = InverseKind::GDrazin;
  out.blocks = Blocks::split(blk(e, in, in, zn) * x * x * blk(in, zn, zn, f));
  out.diagnostics = std::move(inner.result.diagnostics);
  return out;
}

GroupFormulaResult group_ei_f0(const Matrix& e, const Matrix& f, double tol) {
  const ConditionReport report = checked(FormulaId::thm31, e, f, tol);
  if (!report.existence_holds()) return absent_result(report);
  GroupFormulaResult r;
  r.blocks = ei_f0_blocks(e, f, group_parts(e, f, tol));
  return r;
}

GroupFormulaResult group_ef_i0(const Matrix& e, const Matrix& f, double tol) {
  const ConditionReport report = checked(FormulaId::cor32, e, f, tol);
  if (!report.existence_holds()) return absent_result(report);
  const std::size_t n = e.rows();
  const Matrix in = Matrix::identity(n);
  const Matrix zn = Matrix::zeros(n);
  const GroupParts g = group_parts(e, f, tol);
  const Matrix fpiedfpi = g.fpi * g.ed * g.fpi;
  const Matrix edfpi = g.ed * g.fpi;
  const Blocks display{fpiedfpi, in - fpiedfpi * e,
                       g.fs + edfpi * edfpi - edfpi * e * g.fs,
                       edfpi - g.fs * e - edfpi * edfpi * e + edfpi * e * g.fs * e};
  // [[E, F], [I, 0]] = P^-1 [[E, I], [F, 0]] P with P = [[0, I], [I, -E]].
  const Matrix p_inv = blk(e, in, in, zn);
  const Matrix p = blk(zn, in, in, -e);
  const Matrix route = p_inv * ei_f0_blocks(e, f, g).assemble() * p;
  GroupFormulaResult r;
  settle(r, display, route, "similarity");
  return r;
}

GroupFormulaResult group_ef_i0_dual(const Matrix& e, const Matrix& f, double tol) {
  const ConditionReport report = checked(FormulaId::thm33, e, f, tol);
  if (!report.existence_holds()) return absent_result(report);
  const GroupParts g = group_parts(e, f, tol);
  const Blocks display = ef_i0_dual_blocks(e, f, g);
  const Matrix et = transpose(e);
  const Matrix ft = transpose(f);
  const Matrix route = transpose(ei_f0_blocks(et, ft, group_parts(et, ft, tol)).assemble());
  GroupFormulaResult r;
  settle(r, display, route, "transpose");
  return r;
}

GroupFormulaResult group_ei_f0_dual(const Matrix& e, const Matrix& f, double tol) {
  const ConditionReport report = checked(FormulaId::cor34, e, f, tol);
  if (!report.existence_holds()) return absent_result(report);
  const std::size_t n = e.rows();
  const Matrix in = Matrix::identity(n);
  const Matrix zn = Matrix::zeros(n);
  const GroupParts g = group_parts(e, f, tol);
  const Matrix fpied = g.fpi * g.ed;
  const Matrix fpiedfpi = fpied * g.fpi;
  const Blocks display{fpiedfpi, g.fs + fpied * fpied - g.fs * e * fpied, in - e * fpiedfpi,
                       fpied - e * g.fs - e * fpied * fpied + e * g.fs * e * fpied};
  // [[E, I], [F, 0]] = P [[E, F], [I, 0]] P^-1 with P = [[0, I], [I, -E]].
  const Matrix p = blk(zn, in, in, -e);
  const Matrix p_inv = blk(e, in, in, zn);
  const Matrix route = p * ef_i0_dual_blocks(e, f, g).assemble() * p_inv;
  GroupFormulaResult r;
  settle(r, display, route, "similarity");
  return r;
}

GroupFormulaResult group_ef_i0_commuting(const Matrix& e, const Matrix& f,
                                         std::optional<Complex> lambda, double tol) {
  Diagnostics diag;
  const Complex l = effective_lambda(e, f, lambda, diag);
  const ConditionReport report = checked(FormulaId::cor35, e, f, tol, l);
  if (!report.existence_holds()) {
    GroupFormulaResult r = absent_result(report);
    r.diagnostics = std::move(diag);
    return r;
  }
  verify_reduction("cor35", e, f, tol, diag);
  const GroupParts g = group_parts(e, f, tol);
  const Matrix et = transpose(e);
  const Matrix ft = transpose(f);
  const Matrix route = transpose(ei_f0_blocks(et, ft, group_parts(et, ft, tol)).assemble());
  GroupFormulaResult r;
  r.diagnostics = std::move(diag);
  settle(r, ef_i0_dual_blocks(e, f, g), route, "transpose");
  return r;
}

GroupFormulaResult group_ef_f0(const Matrix& e, const Matrix& f, double tol) {
  const ConditionReport report = checked(FormulaId::thm41, e, f, tol);
  if (!report.existence_holds()) return absent_result(report);
  const GroupParts g = group_parts(e, f, tol);
  GroupFormulaResult r;
  const Matrix route = ef_f0_cline_route(e, f, g, tol, &r.diagnostics);
  settle(r, ef_f0_blocks(e, f, g), route, "cline_pierce");
  return r;
}

GroupFormulaResult group_ef_f0_dual(const Matrix& e, const Matrix& f, double tol) {
  const ConditionReport report = checked(FormulaId::cor42, e, f, tol);
  if (!report.existence_holds()) return absent_result(report);
  const GroupParts g = group_parts(e, f, tol);
  const Matrix et = transpose(e);
  const Matrix ft = transpose(f);
  const Matrix route = transpose(ef_f0_cline_route(et, ft, group_parts(et, ft, tol), tol, nullptr));
  GroupFormulaResult r;
  settle(r, ef_f0_dual_blocks(e, f, g), route, "transpose");
  return r;
}

GroupFormulaResult group_ef_f0_both_group(const Matrix& e, const Matrix& f, double tol) {
  checked(FormulaId::cor43, e, f, tol);
  return ef_f0_both_group_impl(e, f, tol);
}

GroupFormulaResult group_ef_f0_commuting(const Matrix& e, const Matrix& f,
                                         std::optional<Complex> lambda, double tol) {
  Diagnostics diag;
  const Complex l = effective_lambda(e, f, lambda, diag);
  checked(FormulaId::cor44, e, f, tol, l);
  verify_reduction("cor44", e, f, tol, diag);
  GroupFormulaResult r = ef_f0_both_group_impl(e, f, tol);
  diag.notes.insert(diag.notes.end(), r.diagnostics.notes.begin(), r.diagnostics.notes.end());
  diag.routes = std::move(r.diagnostics.routes);
  diag.returned = r.diagnostics.returned;
  r.diagnostics = std::move(diag);
  return r;
}

FormulaOutcome evaluate(FormulaId id, const BlockPair& pair, double tol) {
  const Matrix& e = pair.e;
  const Matrix& f = pair.f;
  if (!e.square() || !f.square() || e.rows() != f.rows()) {
    throw ShapeError("evaluate: E and F must be square of equal order");
  }
  FormulaOutcome out;
  out.formula = id;
  auto from_block = [&](BlockResult r) {
    out.kind = r.kind;
    out.blocks = std::move(r.blocks);
    out.diagnostics = std::move(r.diagnostics);
  };
  auto from_group = [&](GroupFormulaResult r) {
    out.kind = InverseKind::Group;
    out.exists = r.exists();
    if (r.blocks) out.blocks = std::move(*r.blocks);
    out.absent = std::move(r.absent.failed);
    out.diagnostics = std::move(r.diagnostics);
  };
  switch (id) {
    case FormulaId::thm23:
      from_block(drazin_ei_f0_strict(e, f, tol));
      break;
    case FormulaId::thm25:
      from_block(drazin_ei_f0(e, f, tol).result);
      break;
    case FormulaId::cor26:
      from_block(drazin_ef_i0(e, f, tol));
      break;
    case FormulaId::thm27:
      from_block(drazin_ei_f0_bounded(e, f, tol).result);
      break;
    case FormulaId::thm31:
      from_group(group_ei_f0(e, f, tol));
      break;
    case FormulaId::cor32:
      from_group(group_ef_i0(e, f, tol));
      break;
    case FormulaId::thm33:
      from_group(group_ef_i0_dual(e, f, tol));
      break;
    case FormulaId::cor34:
      from_group(group_ei_f0_dual(e, f, tol));
      break;
    case FormulaId::cor35:
      from_group(group_ef_i0_commuting(e, f, pair.lambda, tol));
      break;
    case FormulaId::thm41:
      from_group(group_ef_f0(e, f, tol));
      break;
    case FormulaId::cor42:
      from_group(group_ef_f0_dual(e, f, tol));
      break;
    case FormulaId::cor43:
      from_group(group_ef_f0_both_group(e, f, tol));
      break;
    case FormulaId::cor44:
      from_group(group_ef_f0_commuting(e, f, pair.lambda, tol));
      break;
  }
  return out;
}

}  // namespace ginv
