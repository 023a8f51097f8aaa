// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "../fixtures.hpp"

namespace {

using namespace ginv;
using Clock = std::chrono::steady_clock;

const Complex kI{0.0, 1.0};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

Matrix fixture_group_inverse() {
  return Matrix{{0.0, 1.0, -kI, -kI}, {0.0, -1.0, 0.0, 0.0}, {-kI, -kI, 1.0, 1.0}, {0.0, 0.0, 0.0, 0.0}};
}

Outcome golden_fixture() {
  const BlockPair p = example_45();
  GroupFormulaResult r = group_ef_f0(p.e, p.f);  // warm-up
  double best_ms = 1e9;
  for (int rep = 0; rep < 20; ++rep) {
    const auto start = Clock::now();
    r = group_ef_f0(p.e, p.f);
    best_ms = std::min(best_ms, seconds_since(start) * 1e3);
  }
  std::ostringstream os;
  if (!r.exists()) return {false, "no group inverse returned"};
  const double err = test::max_abs_diff(r.blocks->assemble(), fixture_group_inverse());
  os << "max abs error " << err << ", runtime " << best_ms << " ms";
  return {err <= 1e-12 && best_ms < 1.0, os.str()};
}

Outcome intermediate_fixture() {
  const BlockPair p = example_45();
  const GroupResult e = group_inverse(p.e);
  const GroupResult f = group_inverse(p.f);
  const GroupFormulaResult r = group_ef_f0(p.e, p.f);
  if (!r.exists()) return {false, "no group inverse returned"};
  const Matrix z = Matrix::zeros(2);
  const struct {
    const char* name;
    Matrix got, want;
  } rows[] = {
      {"E#", e.group, Matrix{{1.0, 2.0}, {0.0, -1.0}}},
      {"Epi", e.idempotent, z},
      {"F#", f.group, Matrix{{-kI, -kI}, {0.0, 0.0}}},
      {"Fpi", f.idempotent, Matrix{{0.0, -1.0}, {0.0, 1.0}}},
      {"Gamma", r.blocks->tl, Matrix{{0.0, 1.0}, {0.0, -1.0}}},
      {"Delta", r.blocks->tr, Matrix{{-kI, -kI}, {0.0, 0.0}}},
      {"Lambda", r.blocks->bl, Matrix{{-kI, -kI}, {0.0, 0.0}}},
      {"Xi", r.blocks->br, Matrix{{1.0, 1.0}, {0.0, 0.0}}},
  };
  Outcome out;
  double worst = 0.0;
  for (const auto& row : rows) {
    const double err = test::max_abs_diff(row.got, row.want);
    worst = std::max(worst, err);
    if (err > 1e-12) {
      out.pass = false;
      out.detail += std::string(row.name) + " off; ";
    }
  }
  std::ostringstream os;
  os << "8 quantities, max abs error " << worst;
  out.detail += os.str();
  return out;
}

Outcome master_oracle() {
  const auto start = Clock::now();
  Outcome out;
  double worst = 0.0;
  unsigned total = 0, failed = 0;
  for (FormulaId id : kAllFormulas) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      ++total;
      try {
        const BlockPair p = generate({id, 1 + seed % 4, seed, ""});
        const ComparisonVerdict v = compare(evaluate(id, p), p, 1e-8);
        worst = std::max(worst, v.relative_error);
        if (!v.pass) ++failed;
      } catch (const std::exception&) {
        ++failed;
      }
    }
  }
  const double elapsed = seconds_since(start);
  std::ostringstream os;
  os << total - failed << "/" << total << " instances, max relative error " << worst << ", " << elapsed
     << " s";
  out.pass = failed == 0 && elapsed < 60.0;
  out.detail = os.str();
  return out;
}

Outcome existence_equivalence() {
  Outcome out;
  std::ostringstream os;
  const std::pair<FormulaId, const char*> cases[] = {
      {FormulaId::thm31, "EpiFpi"}, {FormulaId::thm33, "FpiEpi"}, {FormulaId::thm41, "EEpiFpi"}};
  for (const auto& [id, clause] : cases) {
    unsigned violated = 0, satisfied = 0, mismatches = 0;
    for (std::uint64_t seed = 0; seed < 400 && (violated < 60 || satisfied < 60); ++seed) {
      const bool violate = seed % 2 == 0;
      if ((violate ? violated : satisfied) >= 60) continue;
      BlockPair p;
      try {
        p = generate({id, 2 + seed % 3, seed, violate ? clause : ""});
      } catch (const InfeasibleRecipeError&) {
        continue;
      }
      FormulaOutcome f;
      try {
        f = evaluate(id, p);
      } catch (const std::exception&) {
        ++mismatches;
        continue;
      }
      const unsigned index = index_of(assemble(p));
      if (f.exists != (index <= 1)) ++mismatches;
      ++(violate ? violated : satisfied);
    }
    os << to_string(id) << " " << violated << " violating + " << satisfied << " satisfying, "
       << mismatches << " mismatches; ";
    if (violated < 50 || mismatches != 0) out.pass = false;
  }
  out.detail = os.str();
  return out;
}

Outcome truncation_identity() {
  Outcome out;
  double worst = 0.0;
  unsigned cap_errors = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const BlockPair p = generate({FormulaId::thm27, 1 + seed % 4, seed, ""});
    const PierceResult bounded = drazin_ei_f0_bounded(p.e, p.f);
    const PierceResult plain = drazin_ei_f0(p.e, p.f);
    worst = std::max(worst, relative_difference(bounded.result.blocks.assemble(),
                                                plain.result.blocks.assemble()));
    // Rank decisions on EF^pi are judged against the scale of M, as inside the formula.
    const double scale = frobenius_norm(assemble(p));
    const unsigned ind_f = index_of(p.f);
    const unsigned k = index_of(p.e * spectral_idempotent(p.f), kDefaultTol, scale) + 2 * ind_f;
    const auto& caps = bounded.result.diagnostics.truncation;
    if (caps.at("k") != k || caps.at("m") != ind_f) ++cap_errors;
  }
  std::ostringstream os;
  os << "200 instances, max relative difference " << worst << ", cap mismatches " << cap_errors;
  out.pass = worst <= 1e-12 && cap_errors == 0;
  out.detail = os.str();
  return out;
}

Outcome drazin_core() {
  std::mt19937_64 rng(2024);
  const test::Mix kinds[] = {test::Mix::Invertible, test::Mix::Nilpotent, test::Mix::Idempotent,
                             test::Mix::Similarity};
  unsigned axiom_failures = 0, uniqueness_failures = 0;
  double worst = 0.0;
  for (unsigned t = 0; t < 500; ++t) {
    const std::size_t n = 1 + t % 8;
    const Matrix a = test::mixed_matrix(rng, n, kinds[t % 4]);
    const DrazinResult d = drazin(a);
    if (!verify_drazin_axioms(a, d.drazin, d.index, 1e-10).overall) ++axiom_failures;
    // Second candidate through a similarity: S^-1 (S A S^-1)^D S.
    const Matrix s = test::well_conditioned(rng, n);
    const Matrix s_inv = invert(s);
    const Matrix other = s_inv * drazin(s * a * s_inv).drazin * s;
    if (verify_drazin_axioms(a, other, d.index, 1e-10).overall) {
      const double diff = relative_difference(other, d.drazin);
      worst = std::max(worst, diff);
      if (diff > 1e-8) ++uniqueness_failures;
    }
  }
  std::ostringstream os;
  os << "500 matrices, axiom failures " << axiom_failures << ", uniqueness failures "
     << uniqueness_failures << " (max difference " << worst << ")";
  return {axiom_failures == 0 && uniqueness_failures == 0, os.str()};
}

Outcome duality_similarity() {
  double worst = 0.0;
  unsigned missing = 0;
  auto track = [&](const GroupFormulaResult& x, const Matrix& want) {
    if (!x.exists()) {
      ++missing;
      return;
    }
    worst = std::max(worst, relative_difference(x.blocks->assemble(), want));
  };
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 1 + seed % 4;
    const Matrix i = Matrix::identity(n), z = Matrix::zeros(n);
    {
      const BlockPair p = generate({FormulaId::thm31, n, seed, ""});
      const GroupFormulaResult base = group_ei_f0(p.e, p.f);
      if (!base.exists()) {
        ++missing;
      } else {
        track(group_ef_i0_dual(transpose(p.e), transpose(p.f)), transpose(base.blocks->assemble()));
        // [[E, F], [I, 0]] = S [[E, I], [F, 0]] S^-1 with S = [[E, I], [I, 0]].
        const Matrix s = assemble_blocks(p.e, i, i, z), s_inv = assemble_blocks(z, i, i, -p.e);
        track(group_ef_i0(p.e, p.f), s * base.blocks->assemble() * s_inv);
      }
    }
    {
      const BlockPair p = generate({FormulaId::thm33, n, seed, ""});
      const GroupFormulaResult base = group_ef_i0_dual(p.e, p.f);
      if (!base.exists()) {
        ++missing;
      } else {
        const Matrix s = assemble_blocks(p.e, i, i, z), s_inv = assemble_blocks(z, i, i, -p.e);
        track(group_ei_f0_dual(p.e, p.f), s_inv * base.blocks->assemble() * s);
      }
    }
    {
      const BlockPair p = generate({FormulaId::thm41, n, seed, ""});
      const GroupFormulaResult base = group_ef_f0(p.e, p.f);
      if (!base.exists()) {
        ++missing;
      } else {
        track(group_ef_f0_dual(transpose(p.e), transpose(p.f)), transpose(base.blocks->assemble()));
      }
    }
  }
  std::ostringstream os;
  os << "800 checks, max relative difference " << worst << ", missing inverses " << missing;
  return {worst <= 1e-10 && missing == 0, os.str()};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"AC1 golden fixture", golden_fixture},
      {"AC2 intermediate fixture", intermediate_fixture},
      {"AC3 master oracle property", master_oracle},
      {"AC4 existence equivalence", existence_equivalence},
      {"AC5 truncation identity", truncation_identity},
      {"AC6 Drazin core properties", drazin_core},
      {"AC7 duality and similarity", duality_similarity},
  };
  bool all = true;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& err) {
      o = {false, std::string("threw: ") + err.what()};
    }
    all = all && o.pass;
    std::printf("%s: %s  %s\n", name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
  }
  return all ? 0 : 1;
}
