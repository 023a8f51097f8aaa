#include "ginv_cli/commands.hpp"

#include <chrono>
#include <cmath>

#include "ginv_cli/matrix_file.hpp"

namespace ginv::cli {

namespace {

using Clock = std::chrono::steady_clock;

class Timer {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
  }

 private:
  Clock::time_point start_ = Clock::now();
};

void fail(RunReport& r, int code, const std::string& outcome, const std::string& message) {
  r.exit_code = code;
  r.outcome = outcome;
  r.message = message;
}

std::string digest_of(std::initializer_list<const Matrix*> ms, const std::string& extra = {}) {
  std::string text;
  for (const Matrix* m : ms) text += matrix_to_json(*m).dump() + "\n";
  return fnv1a_hex(text + extra);
}

FormulaId formula_or_throw(const std::string& name) {
  auto id = parse_formula_id(name);
  if (!id) throw std::invalid_argument("unknown theorem id: " + name);
  return *id;
}

void put_blocks(RunReport& r, const Blocks& b) {
  r.matrices["inverse"] = b.assemble();
  r.matrices["tl"] = b.tl;
  r.matrices["tr"] = b.tr;
  r.matrices["bl"] = b.bl;
  r.matrices["br"] = b.br;
}

}  // namespace

std::string normalise_condition_name(const std::string& name) {
  std::string out;
  for (std::size_t i = 0; i < name.size(); ++i) {
    const char c = name[i];
    if (c == '^' || c == ' ' || c == '*') continue;
    if (name.compare(i, 2, "\xCF\x80") == 0) {  // UTF-8 pi
      out += "pi";
      ++i;
      continue;
    }
    out += c;
  }
  if (out == "FF#" || out == "Fgroup") return "F_group";
  if (out == "Egroup") return "E_group";
  return out;
}

std::optional<Complex> parse_lambda(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto comma = text.find(',');
  std::size_t used = 0;
  const std::string re_text = text.substr(0, comma);
  const double re = std::stod(re_text, &used);
  if (used != re_text.size()) throw std::invalid_argument("malformed lambda: " + text);
  double im = 0.0;
  if (comma != std::string::npos) {
    const std::string im_text = text.substr(comma + 1);
    im = std::stod(im_text, &used);
    if (used != im_text.size()) throw std::invalid_argument("malformed lambda: " + text);
  }
  if (!std::isfinite(re) || !std::isfinite(im)) throw std::invalid_argument("lambda must be finite");
  return Complex{re, im};
}

RunReport run_drazin(const DrazinArgs& args) {
  Timer timer;
  RunReport r;
  r.outcome = "ok";
  try {
    const Matrix a = read_matrix_file(args.input);
    r.inputs_digest = digest_of({&a});
    if (!a.square()) throw ShapeError("drazin: matrix is not square");
    DrazinResult d = drazin(a, args.tol);
    r.index = d.index;
    r.kind = std::string(to_string(d.index <= 1 ? InverseKind::Group : InverseKind::Drazin));
    r.matrices["drazin"] = std::move(d.drazin);
    r.matrices["idempotent"] = std::move(d.idempotent);
  } catch (const std::exception& err) {
    fail(r, kInputError, "error", err.what());
  }
  r.wall_time_ms = timer.elapsed_ms();
  return r;
}

RunReport run_block(const BlockArgs& args) {
  Timer timer;
  RunReport r;
  r.outcome = "ok";
  BlockPair pair;
  FormulaId id{};
  try {
    id = formula_or_throw(args.theorem);
    if (args.fixture == "example45") {
      pair = example_45();
    } else if (!args.fixture.empty()) {
      throw std::invalid_argument("unknown fixture: " + args.fixture);
    } else {
      if (args.e_path.empty() || args.f_path.empty()) {
        throw std::invalid_argument("block: need --E and --F, or --fixture");
      }
      pair.e = read_matrix_file(args.e_path);
      pair.f = read_matrix_file(args.f_path);
    }
    pair.pattern = pattern_of(id);
    if (!args.pattern.empty()) {
      auto p = parse_pattern(args.pattern);
      if (!p) throw std::invalid_argument("unknown pattern: " + args.pattern);
      if (*p != pair.pattern) {
        throw std::invalid_argument(args.theorem + " applies to pattern " +
                                    std::string(to_string(pair.pattern)));
      }
    }
    pair.lambda = parse_lambda(args.lambda);
    if (!pair.e.square() || !pair.f.square() || pair.e.rows() != pair.f.rows()) {
      throw ShapeError("block: E and F must be square of equal order");
    }
    r.inputs_digest = digest_of({&pair.e, &pair.f}, args.theorem + args.lambda);
  } catch (const std::exception& err) {
    fail(r, kInputError, "error", err.what());
    r.wall_time_ms = timer.elapsed_ms();
    return r;
  }

  try {
    r.conditions = check_conditions(pair.e, pair.f, id, args.tol, pair.lambda);
    FormulaOutcome out = evaluate(id, pair, args.tol);
    r.kind = std::string(to_string(out.kind));
    r.diagnostics = out.diagnostics;
    if (out.exists) {
      put_blocks(r, out.blocks);
    } else {
      r.absent = out.absent;
      fail(r, kNoGroupInverse, "no_group_inverse", "group inverse does not exist");
    }
    if (args.verify) {
      r.verdict = compare(out, pair, args.compare_tol, args.tol);
      if (!r.verdict->pass) {
        fail(r, kFailure, "verification_failure", "formula disagrees with the direct inverse");
      }
    }
  } catch (const HypothesisError& err) {
    r.conditions = err.report();
    fail(r, kFailure, "hypothesis_failure", err.what());
  } catch (const std::exception& err) {
    fail(r, kInputError, "error", err.what());
  }
  r.wall_time_ms = timer.elapsed_ms();
  return r;
}

RunReport run_gen(const GenArgs& args) {
  Timer timer;
  RunReport r;
  r.outcome = "ok";
  try {
    GeneratorRecipe recipe{formula_or_throw(args.theorem), args.n, args.seed,
                           normalise_condition_name(args.violate)};
    r.inputs_digest = fnv1a_hex(args.theorem + "/" + std::to_string(args.n) + "/" +
                                std::to_string(args.seed) + "/" + recipe.violate);
    BlockPair pair = generate(recipe);
    r.conditions = check_conditions(pair.e, pair.f, recipe.formula, kDefaultTol, pair.lambda);
    if (!args.out_e.empty()) write_matrix_file(args.out_e, pair.e);
    if (!args.out_f.empty()) write_matrix_file(args.out_f, pair.f);
    r.matrices["E"] = pair.e;
    r.matrices["F"] = pair.f;
  } catch (const InfeasibleRecipeError& err) {
    fail(r, kFailure, "infeasible_recipe", err.what());
  } catch (const std::exception& err) {
    fail(r, kInputError, "error", err.what());
  }
  r.wall_time_ms = timer.elapsed_ms();
  return r;
}

RunReport run_sweep(const SweepArgs& args) {
  Timer timer;
  RunReport r;
  r.outcome = "ok";
  std::vector<FormulaId> ids;
  try {
    if (args.theorem == "all") {
      ids.assign(kAllFormulas.begin(), kAllFormulas.end());
    } else {
      ids.push_back(formula_or_throw(args.theorem));
    }
    if (args.nmax == 0) throw std::invalid_argument("sweep: --nmax must be positive");
  } catch (const std::exception& err) {
    fail(r, kInputError, "error", err.what());
    r.wall_time_ms = timer.elapsed_ms();
    return r;
  }
  r.inputs_digest = fnv1a_hex(args.theorem + "/" + std::to_string(args.count) + "/" +
                              std::to_string(args.nmax) + "/" + std::to_string(args.seed));

  bool all_pass = true;
  for (FormulaId id : ids) {
    SweepRow row;
    row.formula = std::string(to_string(id));
    for (unsigned i = 0; i < args.count; ++i) {
      const std::uint64_t seed = args.seed + i;
      bool pass = false;
      try {
        BlockPair pair = (id == FormulaId::thm41 && i == 0)
                             ? example_45()
                             : generate({id, 1 + i % args.nmax, seed, ""});
        const ComparisonVerdict v = compare(evaluate(id, pair), pair, args.tol);
        row.max_error = std::max(row.max_error, v.relative_error);
        pass = v.pass;
      } catch (const std::exception&) {
        pass = false;
      }
      ++row.count;
      if (pass) {
        ++row.passed;
      } else {
        row.failed_seeds.push_back(seed);
      }
    }
    all_pass = all_pass && row.passed == row.count;
    r.sweep.push_back(std::move(row));
  }
  if (!all_pass) fail(r, kFailure, "verification_failure", "some instances failed");
  r.wall_time_ms = timer.elapsed_ms();
  return r;
}

}  // namespace ginv::cli
