#include <iostream>

#include "CLI11.hpp"
#include "ginv_cli/commands.hpp"

using namespace ginv::cli;

int main(int argc, char** argv) {
  CLI::App app{"Drazin and group inverses of anti-triangular block matrices"};
  app.require_subcommand(1);

  DrazinArgs drazin_args;
  auto* drazin_cmd = app.add_subcommand("drazin", "Drazin inverse, index and spectral idempotent");
  drazin_cmd->add_option("--input", drazin_args.input, "matrix file")->required();
  drazin_cmd->add_option("--tol", drazin_args.tol, "rank tolerance")->capture_default_str();

  BlockArgs block_args;
  auto* block_cmd = app.add_subcommand("block", "closed-form inverse of [[E, .], [., 0]]");
  block_cmd->add_option("--E", block_args.e_path, "matrix file for E");
  block_cmd->add_option("--F", block_args.f_path, "matrix file for F");
  block_cmd->add_option("--fixture", block_args.fixture, "built-in pair (example45)");
  block_cmd->add_option("--theorem", block_args.theorem, "formula id, e.g. thm41")->required();
  block_cmd->add_option("--pattern", block_args.pattern, "EI_F0, EF_I0 or EF_F0");
  block_cmd->add_flag("--verify", block_args.verify, "compare against the direct inverse");
  block_cmd->add_option("--tol", block_args.tol, "compute tolerance")->capture_default_str();
  block_cmd->add_option("--compare-tol", block_args.compare_tol, "comparison tolerance")
      ->capture_default_str();
  block_cmd->add_option("--lambda", block_args.lambda, "EF = lambda FE, as re or re,im");

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "generate a pair for a formula");
  gen_cmd->add_option("--theorem", gen_args.theorem, "formula id")->required();
  gen_cmd->add_option("--n", gen_args.n, "block order")->capture_default_str();
  gen_cmd->add_option("--seed", gen_args.seed, "seed")->capture_default_str();
  gen_cmd->add_option("--violate", gen_args.violate, "condition to break");
  gen_cmd->add_option("--out-e", gen_args.out_e, "output file for E");
  gen_cmd->add_option("--out-f", gen_args.out_f, "output file for F");

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "formula vs direct inverse on generated pairs");
  sweep_cmd->add_option("--theorem", sweep_args.theorem, "formula id or all")->capture_default_str();
  sweep_cmd->add_option("--count", sweep_args.count, "instances per formula")->capture_default_str();
  sweep_cmd->add_option("--nmax", sweep_args.nmax, "largest block order")->capture_default_str();
  sweep_cmd->add_option("--seed", sweep_args.seed, "first seed")->capture_default_str();
  sweep_cmd->add_option("--tol", sweep_args.tol, "comparison tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  RunReport report;
  if (*drazin_cmd) {
    report = run_drazin(drazin_args);
  } else if (*block_cmd) {
    report = run_block(block_args);
  } else if (*gen_cmd) {
    report = run_gen(gen_args);
  } else {
    report = run_sweep(sweep_args);
  }
  report.command.assign(argv, argv + argc);
  if (!report.message.empty() && report.exit_code != kOk) std::cerr << report.message << '\n';
  std::cout << report_to_json(report).dump(2) << '\n';
  return report.exit_code;
}
