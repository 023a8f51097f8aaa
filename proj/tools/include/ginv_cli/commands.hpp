#ifndef GINV_CLI_COMMANDS_HPP
#define GINV_CLI_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ginv_cli/report.hpp"

namespace ginv::cli {

struct DrazinArgs {
  std::string input;
  double tol = kDefaultTol;
};

struct BlockArgs {
  std::string e_path;
  std::string f_path;
  std::string fixture;  // "example45" instead of files
  std::string theorem;
  std::string pattern;  // optional; must agree with the formula
  bool verify = false;
  double tol = kDefaultTol;
  double compare_tol = kCompareTol;
  std::string lambda;  // "re" or "re,im"
};

struct GenArgs {
  std::string theorem;
  std::size_t n = 2;
  std::uint64_t seed = 0;
  std::string violate;
  std::string out_e;
  std::string out_f;
};

struct SweepArgs {
  std::string theorem = "all";
  unsigned count = 200;
  std::size_t nmax = 4;
  std::uint64_t seed = 0;
  double tol = kCompareTol;  // comparison tolerance
};

RunReport run_drazin(const DrazinArgs& args);
RunReport run_block(const BlockArgs& args);
RunReport run_gen(const GenArgs& args);
RunReport run_sweep(const SweepArgs& args);

/// Maps "E^πF^π", "E^piF^pi" and "EpiFpi" to the report name "EpiFpi".
std::string normalise_condition_name(const std::string& name);

/// Parses "re" or "re,im".
std::optional<Complex> parse_lambda(const std::string& text);

}  // namespace ginv::cli

#endif  // GINV_CLI_COMMANDS_HPP
