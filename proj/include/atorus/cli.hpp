#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace atorus::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidAlgebra = 2,
  kInputError = 3,
  kCheckFailed = 4,
  kSizeCap = 5,
};

struct RunConfig {
  std::string preset = "dual";
  std::string spec_path;
  int m = 1;
  int degree = 1;
  double tol = 1e-8;
  int grid = 32;
  std::int64_t cap = 20000;
  std::string out_path;
  std::string expr;
  std::string at;

  std::string source() const { return spec_path.empty() ? preset : spec_path; }
};

/// Runs one subcommand (algebra | lift | check | verify | forms) and
/// returns the process exit code. Reports go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace atorus::cli
