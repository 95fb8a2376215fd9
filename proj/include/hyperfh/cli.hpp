#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hyperfh/io.hpp"

namespace hyperfh {

/// Exit codes of the command-line front end.
enum ExitCode : int { ExitOk = 0, ExitVerifyFailed = 1, ExitParse = 2, ExitNumeric = 3 };

struct CheckRecord {
  std::string id;
  std::string reference;
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
  double runtime_ms = 0.0;
};

struct VerifyReport {
  std::string suite;
  std::vector<CheckRecord> checks;
  bool all_pass() const;
  json to_json() const;
};

const std::vector<std::string>& verify_suites();
/// Runs one suite (or "all"); tol_scale multiplies every tolerance.
VerifyReport run_verify(const std::string& suite, double tol_scale = 1.0, unsigned long long seed = 20240607);

/// Label line for a point, as printed by `classify`.
std::string classify_line(const C3& z);

/// Writes the CSV for a transform config; throws on invalid configs or numerical failure.
void run_transform(const json& config, std::ostream& out);

/// argv-style entry point used by the executable.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hyperfh
