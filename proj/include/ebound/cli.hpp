#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ebound::cli {

enum ExitCode : int {
  kOk = 0,
  kInfeasible = 2,
  kCertificationFailure = 3,
  kInputError = 4,
};

enum class Format { text, json };

/// Parsed and validated command line.
struct RunConfig {
  std::string command;
  int n = 0;
  int M = 0;
  std::string s_text;  // number or "auto-ez"
  std::string potential = "newton";
  Format format = Format::text;
  double tol_coeff = 1e-12;
  double tol_domination = 1e-9;
  int grid_points = 2048;
  std::optional<std::string> code_path;
  std::optional<std::string> generator;
  bool renormalize = false;
  int j_max = 0;
  double table_s = 0.5;
  std::vector<std::string> table_rows;  // "n:M1,M2"
  int jobs = 1;
  std::string cert_path;
};

/// One Table-1 style row: dimension and the cardinalities to bound.
struct TableRow {
  int n = 0;
  std::vector<int> Ms;
};

/// Kissing-number bounds for n = 2..10 at s = 1/2.
std::vector<TableRow> default_table_rows();

/// Runs one CLI invocation; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ebound::cli
