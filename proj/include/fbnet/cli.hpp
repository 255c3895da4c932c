#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fbnet/metrics.hpp"

namespace fbnet::cli {

// Bad flags, bad values, unknown commands. Main maps this to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when --help was requested; carries the text to print.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { eval, solve, sweep, ffr, validate };
enum class OutputFormat { csv, jsonl };

// Fully validated execution plan. Defaults reproduce the reference setup
// (lambda = 1e-5 m^-2, D = 5 m, beta = 4, n = 500, interference-limited).
struct RunConfig {
  Command command = Command::eval;

  std::vector<double> lambdas{1e-5};
  double distance = 5.0;
  double beta = 4.0;
  double inv_power = 0.0;
  std::vector<std::int64_t> blocklengths{500};
  std::vector<double> rates{1.0};

  double epsilon_target = 1e-4;
  Method method = Method::integral;
  DispersionModel model = DispersionModel::iid_gaussian_codebook;

  std::int64_t samples = 100000;
  std::uint64_t seed = 0;
  double region_radius = 2000.0;
  std::int64_t chunk_size = 4096;

  std::vector<int> etas{1, 2, 3, 4, 5, 6, 7, 8};
  std::int64_t min_blocklength = 10;

  double rate_tol = 1e-6;
  double quad_tol = 1e-9;

  std::string output_path;    // empty: records go to stdout
  OutputFormat format = OutputFormat::csv;
  std::string dump_sir_path;  // eval with monte_carlo only

  unsigned workers = 0;  // 0 = automatic; set via FBNET_WORKERS
};

// Parse command-line arguments (program name excluded). A --config FILE
// supplies flat JSON defaults with the same keys as the long flags; explicit
// flags win. Throws UsageError / HelpRequested.
RunConfig parse_args(const std::vector<std::string>& args);

// Execute. Returns 0 on success, 3 when a solve is infeasible, 4 on
// numerical non-convergence, 5 on I/O failure (diagnostics on stderr).
int run(const RunConfig& config);

// Record serialization; the CSV column order is fixed:
// method,lambda,distance,beta,inv_power,n,rate,epsilon_target,epsilon,
// r_epsilon,ase,eta,seed,ks,notes
std::string csv_header();
std::string to_csv_row(const ResultRecord& record);
std::string to_json_line(const ResultRecord& record);

}  // namespace fbnet::cli
