#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fbnet/mcsim.hpp"
#include "fbnet/sirdist.hpp"

namespace fbnet {

// How the error probability is evaluated inside solvers and sweeps.
enum class Method { integral, closed_form, monte_carlo };

std::string to_string(Method m);
Method method_from_string(const std::string& name);

struct ReliabilityTarget {
  double epsilon_target = 1e-4;  // strictly inside (0, 1)
};

void validate(const ReliabilityTarget& target);

// Frequency-reuse sweep plan: reuse factors to evaluate and the smallest
// per-bin blocklength still considered meaningful.
struct FfrSpec {
  std::vector<int> eta_values;
  std::int64_t min_blocklength = 10;
};

void validate(const FfrSpec& spec);

// One output row. Optional fields are present according to the producing
// command; `notes` carries free-form diagnostics (skip reasons, standard
// errors, summary lines).
struct ResultRecord {
  Method method = Method::integral;
  NetworkParams params;
  std::int64_t blocklength = 0;
  std::optional<double> rate;            // input rate of an evaluation row
  std::optional<double> epsilon_target;
  std::optional<double> epsilon;         // evaluated / achieved error probability
  std::optional<double> r_epsilon;
  std::optional<double> ase;
  std::optional<int> eta;
  std::optional<std::uint64_t> seed;
  std::optional<double> ks;
  std::string notes;
};

struct SolveResult {
  double rate = 0.0;
  double epsilon_at_rate = 0.0;
  bool infeasible = false;
};

struct SolveOptions {
  double rate_tol = 1e-6;
  double quad_tol = 1e-9;
  const MonteCarloConfig* mc = nullptr;  // required for Method::monte_carlo
  unsigned workers = 0;
};

// Largest rate whose error probability stays below the target, by bracketed
// bisection on the monotone map R -> epsilon(R). Postcondition for feasible
// targets: epsilon(rate) <= target < epsilon(rate + rate_tol).
SolveResult solve_r_epsilon(const NetworkParams& params, std::int64_t blocklength,
                            const ReliabilityTarget& target, DispersionModel model,
                            Method method, const SolveOptions& opts = {});

// lambda * R * (1 - epsilon): delivered bits per channel use per unit area.
double area_spectral_efficiency(double density, double r_eps, double epsilon);

// Evaluate R_epsilon and ASE for each reuse factor eta: the per-bin density
// is lambda/eta and the per-bin blocklength floor(n/eta). Factors whose
// blocklength falls below spec.min_blocklength produce a skip record.
std::vector<ResultRecord> ffr_sweep(const NetworkParams& params, std::int64_t blocklength,
                                    const ReliabilityTarget& target, DispersionModel model,
                                    const FfrSpec& spec, Method method,
                                    const SolveOptions& opts = {});

struct FfrOptimum {
  int eta = 0;
  double ase = 0.0;
};

// Argmax of ASE over the records; ties go to the smallest eta.
FfrOptimum ffr_optimum(std::span<const ResultRecord> records);

}  // namespace fbnet
