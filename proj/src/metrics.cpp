#include "fbnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "fbnet/errors.hpp"
#include "fbnet/fbl.hpp"

namespace fbnet {

std::string to_string(Method m) {
  switch (m) {
    case Method::integral: return "integral";
    case Method::closed_form: return "closed_form";
    case Method::monte_carlo: return "monte_carlo";
  }
  throw std::logic_error("to_string: unknown method");
}

Method method_from_string(const std::string& name) {
  if (name == "integral") return Method::integral;
  if (name == "closed_form" || name == "closed") return Method::closed_form;
  if (name == "monte_carlo" || name == "mc") return Method::monte_carlo;
  throw std::invalid_argument("unknown method '" + name + "'");
}

void validate(const ReliabilityTarget& target) {
  if (!(target.epsilon_target > 0.0 && target.epsilon_target < 1.0))
    throw std::domain_error("ReliabilityTarget: epsilon_target must lie in (0, 1)");
}

void validate(const FfrSpec& spec) {
  if (spec.eta_values.empty()) throw std::domain_error("FfrSpec: eta_values must be nonempty");
  if (spec.min_blocklength < 2)
    throw std::domain_error("FfrSpec: min_blocklength must be at least 2");
  for (std::size_t i = 0; i < spec.eta_values.size(); ++i) {
    if (spec.eta_values[i] < 1) throw std::domain_error("FfrSpec: reuse factors must be >= 1");
    if (i > 0 && spec.eta_values[i] <= spec.eta_values[i - 1])
      throw std::domain_error("FfrSpec: eta_values must be sorted ascending and distinct");
  }
}

SolveResult solve_r_epsilon(const NetworkParams& params, std::int64_t blocklength,
                            const ReliabilityTarget& target, DispersionModel model,
                            Method method, const SolveOptions& opts) {
  validate(params);
  validate(target);
  if (blocklength < 1) throw std::domain_error("solve_r_epsilon: blocklength must be >= 1");
  if (!(opts.rate_tol > 0.0)) throw std::domain_error("solve_r_epsilon: rate_tol must be > 0");
  if (params.density == 0.0 && params.inv_power == 0.0)
    throw std::domain_error(
        "solve_r_epsilon: rate is unbounded without interference or noise");

  std::function<double(double)> eval;
  SirBatch batch;  // sampled once; conditional_error is monotone in R pointwise
  switch (method) {
    case Method::integral:
      eval = [&](double r) {
        return error_probability_integral(params, {blocklength, r}, model, opts.quad_tol);
      };
      break;
    case Method::closed_form:
      eval = [&](double r) {
        return error_probability_closed_form(params, {blocklength, r});
      };
      break;
    case Method::monte_carlo: {
      if (opts.mc == nullptr)
        throw std::invalid_argument("solve_r_epsilon: monte_carlo needs a MonteCarloConfig");
      batch = sample_sir(params, *opts.mc, opts.workers);
      eval = [&, model](double r) {
        return empirical_error(batch, {blocklength, r}, model).mean;
      };
      break;
    }
  }

  // the closed form is undefined at rate 0; probe just inside the support
  const double rate_floor = method == Method::closed_form ? 1e-12 : 0.0;
  const double eps_floor = eval(rate_floor);
  if (eps_floor >= target.epsilon_target)
    return {0.0, eps_floor, true};

  double lo = rate_floor, eps_lo = eps_floor;
  double hi = 1.0;
  int doublings = 0;
  double eps_hi = eval(hi);
  while (eps_hi <= target.epsilon_target) {
    lo = hi;
    eps_lo = eps_hi;
    hi *= 2.0;
    if (++doublings > 64)
      throw numerical_error("solve_r_epsilon: no finite bracket found", lo, hi - lo);
    eps_hi = eval(hi);
  }

  while (hi - lo > opts.rate_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // double-precision limit
    const double eps_mid = eval(mid);
    if (eps_mid <= target.epsilon_target) {
      lo = mid;
      eps_lo = eps_mid;
    } else {
      hi = mid;
    }
  }
  return {lo, eps_lo, false};
}

double area_spectral_efficiency(double density, double r_eps, double epsilon) {
  if (!(density >= 0.0) || !(r_eps >= 0.0))
    throw std::domain_error("area_spectral_efficiency: inputs must be nonnegative");
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw std::domain_error("area_spectral_efficiency: epsilon must lie in [0, 1]");
  return density * r_eps * (1.0 - epsilon);
}

std::vector<ResultRecord> ffr_sweep(const NetworkParams& params, std::int64_t blocklength,
                                    const ReliabilityTarget& target, DispersionModel model,
                                    const FfrSpec& spec, Method method,
                                    const SolveOptions& opts) {
  validate(params);
  validate(target);
  validate(spec);

  std::vector<ResultRecord> records;
  bool any_admissible = false;
  for (int eta : spec.eta_values) {
    NetworkParams bin = params;
    bin.density = params.density / eta;
    const std::int64_t bin_n = blocklength / eta;

    ResultRecord rec;
    rec.method = method;
    rec.params = bin;
    rec.blocklength = bin_n;
    rec.epsilon_target = target.epsilon_target;
    rec.eta = eta;
    if (opts.mc != nullptr) rec.seed = opts.mc->seed;

    if (bin_n < spec.min_blocklength) {
      rec.notes = "skipped: per-bin blocklength " + std::to_string(bin_n) +
                  " below minimum " + std::to_string(spec.min_blocklength);
      records.push_back(std::move(rec));
      continue;
    }
    any_admissible = true;

    const SolveResult sol = solve_r_epsilon(bin, bin_n, target, model, method, opts);
    rec.r_epsilon = sol.rate;
    rec.epsilon = sol.epsilon_at_rate;
    rec.ase = area_spectral_efficiency(bin.density, sol.rate, target.epsilon_target);
    if (sol.infeasible) rec.notes = "infeasible";
    records.push_back(std::move(rec));
  }

  if (!any_admissible)
    throw std::domain_error("ffr_sweep: no admissible reuse factor (blocklength too small)");
  return records;
}

FfrOptimum ffr_optimum(std::span<const ResultRecord> records) {
  const ResultRecord* best = nullptr;
  for (const auto& rec : records) {
    if (!rec.ase.has_value() || !rec.eta.has_value()) continue;
    if (best == nullptr || *rec.ase > *best->ase ||
        (*rec.ase == *best->ase && *rec.eta < *best->eta))
      best = &rec;
  }
  if (best == nullptr) throw std::domain_error("ffr_optimum: no records with an ASE value");
  return {*best->eta, *best->ase};
}

}  // namespace fbnet
