#include "fbnet/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "fbnet/errors.hpp"
#include "fbnet/fbl.hpp"

namespace fbnet::cli {

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- formatting -----------------------------------------------------------

std::string format_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);  // shortest round-trip form
  return std::string(buf, ptr);
}

// ---- flag value parsing ----------------------------------------------------

std::vector<std::string> split(const std::string& text, char delim) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == delim) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

double parse_double(const std::string& flag, const std::string& text) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end)
    throw UsageError(flag + ": invalid number '" + text + "'");
  return v;
}

std::int64_t parse_int(const std::string& flag, const std::string& text) {
  std::int64_t v = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end)
    throw UsageError(flag + ": invalid integer '" + text + "'");
  return v;
}

std::uint64_t parse_uint(const std::string& flag, const std::string& text) {
  std::uint64_t v = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end)
    throw UsageError(flag + ": invalid unsigned integer '" + text + "'");
  return v;
}

// value syntax: single number, comma list, or inclusive range start:stop[:step]
std::vector<double> parse_double_list(const std::string& flag, const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 2 && parts.size() != 3)
      throw UsageError(flag + ": range must be start:stop[:step], got '" + text + "'");
    const double start = parse_double(flag, parts[0]);
    const double stop = parse_double(flag, parts[1]);
    const double step = parts.size() == 3 ? parse_double(flag, parts[2]) : 1.0;
    if (!(step > 0.0)) throw UsageError(flag + ": range step must be positive");
    if (stop < start) throw UsageError(flag + ": range stop must not precede start");
    const auto count = static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9));
    for (std::int64_t i = 0; i <= count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  for (const auto& piece : split(text, ',')) out.push_back(parse_double(flag, piece));
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& flag, const std::string& text) {
  std::vector<std::int64_t> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 2 && parts.size() != 3)
      throw UsageError(flag + ": range must be start:stop[:step], got '" + text + "'");
    const std::int64_t start = parse_int(flag, parts[0]);
    const std::int64_t stop = parse_int(flag, parts[1]);
    const std::int64_t step = parts.size() == 3 ? parse_int(flag, parts[2]) : 1;
    if (step <= 0) throw UsageError(flag + ": range step must be positive");
    if (stop < start) throw UsageError(flag + ": range stop must not precede start");
    for (std::int64_t v = start; v <= stop; v += step) out.push_back(v);
    return out;
  }
  for (const auto& piece : split(text, ',')) out.push_back(parse_int(flag, piece));
  return out;
}

// ---- argument collection ---------------------------------------------------

using RawValues = std::map<std::string, std::string>;

void add_string_option(CLI::App* sub, RawValues& raw, const std::string& name,
                       const std::string& description) {
  sub->add_option(
      "--" + name,
      [&raw, name](const CLI::results_t& res) {
        raw[name] = res.back();  // repeated flags: last one wins
        return true;
      },
      description);
}

void add_common_options(CLI::App* sub, RawValues& raw) {
  add_string_option(sub, raw, "config", "flat JSON file supplying defaults for the long flags");
  add_string_option(sub, raw, "lambda", "transmitter density per m^2 (list or start:stop:step)");
  add_string_option(sub, raw, "distance", "link distance D in meters");
  add_string_option(sub, raw, "beta", "path-loss exponent, must exceed 2");
  add_string_option(sub, raw, "inv-power", "reciprocal transmit power 1/P (0 = interference-limited)");
  add_string_option(sub, raw, "n", "blocklength in channel uses (list or range)");
  add_string_option(sub, raw, "method", "integral | closed_form | monte_carlo");
  add_string_option(sub, raw, "model", "dispersion model: iid | awgn");
  add_string_option(sub, raw, "rate-tol", "rate tolerance of the bisection solver");
  add_string_option(sub, raw, "quad-tol", "absolute tolerance of the adaptive quadrature");
  add_string_option(sub, raw, "out", "output file (default: stdout)");
  add_string_option(sub, raw, "format", "output format: csv | jsonl");
}

void add_mc_options(CLI::App* sub, RawValues& raw) {
  add_string_option(sub, raw, "samples", "Monte Carlo realizations");
  add_string_option(sub, raw, "seed", "RNG seed");
  add_string_option(sub, raw, "region-radius", "interferer sampling disk radius in meters");
  add_string_option(sub, raw, "chunk-size", "realizations per RNG substream");
}

nlohmann::json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("--config: " + std::string(e.what()));
  }
  if (!j.is_object()) throw UsageError("--config: file must hold a flat JSON object");
  return j;
}

unsigned workers_from_env() {
  const char* env = std::getenv("FBNET_WORKERS");
  if (env == nullptr || *env == '\0') return 0;
  const std::uint64_t v = parse_uint("FBNET_WORKERS", env);
  if (v > 4096) throw UsageError("FBNET_WORKERS: implausible worker count");
  return static_cast<unsigned>(v);
}

// ---- record emission -------------------------------------------------------

void append_field(std::string& row, const std::optional<double>& v) {
  row += ',';
  if (v) row += format_double(*v);
}

std::string render_records(const RunConfig& cfg, const std::vector<ResultRecord>& records) {
  std::string out;
  if (cfg.format == OutputFormat::csv) {
    out += csv_header();
    out += '\n';
    for (const auto& rec : records) {
      out += to_csv_row(rec);
      out += '\n';
    }
  } else {
    for (const auto& rec : records) {
      out += to_json_line(rec);
      out += '\n';
    }
  }
  return out;
}

void write_output(const RunConfig& cfg, const std::vector<ResultRecord>& records) {
  const std::string text = render_records(cfg, records);
  if (cfg.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out) throw IoError("cannot open output file '" + cfg.output_path + "'");
  out << text;
  out.flush();
  if (!out.good()) throw IoError("failed writing output file '" + cfg.output_path + "'");
}

// ---- command execution -----------------------------------------------------

NetworkParams params_at(const RunConfig& cfg, double lambda) {
  NetworkParams p;
  p.density = lambda;
  p.link_distance = cfg.distance;
  p.path_loss_exponent = cfg.beta;
  p.inv_power = cfg.inv_power;
  return p;
}

MonteCarloConfig mc_config(const RunConfig& cfg) {
  MonteCarloConfig mc;
  mc.num_realizations = cfg.samples;
  mc.region_radius = cfg.region_radius;
  mc.seed = cfg.seed;
  mc.chunk_size = cfg.chunk_size;
  return mc;
}

ResultRecord evaluation_record(const RunConfig& cfg, const NetworkParams& params,
                               const CodingParams& coding, const SirBatch* batch) {
  ResultRecord rec;
  rec.method = cfg.method;
  rec.params = params;
  rec.blocklength = coding.blocklength;
  rec.rate = coding.rate;
  switch (cfg.method) {
    case Method::integral:
      rec.epsilon = error_probability_integral(params, coding, cfg.model, cfg.quad_tol);
      break;
    case Method::closed_form:
      rec.epsilon = error_probability_closed_form(params, coding);
      break;
    case Method::monte_carlo: {
      const ErrorEstimate est = empirical_error(*batch, coding, cfg.model);
      rec.epsilon = est.mean;
      rec.seed = cfg.seed;
      rec.notes = "se=" + format_double(est.standard_error);
      break;
    }
  }
  return rec;
}

std::vector<ResultRecord> run_eval(const RunConfig& cfg) {
  const NetworkParams params = params_at(cfg, cfg.lambdas.front());
  const CodingParams coding{cfg.blocklengths.front(), cfg.rates.front()};

  SirBatch batch;
  if (cfg.method == Method::monte_carlo) {
    batch = sample_sir(params, mc_config(cfg), cfg.workers);
    if (!cfg.dump_sir_path.empty()) {
      std::ofstream dump(cfg.dump_sir_path, std::ios::binary);
      if (!dump) throw IoError("cannot open SIR dump file '" + cfg.dump_sir_path + "'");
      write_batch(dump, batch);
      dump.flush();
      if (!dump.good()) throw IoError("failed writing SIR dump '" + cfg.dump_sir_path + "'");
    }
  }
  return {evaluation_record(cfg, params, coding, &batch)};
}

std::vector<ResultRecord> run_sweep(const RunConfig& cfg) {
  std::vector<ResultRecord> records;
  for (double lambda : cfg.lambdas) {
    const NetworkParams params = params_at(cfg, lambda);
    SirBatch batch;
    if (cfg.method == Method::monte_carlo) batch = sample_sir(params, mc_config(cfg), cfg.workers);
    for (std::int64_t n : cfg.blocklengths)
      for (double rate : cfg.rates)
        records.push_back(evaluation_record(cfg, params, CodingParams{n, rate}, &batch));
  }
  return records;
}

SolveOptions solve_options(const RunConfig& cfg, const MonteCarloConfig* mc) {
  SolveOptions opts;
  opts.rate_tol = cfg.rate_tol;
  opts.quad_tol = cfg.quad_tol;
  opts.mc = cfg.method == Method::monte_carlo ? mc : nullptr;
  opts.workers = cfg.workers;
  return opts;
}

std::pair<std::vector<ResultRecord>, bool> run_solve(const RunConfig& cfg) {
  const NetworkParams params = params_at(cfg, cfg.lambdas.front());
  const std::int64_t n = cfg.blocklengths.front();
  const MonteCarloConfig mc = mc_config(cfg);
  const SolveResult sol = solve_r_epsilon(params, n, {cfg.epsilon_target}, cfg.model,
                                          cfg.method, solve_options(cfg, &mc));

  ResultRecord rec;
  rec.method = cfg.method;
  rec.params = params;
  rec.blocklength = n;
  rec.epsilon_target = cfg.epsilon_target;
  rec.r_epsilon = sol.rate;
  rec.epsilon = sol.epsilon_at_rate;
  rec.ase = area_spectral_efficiency(params.density, sol.rate, cfg.epsilon_target);
  if (cfg.method == Method::monte_carlo) rec.seed = cfg.seed;
  if (sol.infeasible) rec.notes = "infeasible";
  return {{rec}, sol.infeasible};
}

std::vector<ResultRecord> run_ffr(const RunConfig& cfg) {
  const NetworkParams params = params_at(cfg, cfg.lambdas.front());
  FfrSpec spec;
  spec.eta_values = cfg.etas;
  spec.min_blocklength = cfg.min_blocklength;
  const MonteCarloConfig mc = mc_config(cfg);

  std::vector<ResultRecord> records =
      ffr_sweep(params, cfg.blocklengths.front(), {cfg.epsilon_target}, cfg.model, spec,
                cfg.method, solve_options(cfg, &mc));

  const FfrOptimum best = ffr_optimum(records);
  for (const auto& rec : records) {
    if (rec.eta && *rec.eta == best.eta && rec.ase) {
      ResultRecord opt = rec;
      opt.notes = "optimum";
      records.push_back(std::move(opt));
      break;
    }
  }
  return records;
}

std::vector<ResultRecord> run_validate(const RunConfig& cfg) {
  std::vector<ResultRecord> records;
  const std::int64_t n = cfg.blocklengths.front();
  const bool with_closed_form = cfg.inv_power == 0.0;

  double max_ks = 0.0, max_dev_cf = 0.0, max_z_mc = 0.0;
  for (double lambda : cfg.lambdas) {
    const NetworkParams params = params_at(cfg, lambda);
    const SirBatch batch = sample_sir(params, mc_config(cfg), cfg.workers);

    ResultRecord ks_rec;
    ks_rec.method = Method::monte_carlo;
    ks_rec.params = params;
    ks_rec.blocklength = n;
    ks_rec.seed = cfg.seed;
    ks_rec.ks = ks_distance(batch, params);
    ks_rec.notes = "ks";
    max_ks = std::max(max_ks, *ks_rec.ks);
    records.push_back(std::move(ks_rec));

    for (double rate : cfg.rates) {
      const CodingParams coding{n, rate};
      const double eps_int =
          error_probability_integral(params, coding, cfg.model, cfg.quad_tol);

      ResultRecord int_rec;
      int_rec.method = Method::integral;
      int_rec.params = params;
      int_rec.blocklength = n;
      int_rec.rate = rate;
      int_rec.epsilon = eps_int;
      records.push_back(std::move(int_rec));

      if (with_closed_form) {
        const double eps_cf = error_probability_closed_form(params, coding);
        max_dev_cf = std::max(max_dev_cf, std::fabs(eps_int - eps_cf));
        ResultRecord cf_rec;
        cf_rec.method = Method::closed_form;
        cf_rec.params = params;
        cf_rec.blocklength = n;
        cf_rec.rate = rate;
        cf_rec.epsilon = eps_cf;
        records.push_back(std::move(cf_rec));
      }

      const ErrorEstimate est = empirical_error(batch, coding, cfg.model);
      if (est.standard_error > 0.0)
        max_z_mc = std::max(max_z_mc, std::fabs(est.mean - eps_int) / est.standard_error);
      ResultRecord mc_rec;
      mc_rec.method = Method::monte_carlo;
      mc_rec.params = params;
      mc_rec.blocklength = n;
      mc_rec.rate = rate;
      mc_rec.epsilon = est.mean;
      mc_rec.seed = cfg.seed;
      mc_rec.notes = "se=" + format_double(est.standard_error);
      records.push_back(std::move(mc_rec));
    }
  }

  ResultRecord summary;
  summary.method = Method::integral;
  summary.params = params_at(cfg, cfg.lambdas.front());
  summary.blocklength = n;
  summary.notes = "summary max_ks=" + format_double(max_ks);
  if (with_closed_form)
    summary.notes += " max_abs_dev_closed_form=" + format_double(max_dev_cf);
  summary.notes += " max_z_monte_carlo=" + format_double(max_z_mc);
  records.push_back(summary);

  std::cerr << "validate: max KS distance          = " << format_double(max_ks) << '\n';
  if (with_closed_form)
    std::cerr << "validate: max |eps_int - eps_cf|   = " << format_double(max_dev_cf) << '\n';
  std::cerr << "validate: max |eps_mc - eps_int|/se = " << format_double(max_z_mc) << '\n';
  return records;
}

}  // namespace

std::string csv_header() {
  return "method,lambda,distance,beta,inv_power,n,rate,epsilon_target,epsilon,"
         "r_epsilon,ase,eta,seed,ks,notes";
}

std::string to_csv_row(const ResultRecord& rec) {
  std::string row = to_string(rec.method);
  row += ',';
  row += format_double(rec.params.density);
  row += ',';
  row += format_double(rec.params.link_distance);
  row += ',';
  row += format_double(rec.params.path_loss_exponent);
  row += ',';
  row += format_double(rec.params.inv_power);
  row += ',';
  row += std::to_string(rec.blocklength);
  append_field(row, rec.rate);
  append_field(row, rec.epsilon_target);
  append_field(row, rec.epsilon);
  append_field(row, rec.r_epsilon);
  append_field(row, rec.ase);
  row += ',';
  if (rec.eta) row += std::to_string(*rec.eta);
  row += ',';
  if (rec.seed) row += std::to_string(*rec.seed);
  append_field(row, rec.ks);
  row += ',';
  row += rec.notes;  // notes never contain commas
  return row;
}

std::string to_json_line(const ResultRecord& rec) {
  nlohmann::ordered_json j;
  j["method"] = to_string(rec.method);
  j["lambda"] = rec.params.density;
  j["distance"] = rec.params.link_distance;
  j["beta"] = rec.params.path_loss_exponent;
  j["inv_power"] = rec.params.inv_power;
  j["n"] = rec.blocklength;
  if (rec.rate) j["rate"] = *rec.rate;
  if (rec.epsilon_target) j["epsilon_target"] = *rec.epsilon_target;
  if (rec.epsilon) j["epsilon"] = *rec.epsilon;
  if (rec.r_epsilon) j["r_epsilon"] = *rec.r_epsilon;
  if (rec.ase) j["ase"] = *rec.ase;
  if (rec.eta) j["eta"] = *rec.eta;
  if (rec.seed) j["seed"] = *rec.seed;
  if (rec.ks) j["ks"] = *rec.ks;
  if (!rec.notes.empty()) j["notes"] = rec.notes;
  return j.dump();
}

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Finite-blocklength reliability analysis for Poisson-field wireless networks"};
  app.name("fbnet");
  app.require_subcommand(1);

  RawValues raw;
  CLI::App* eval = app.add_subcommand("eval", "evaluate the error probability at one point");
  CLI::App* solve = app.add_subcommand("solve", "solve for the rate meeting an error target");
  CLI::App* sweep = app.add_subcommand("sweep", "evaluate over a parameter grid");
  CLI::App* ffr = app.add_subcommand("ffr", "frequency-reuse sweep and optimum");
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "cross-check integral, closed form and Monte Carlo");

  for (CLI::App* sub : {eval, solve, sweep, ffr, validate_cmd}) {
    add_common_options(sub, raw);
    add_mc_options(sub, raw);
  }
  for (CLI::App* sub : {eval, sweep}) add_string_option(sub, raw, "rate", "rate in bits per channel use (list or range)");
  add_string_option(validate_cmd, raw, "rate", "rate grid of the comparison");
  for (CLI::App* sub : {solve, ffr})
    add_string_option(sub, raw, "epsilon", "target error probability in (0, 1)");
  add_string_option(ffr, raw, "eta", "reuse factors (list or range), e.g. 1:8");
  add_string_option(ffr, raw, "min-blocklength", "smallest admissible per-bin blocklength");
  add_string_option(eval, raw, "dump-sir", "write the sampled SIR batch to this file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig cfg;
  if (eval->parsed()) cfg.command = Command::eval;
  else if (solve->parsed()) cfg.command = Command::solve;
  else if (sweep->parsed()) cfg.command = Command::sweep;
  else if (ffr->parsed()) cfg.command = Command::ffr;
  else cfg.command = Command::validate;

  // config file values fill the gaps the command line left open
  if (auto it = raw.find("config"); it != raw.end()) {
    const nlohmann::json file = load_config_file(it->second);
    for (const auto& [key, value] : file.items()) {
      if (key == "config") continue;
      raw.emplace(key, value.is_string() ? value.get<std::string>() : value.dump());
    }
  }

  // command-specific defaults of the comparison grid
  if (cfg.command == Command::validate) {
    raw.emplace("lambda", "0.5e-5,1e-5,2e-5");
    raw.emplace("rate", "0.5,1,2");
  }

  auto get = [&raw](const std::string& key) -> const std::string* {
    auto it = raw.find(key);
    return it == raw.end() ? nullptr : &it->second;
  };

  if (const auto* v = get("lambda")) cfg.lambdas = parse_double_list("--lambda", *v);
  if (const auto* v = get("distance")) cfg.distance = parse_double("--distance", *v);
  if (const auto* v = get("beta")) cfg.beta = parse_double("--beta", *v);
  if (const auto* v = get("inv-power")) cfg.inv_power = parse_double("--inv-power", *v);
  if (const auto* v = get("n")) cfg.blocklengths = parse_int_list("--n", *v);
  if (const auto* v = get("rate")) cfg.rates = parse_double_list("--rate", *v);
  if (const auto* v = get("epsilon")) cfg.epsilon_target = parse_double("--epsilon", *v);
  if (const auto* v = get("samples")) cfg.samples = parse_int("--samples", *v);
  if (const auto* v = get("seed")) cfg.seed = parse_uint("--seed", *v);
  if (const auto* v = get("region-radius")) cfg.region_radius = parse_double("--region-radius", *v);
  if (const auto* v = get("chunk-size")) cfg.chunk_size = parse_int("--chunk-size", *v);
  if (const auto* v = get("min-blocklength")) cfg.min_blocklength = parse_int("--min-blocklength", *v);
  if (const auto* v = get("rate-tol")) cfg.rate_tol = parse_double("--rate-tol", *v);
  if (const auto* v = get("quad-tol")) cfg.quad_tol = parse_double("--quad-tol", *v);
  if (const auto* v = get("out")) cfg.output_path = *v;
  if (const auto* v = get("dump-sir")) cfg.dump_sir_path = *v;
  if (const auto* v = get("eta")) {
    cfg.etas.clear();
    for (std::int64_t e : parse_int_list("--eta", *v)) {
      if (e < 1 || e > 1'000'000) throw UsageError("--eta: reuse factors must be >= 1");
      cfg.etas.push_back(static_cast<int>(e));
    }
  }
  if (const auto* v = get("method")) {
    try {
      cfg.method = method_from_string(*v);
    } catch (const std::invalid_argument& e) {
      throw UsageError("--method: " + std::string(e.what()));
    }
  }
  if (const auto* v = get("model")) {
    if (*v == "iid") cfg.model = DispersionModel::iid_gaussian_codebook;
    else if (*v == "awgn") cfg.model = DispersionModel::awgn;
    else throw UsageError("--model: expected 'iid' or 'awgn', got '" + *v + "'");
  }
  if (const auto* v = get("format")) {
    if (*v == "csv") cfg.format = OutputFormat::csv;
    else if (*v == "jsonl") cfg.format = OutputFormat::jsonl;
    else throw UsageError("--format: expected 'csv' or 'jsonl', got '" + *v + "'");
  }
  cfg.workers = workers_from_env();

  // range validation before anything executes
  if (cfg.lambdas.empty()) throw UsageError("--lambda: list must not be empty");
  for (double l : cfg.lambdas)
    if (!(l >= 0.0) || !std::isfinite(l)) throw UsageError("--lambda: density must be nonnegative");
  if (!(cfg.distance > 0.0)) throw UsageError("--distance must be positive");
  if (!(cfg.beta > 2.0)) throw UsageError("--beta must exceed 2");
  if (!(cfg.inv_power >= 0.0)) throw UsageError("--inv-power must be nonnegative");
  if (cfg.blocklengths.empty()) throw UsageError("--n: list must not be empty");
  for (std::int64_t n : cfg.blocklengths)
    if (n < 1) throw UsageError("--n: blocklength must be at least 1");
  if (cfg.rates.empty()) throw UsageError("--rate: list must not be empty");
  for (double r : cfg.rates)
    if (!(r >= 0.0) || !std::isfinite(r)) throw UsageError("--rate must be nonnegative");
  if (!(cfg.epsilon_target > 0.0 && cfg.epsilon_target < 1.0))
    throw UsageError("--epsilon must lie strictly between 0 and 1");
  if (cfg.samples < 1) throw UsageError("--samples must be at least 1");
  if (!(cfg.region_radius > 0.0)) throw UsageError("--region-radius must be positive");
  if (cfg.chunk_size < 1) throw UsageError("--chunk-size must be at least 1");
  if (cfg.min_blocklength < 2) throw UsageError("--min-blocklength must be at least 2");
  if (!(cfg.rate_tol > 0.0)) throw UsageError("--rate-tol must be positive");
  if (!(cfg.quad_tol > 0.0)) throw UsageError("--quad-tol must be positive");
  if (cfg.etas.empty()) throw UsageError("--eta: list must not be empty");
  for (std::size_t i = 1; i < cfg.etas.size(); ++i)
    if (cfg.etas[i] <= cfg.etas[i - 1])
      throw UsageError("--eta: reuse factors must be ascending and distinct");

  const bool single_point =
      cfg.command == Command::eval || cfg.command == Command::solve || cfg.command == Command::ffr;
  if (single_point) {
    if (cfg.lambdas.size() != 1) throw UsageError("--lambda: this command takes a single value");
    if (cfg.blocklengths.size() != 1) throw UsageError("--n: this command takes a single value");
  }
  if (cfg.command == Command::eval && cfg.rates.size() != 1)
    throw UsageError("--rate: eval takes a single value");
  if (cfg.command == Command::validate && cfg.blocklengths.size() != 1)
    throw UsageError("--n: validate takes a single value");
  if (!cfg.dump_sir_path.empty() && cfg.method != Method::monte_carlo)
    throw UsageError("--dump-sir requires --method monte_carlo");
  if (cfg.method == Method::closed_form && cfg.inv_power != 0.0)
    throw UsageError("--method closed_form requires --inv-power 0 (interference-limited)");

  return cfg;
}

int run(const RunConfig& cfg) {
  try {
    std::vector<ResultRecord> records;
    int exit_code = 0;
    switch (cfg.command) {
      case Command::eval:
        records = run_eval(cfg);
        break;
      case Command::solve: {
        auto [recs, infeasible] = run_solve(cfg);
        records = std::move(recs);
        if (infeasible) exit_code = 3;
        break;
      }
      case Command::sweep:
        records = run_sweep(cfg);
        break;
      case Command::ffr:
        records = run_ffr(cfg);
        break;
      case Command::validate:
        records = run_validate(cfg);
        break;
    }
    write_output(cfg, records);
    return exit_code;
  } catch (const numerical_error& e) {
    std::cerr << "fbnet: " << e.what() << " (best estimate " << format_double(e.best_estimate())
              << ", error bound " << format_double(e.error_bound()) << ")\n";
    return 4;
  } catch (const IoError& e) {
    std::cerr << "fbnet: " << e.what() << '\n';
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "fbnet: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace fbnet::cli
