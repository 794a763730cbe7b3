// Command-line front end: survey, waring, littlewood, orders, jcount.
//
// Exit codes: 0 success, 1 invalid configuration, 2 guard exceeded,
// 3 assertion or invariant failure (any report is still written).

#include <chrono>
#include <cmath>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sparsemod/sparsemod.hpp"

namespace {

using namespace sparsemod;

enum ExitCode : int { kOk = 0, kInvalid = 1, kGuard = 2, kFinding = 3 };

int cmd_survey(const SurveyConfig& cfg, const std::string& out, const std::string& format) {
  const auto start = std::chrono::steady_clock::now();
  const auto report = run_survey(cfg);
  write_survey(out, format, report);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  const auto& agg = report.aggregate;
  std::cout << "survey: " << agg.rows << " primes <= " << cfg.n_max << " written to " << out
            << " (" << elapsed.count() << " s)\n"
            << aggregate_to_json(agg).dump(2) << '\n';
  if (report.has_invariant_failure()) {
    std::cerr << "invariant failure recorded in report rows\n";
    return kFinding;
  }
  if (agg.headline_checked && !agg.headline_pass) {
    std::cerr << "headline fraction below assertion threshold " << cfg.assertion_threshold << '\n';
    return kFinding;
  }
  return kOk;
}

int cmd_waring(u64 p, u64 n_max, i64 lambda, const std::string& mode, double epsilon,
               unsigned s_max, double delta_exp, std::optional<double> delta,
               std::optional<u64> max_index) {
  if (n_max == 0) n_max = p;
  SurveyConfig shape;
  shape.n_max = n_max;
  shape.delta_exponent = delta_exp;
  Json j;
  j["p"] = p;
  j["nmax"] = n_max;
  j["mode"] = mode;
  if (mode == "direct") {
    const u64 idx = max_index.value_or(shape.waring_max_index());
    const auto res = waring_fib_direct(p, idx, s_max);
    j["max_index"] = idx;
    j["s_min"] = json_optional(res.s_min);
    j["coverage_sizes"] = res.coverage_sizes;
  } else if (mode == "constructive") {
    const double d = delta.value_or(shape.expansion_factor());
    const auto rep = waring_constructive(p, n_max, d, lambda);
    j["delta"] = d;
    j["lambda"] = rep.lambda;
    j["n_range"] = {rep.n_lo, rep.n_hi};
    j["m_max"] = rep.m_hi;
    j["f_values"] = rep.f_values;
    j["l_values"] = rep.l_values;
    Json pairs = Json::array();
    for (const auto& [n, m] : rep.pairs) pairs.push_back({n, m});
    j["pairs"] = pairs;
    j["indices"] = rep.indices;
    j["verified"] = true;
  } else if (mode == "epsilon") {
    const auto rep = waring_eps_verify(p, n_max, epsilon, lambda);
    j["epsilon"] = epsilon;
    j["k"] = rep.params.k;
    j["s"] = rep.params.s;
    j["lambda"] = rep.lambda;
    j["m"] = rep.m;
    j["n"] = rep.n;
    j["l"] = rep.l;
    j["l_prime"] = rep.l_prime;
    j["set_sizes"] = {rep.x_values, rep.y_values, rep.z_values};
    j["indices"] = rep.indices;
    j["index_limit"] = rep.index_limit;
    j["verified"] = true;
  } else {
    throw std::invalid_argument("mode must be direct, constructive or epsilon");
  }
  std::cout << j.dump(2) << '\n';
  return kOk;
}

int cmd_littlewood(u64 p, u64 n_max, std::optional<double> gamma, std::optional<u64> base) {
  require(gamma.has_value() != base.has_value(), "give exactly one of --gamma or --base");
  Json j;
  if (gamma) {
    const auto rep = littlewood_fib(p, n_max, *gamma);
    j["family"] = "fibonacci";
    j["gamma"] = *gamma;
    j["terms"] = rep.terms;
    j["norms"] = norm_to_json(rep.norms);
    j["ratio"] = rep.ratio;
    j["ratio_terms"] = rep.ratio_terms;
  } else {
    const auto rep = littlewood_pow(p, *base, n_max);
    j["family"] = "power";
    j["base"] = *base;
    j["terms"] = n_max;
    j["norms"] = norm_to_json(rep.norms);
    j["energy_exponent"] = json_optional(rep.energy_exponent);
    j["karatsuba_bound"] = rep.karatsuba_bound;
    j["ratio"] = rep.ratio;
  }
  std::cout << j.dump(2) << '\n';
  return kOk;
}

int cmd_orders(u64 n_max, double threshold, unsigned threads, bool rows) {
  const auto res = orders_survey(n_max, threshold, threads);
  Json j;
  j["nmax"] = n_max;
  j["threshold"] = threshold;
  j["primes"] = res.rows.size();
  j["z_fraction"] = json_optional(res.z_fraction);
  j["t_fraction"] = json_optional(res.t_fraction);
  if (rows) {
    Json arr = Json::array();
    for (const auto& r : res.rows) arr.push_back({{"p", r.p}, {"z_p", r.z_p}, {"t_p", json_optional(r.t_p)}});
    j["rows"] = arr;
  }
  std::cout << j.dump(2) << '\n';
  return kOk;
}

int cmd_jcount(const std::string& values, u64 n_max, bool oracle, unsigned threads) {
  const auto spec = parse_sequence_spec(values);
  const auto jt = j_total(spec, n_max, threads);
  Json j;
  j["sequence"] = describe(spec);
  j["nmax"] = n_max;
  j["size"] = spec.size();
  j["j_total"] = jt.j_total;
  j["main_term"] = jt.main_term;
  j["residual"] = jt.residual;
  int code = kOk;
  if (oracle) {
    const auto exact = exact_values(spec);
    const u64 pair = j_total_pairscan(exact, n_max);
    const u64 m = digit_magnitude(exact);
    j["pairscan"] = pair;
    j["agree"] = pair == jt.j_total;
    j["magnitude"] = m;
    if (m >= 2) {
      const double size = static_cast<double>(spec.size());
      const double scale = size * size * static_cast<double>(m) / std::log(static_cast<double>(m));
      j["residual_constant"] = static_cast<double>(jt.residual) / scale;
    }
    if (pair != jt.j_total) code = kFinding;
  }
  std::cout << j.dump(2) << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse sequences modulo primes: surveys and verifiers"};
  app.require_subcommand(1);

  SurveyConfig cfg;
  std::string out, format = "csv", sequence;
  auto* survey = app.add_subcommand("survey", "Sweep all primes p <= N and write a report");
  survey->add_option("--nmax", cfg.n_max, "Prime bound N")->required();
  survey->add_option("--gamma", cfg.gamma, "Littlewood exponent in (0, 1/3)");
  survey->add_option("--epsilon", cfg.epsilon, "Waring exponent in (0, 1/2]");
  survey->add_option("--delta-exp", cfg.delta_exponent, "rho in delta(N) = exp((log N)^rho)");
  survey->add_option("--Delta", cfg.value_set_delta, "Value-set tolerance parameter");
  survey->add_option("--smax", cfg.s_max, "Sumset fold cap");
  survey->add_option("--sequence", sequence, "Sequence for the value-set columns");
  survey->add_option("--threads", cfg.threads, "Worker threads");
  survey->add_option("--out", out, "Output path")->required();
  survey->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  u64 w_p = 0, w_nmax = 0;
  i64 w_lambda = 0;
  std::string w_mode = "direct";
  double w_eps = 0.49, w_delta_exp = 0.4;
  unsigned w_smax = 16;
  std::optional<double> w_delta;
  std::optional<u64> w_max_index;
  auto* waring = app.add_subcommand("waring", "Represent residues as sums of Fibonacci numbers");
  waring->add_option("--p", w_p, "Prime modulus")->required();
  waring->add_option("--nmax", w_nmax, "Bound N (defaults to p)");
  waring->add_option("--lambda", w_lambda, "Target residue");
  waring->add_option("--mode", w_mode, "direct, constructive or epsilon")
      ->check(CLI::IsMember({"direct", "constructive", "epsilon"}));
  waring->add_option("--epsilon", w_eps, "Exponent for epsilon mode");
  waring->add_option("--smax", w_smax, "Fold cap for direct mode");
  waring->add_option("--delta-exp", w_delta_exp, "rho in delta(N) = exp((log N)^rho)");
  waring->add_option("--delta", w_delta, "Explicit expansion factor delta");
  waring->add_option("--max-index", w_max_index, "Explicit index bound for direct mode");

  u64 l_p = 0, l_nmax = 0;
  std::optional<double> l_gamma;
  std::optional<u64> l_base;
  auto* littlewood = app.add_subcommand("littlewood", "L1 norms of exponential sums");
  littlewood->add_option("--p", l_p, "Prime modulus")->required();
  littlewood->add_option("--nmax", l_nmax, "Bound N")->required();
  auto* gamma_opt = littlewood->add_option("--gamma", l_gamma, "Fibonacci sums up to N^gamma");
  auto* base_opt = littlewood->add_option("--base", l_base, "Primitive root g for sums of g^n");
  gamma_opt->excludes(base_opt);

  u64 o_nmax = 0;
  double o_threshold = 0.5;
  unsigned o_threads = 1;
  bool o_rows = false;
  auto* orders = app.add_subcommand("orders", "Orders of 2 and orders of appearance");
  orders->add_option("--nmax", o_nmax, "Prime bound N")->required();
  orders->add_option("--threshold", o_threshold, "Exponent theta in z(p), t_p > p^theta");
  orders->add_option("--threads", o_threads, "Worker threads");
  orders->add_flag("--rows", o_rows, "Include per-prime rows");

  std::string j_values;
  u64 j_nmax = 0;
  bool j_oracle = false;
  unsigned j_threads = 1;
  auto* jcount = app.add_subcommand("jcount", "Collision count J(N) summed over primes");
  jcount->add_option("--values", j_values, "Sequence spec or file of integers")->required();
  jcount->add_option("--nmax", j_nmax, "Prime bound N")->required();
  jcount->add_flag("--oracle", j_oracle, "Cross-check with the pair-scan oracle");
  jcount->add_option("--threads", j_threads, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*survey) {
      if (!sequence.empty()) cfg.sequence = parse_sequence_spec(sequence);
      return cmd_survey(cfg, out, format);
    }
    if (*waring) {
      return cmd_waring(w_p, w_nmax, w_lambda, w_mode, w_eps, w_smax, w_delta_exp, w_delta,
                        w_max_index);
    }
    if (*littlewood) return cmd_littlewood(l_p, l_nmax, l_gamma, l_base);
    if (*orders) return cmd_orders(o_nmax, o_threshold, o_threads, o_rows);
    if (*jcount) return cmd_jcount(j_values, j_nmax, j_oracle, j_threads);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kInvalid;
  } catch (const PreconditionFailed& e) {
    std::cerr << e.what() << '\n';
    return kInvalid;
  } catch (const GuardExceeded& e) {
    std::cerr << "guard exceeded: " << e.what() << '\n';
    return kGuard;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant failure: " << e.what() << '\n';
    return kFinding;
  } catch (const SearchFailure& e) {
    std::cerr << "search failure: " << e.what() << '\n';
    return kFinding;
  }
  return kOk;
}
