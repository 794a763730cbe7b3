#pragma once

// Sweeps over all primes p <= N. Every "for almost all primes" statement is
// measured as the fraction of rows whose indicator holds.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sparsemod/expsums.hpp"
#include "sparsemod/numtheory.hpp"
#include "sparsemod/parallel.hpp"
#include "sparsemod/sequence.hpp"
#include "sparsemod/sumsets.hpp"
#include "sparsemod/valueset.hpp"

namespace sparsemod {

inline constexpr const char* kSurveySchema = "sparsemod-survey/1";

struct SurveyConfig {
  u64 n_max = 100;
  std::optional<SequenceSpec> sequence;  // default: Fibonacci 1..floor(sqrt N)
  double gamma = 0.3;
  double epsilon = 0.49;
  double delta_exponent = 0.4;  // delta(N) = exp((log N)^delta_exponent)
  double value_set_delta = 10.0;
  unsigned s_max = 16;
  unsigned threads = 1;
  double assertion_threshold = 0.9;  // headline fractions, checked for N >= 10^4

  void validate() const {
    require(n_max >= 1, "nmax must be at least 1");
    require(n_max <= 100'000'000, "nmax exceeds the survey guard of 10^8");
    require(gamma > 0.0 && gamma < 1.0 / 3.0, "gamma must lie in (0, 1/3)");
    require(epsilon > 0.0 && epsilon <= 0.5, "epsilon must lie in (0, 1/2]");
    require(delta_exponent > 0.0 && delta_exponent < 1.0, "delta exponent must lie in (0, 1)");
    require(value_set_delta >= 1.0, "value-set Delta must be at least 1");
    require(s_max >= 1, "smax must be at least 1");
    require(threads >= 1, "threads must be at least 1");
    require(assertion_threshold >= 0.0 && assertion_threshold <= 1.0,
            "assertion threshold must lie in [0, 1]");
    if (sequence) sequence->validate();
  }

  SequenceSpec effective_sequence() const {
    if (sequence) return *sequence;
    const auto root = static_cast<u64>(std::sqrt(static_cast<double>(n_max)));
    return SequenceSpec::fibonacci(1, std::max<u64>(1, root));
  }

  /// delta(N) = exp((log N)^rho)
  double expansion_factor() const {
    return std::exp(std::pow(std::log(static_cast<double>(n_max)), delta_exponent));
  }

  /// ceil(delta(N) sqrt(N))
  u64 waring_max_index() const {
    return static_cast<u64>(std::ceil(expansion_factor() * std::sqrt(static_cast<double>(n_max))));
  }
};

enum class RowStatus { ok, t_undefined, guard_exceeded, invariant_failure };

inline const char* to_string(RowStatus s) {
  switch (s) {
    case RowStatus::ok: return "ok";
    case RowStatus::t_undefined: return "t_undefined";
    case RowStatus::guard_exceeded: return "guard_exceeded";
    case RowStatus::invariant_failure: return "invariant_failure";
  }
  return "unknown";
}

struct SurveyRow {
  PrimeRecord record;
  std::optional<unsigned> waring_s_min;
  u64 waring_max_index = 0;
  std::optional<NormReport> norms;
  std::optional<double> l1_ratio;  // L1 / N^{gamma/2}
  u64 littlewood_terms = 0;        // floor(N^gamma)
  u64 vs_size = 0;
  u64 vs_distinct = 0;
  RowStatus status = RowStatus::ok;
  std::string message;
};

struct SurveyAggregate {
  u64 rows = 0;
  std::optional<double> waring16_fraction;     // s_min <= 16
  std::optional<double> value_set_fraction;    // (size - distinct)/size <= 1/Delta
  std::optional<double> z_delta_fraction;      // z(p) >= delta(N) sqrt(N)
  std::optional<double> t_sqrt_fraction;       // t_p >= sqrt(N), p = 2 excluded
  std::optional<double> chains_fraction;       // rows without invariant failure
  std::optional<double> l1_ratio_min;
  std::optional<double> l1_ratio_max;
  u64 eps_k = 0;
  u64 eps_s = 0;
  bool headline_checked = false;  // N >= 10^4
  bool headline_pass = true;
};

struct SurveyReport {
  SurveyConfig config;
  std::vector<SurveyRow> rows;  // sorted by p
  SurveyAggregate aggregate;

  bool has_invariant_failure() const {
    return std::any_of(rows.begin(), rows.end(), [](const SurveyRow& r) {
      return r.status == RowStatus::invariant_failure;
    });
  }
};

inline SurveyRow survey_row(const SurveyConfig& cfg, const SequenceSpec& seq, u64 p) {
  SurveyRow row;
  row.waring_max_index = cfg.waring_max_index();
  auto note = [&](RowStatus s, const std::string& msg) {
    if (row.status == RowStatus::ok || row.status == RowStatus::t_undefined) row.status = s;
    if (!row.message.empty()) row.message += "; ";
    row.message += msg;
  };
  try {
    row.record = make_prime_record(p);
    if (!row.record.t_p) row.status = RowStatus::t_undefined;
    const auto cover = waring_fib_direct(p, row.waring_max_index, cfg.s_max);
    row.waring_s_min = cover.s_min;
  } catch (const GuardExceeded& e) {
    note(RowStatus::guard_exceeded, e.what());
  }
  try {
    const auto lw = littlewood_fib(p, cfg.n_max, cfg.gamma);
    row.norms = lw.norms;
    row.l1_ratio = lw.ratio;
    row.littlewood_terms = lw.terms;
  } catch (const GuardExceeded& e) {
    note(RowStatus::guard_exceeded, e.what());
  } catch (const InvariantViolation& e) {
    note(RowStatus::invariant_failure, e.what());
  }
  const auto vs = value_set_row(seq, p);
  row.vs_size = vs.size;
  row.vs_distinct = vs.distinct;
  return row;
}

inline std::optional<double> fraction_of(u64 hits, u64 total) {
  if (total == 0) return std::nullopt;
  return static_cast<double>(hits) / static_cast<double>(total);
}

inline SurveyAggregate aggregate_rows(const SurveyConfig& cfg, const std::vector<SurveyRow>& rows) {
  SurveyAggregate agg;
  agg.rows = rows.size();
  const double root_n = std::sqrt(static_cast<double>(cfg.n_max));
  const double z_bound = cfg.expansion_factor() * root_n;
  u64 waring = 0, vs = 0, z = 0, t = 0, t_total = 0, chains = 0;
  for (const auto& r : rows) {
    if (r.waring_s_min && *r.waring_s_min <= 16) ++waring;
    if (static_cast<double>(r.vs_size - r.vs_distinct) / static_cast<double>(r.vs_size) <=
        1.0 / cfg.value_set_delta) {
      ++vs;
    }
    if (static_cast<double>(r.record.z_p) >= z_bound) ++z;
    if (r.record.t_p) {
      ++t_total;
      if (static_cast<double>(*r.record.t_p) >= root_n) ++t;
    }
    if (r.status != RowStatus::invariant_failure) ++chains;
    if (r.l1_ratio) {
      agg.l1_ratio_min = std::min(agg.l1_ratio_min.value_or(*r.l1_ratio), *r.l1_ratio);
      agg.l1_ratio_max = std::max(agg.l1_ratio_max.value_or(*r.l1_ratio), *r.l1_ratio);
    }
  }
  agg.waring16_fraction = fraction_of(waring, rows.size());
  agg.value_set_fraction = fraction_of(vs, rows.size());
  agg.z_delta_fraction = fraction_of(z, rows.size());
  agg.t_sqrt_fraction = fraction_of(t, t_total);
  agg.chains_fraction = fraction_of(chains, rows.size());
  const auto eps = waring_eps_params(cfg.epsilon);
  agg.eps_k = eps.k;
  agg.eps_s = eps.s;
  agg.headline_checked = cfg.n_max >= 10'000;
  if (agg.headline_checked) {
    agg.headline_pass = agg.waring16_fraction.value_or(0.0) >= cfg.assertion_threshold &&
                        agg.value_set_fraction.value_or(0.0) >= cfg.assertion_threshold &&
                        agg.chains_fraction.value_or(0.0) >= 1.0;
  }
  return agg;
}

/// One row per prime p <= N, computed in parallel and collected in p order.
/// Every row is computed single-threaded, so the report does not depend on
/// the number of survey threads.
inline SurveyReport run_survey(const SurveyConfig& cfg) {
  cfg.validate();
  SurveyReport report;
  report.config = cfg;
  const auto seq = cfg.effective_sequence();
  const auto primes = sieve_primes(cfg.n_max);
  report.rows.resize(primes.size());
  parallel_for_index(primes.size(), cfg.threads,
                     [&](std::size_t i) { report.rows[i] = survey_row(cfg, seq, primes[i]); });
  report.aggregate = aggregate_rows(cfg, report.rows);
  return report;
}

struct OrdersRow {
  u64 p = 0;
  u64 z_p = 0;
  std::optional<u64> t_p;
};

struct OrdersSurvey {
  u64 n_max = 0;
  double threshold_exponent = 0.5;
  std::vector<OrdersRow> rows;
  std::optional<double> z_fraction;  // z(p) > p^theta over all primes
  std::optional<double> t_fraction;  // t_p > p^theta over odd primes
};

inline OrdersSurvey orders_survey(u64 n_max, double threshold_exponent, unsigned threads = 1) {
  require(threshold_exponent > 0.0 && threshold_exponent < 1.0,
          "threshold exponent must lie in (0, 1)");
  OrdersSurvey out;
  out.n_max = n_max;
  out.threshold_exponent = threshold_exponent;
  const auto primes = sieve_primes(n_max);
  out.rows.resize(primes.size());
  parallel_for_index(primes.size(), threads, [&](std::size_t i) {
    const u64 p = primes[i];
    out.rows[i].p = p;
    out.rows[i].z_p = order_of_appearance(p);
    if (p != 2) out.rows[i].t_p = mult_order(2, p);
  });
  u64 z_hits = 0, t_hits = 0, t_total = 0;
  for (const auto& r : out.rows) {
    const double bound = std::pow(static_cast<double>(r.p), threshold_exponent);
    if (static_cast<double>(r.z_p) > bound) ++z_hits;
    if (r.t_p) {
      ++t_total;
      if (static_cast<double>(*r.t_p) > bound) ++t_hits;
    }
  }
  out.z_fraction = fraction_of(z_hits, out.rows.size());
  out.t_fraction = fraction_of(t_hits, t_total);
  return out;
}

}  // namespace sparsemod
