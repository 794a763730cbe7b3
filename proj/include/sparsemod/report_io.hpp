#pragma once

// CSV/JSON emission for survey reports and parsing of sequence descriptions.

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sparsemod/expsums.hpp"
#include "sparsemod/sequence.hpp"
#include "sparsemod/sumsets.hpp"
#include "sparsemod/survey.hpp"

namespace sparsemod {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form; "nan"/"inf" never occur in reports.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <typename T>
std::string csv_field(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return format_double(*v);
  } else {
    return std::to_string(*v);
  }
}

template <typename T>
Json json_optional(const std::optional<T>& v) {
  if (!v) return nullptr;
  return Json(*v);
}

inline constexpr const char* kSurveyCsvHeader =
    "p,t_p,z_p,legendre5,waring_s_min,waring_max_index,l1,l2sq,energy,l1_ratio,vs_size,"
    "vs_distinct,status";

inline Json config_to_json(const SurveyConfig& cfg) {
  Json j;
  j["nmax"] = cfg.n_max;
  j["sequence"] = describe(cfg.effective_sequence());
  j["gamma"] = cfg.gamma;
  j["epsilon"] = cfg.epsilon;
  j["delta_exponent"] = cfg.delta_exponent;
  j["value_set_delta"] = cfg.value_set_delta;
  j["smax"] = cfg.s_max;
  j["assertion_threshold"] = cfg.assertion_threshold;
  j["waring_max_index"] = cfg.waring_max_index();
  j["norm_workers"] = 1;
  return j;
}

inline Json aggregate_to_json(const SurveyAggregate& a) {
  Json j;
  j["rows"] = a.rows;
  j["waring16_fraction"] = json_optional(a.waring16_fraction);
  j["value_set_fraction"] = json_optional(a.value_set_fraction);
  j["z_delta_fraction"] = json_optional(a.z_delta_fraction);
  j["t_sqrt_fraction"] = json_optional(a.t_sqrt_fraction);
  j["chains_fraction"] = json_optional(a.chains_fraction);
  j["l1_ratio_min"] = json_optional(a.l1_ratio_min);
  j["l1_ratio_max"] = json_optional(a.l1_ratio_max);
  j["epsilon_k"] = a.eps_k;
  j["epsilon_s"] = a.eps_s;
  j["headline_checked"] = a.headline_checked;
  j["headline_pass"] = a.headline_pass;
  return j;
}

inline Json norm_to_json(const NormReport& r) {
  Json j;
  j["p"] = r.p;
  j["n"] = r.n;
  j["support"] = r.support;
  j["l1"] = r.l1;
  j["l2sq"] = r.l2sq;
  j["j_p"] = r.j_p;
  j["energy"] = r.energy;
  j["energy_residual"] = r.energy_residual;
  j["karatsuba_lb"] = r.karatsuba_lb;
  j["workers"] = r.workers;
  return j;
}

inline Json row_to_json(const SurveyRow& r) {
  Json j;
  j["p"] = r.record.p;
  j["t_p"] = json_optional(r.record.t_p);
  j["z_p"] = r.record.z_p;
  j["legendre5"] = r.record.legendre5;
  j["waring_s_min"] = json_optional(r.waring_s_min);
  j["waring_max_index"] = r.waring_max_index;
  j["l1"] = r.norms ? Json(r.norms->l1) : Json(nullptr);
  j["l2sq"] = r.norms ? Json(r.norms->l2sq) : Json(nullptr);
  j["energy"] = r.norms ? Json(r.norms->energy) : Json(nullptr);
  j["l1_ratio"] = json_optional(r.l1_ratio);
  j["vs_size"] = r.vs_size;
  j["vs_distinct"] = r.vs_distinct;
  j["status"] = to_string(r.status);
  if (!r.message.empty()) j["message"] = r.message;
  return j;
}

inline void write_survey_json(std::ostream& os, const SurveyReport& report) {
  Json j;
  j["schema"] = kSurveySchema;
  j["config"] = config_to_json(report.config);
  Json rows = Json::array();
  for (const auto& r : report.rows) rows.push_back(row_to_json(r));
  j["rows"] = std::move(rows);
  j["aggregate"] = aggregate_to_json(report.aggregate);
  os << j.dump(2) << '\n';
}

/// Leading "# schema" and "# config" comment lines, the fixed header, one
/// line per prime, then "# aggregate" comment lines.
inline void write_survey_csv(std::ostream& os, const SurveyReport& report) {
  os << "# schema: " << kSurveySchema << '\n';
  os << "# config: " << config_to_json(report.config).dump() << '\n';
  os << kSurveyCsvHeader << '\n';
  for (const auto& r : report.rows) {
    const auto& n = r.norms;
    os << r.record.p << ',' << csv_field(r.record.t_p) << ',' << r.record.z_p << ','
       << r.record.legendre5 << ',' << csv_field(r.waring_s_min) << ',' << r.waring_max_index << ','
       << (n ? format_double(n->l1) : "") << ',' << (n ? format_double(n->l2sq) : "") << ','
       << (n ? std::to_string(n->energy) : "") << ',' << csv_field(r.l1_ratio) << ','
       << r.vs_size << ',' << r.vs_distinct << ',' << to_string(r.status) << '\n';
  }
  const Json aggregate = aggregate_to_json(report.aggregate);
  for (const auto& [key, value] : aggregate.items()) {
    os << "# aggregate " << key << '=' << value.dump() << '\n';
  }
}

inline void write_survey(const std::string& path, const std::string& format,
                         const SurveyReport& report) {
  require(format == "csv" || format == "json", "format must be csv or json");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::invalid_argument("cannot open output file " + path);
  if (format == "csv") {
    write_survey_csv(out, report);
  } else {
    write_survey_json(out, report);
  }
}

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline u64 parse_u64(const std::string& s) {
  u64 v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  require(res.ec == std::errc() && res.ptr == s.data() + s.size(), "not an unsigned integer: '" + s + "'");
  return v;
}

inline BigInt parse_big(const std::string& s) {
  require(!s.empty() && s.find_first_not_of("0123456789") == std::string::npos,
          "not a positive decimal integer: '" + s + "'");
  return BigInt(s);
}

}  // namespace detail

/// Parses "fib:LO:HI", "lucas:LO:HI", "fibeven:LO:HI", "pow:G:LO:HI",
/// "list:V1,V2,..." or, failing those, a path to a file of whitespace- or
/// comma-separated positive integers in increasing order.
inline SequenceSpec parse_sequence_spec(const std::string& text) {
  const auto parts = detail::split(text, ':');
  const std::string& kind = parts.front();
  auto range = [&](std::size_t at) {
    require(parts.size() == at + 2, "expected " + kind + ":LO:HI");
    return std::pair{detail::parse_u64(parts[at]), detail::parse_u64(parts[at + 1])};
  };
  if (kind == "fib") {
    const auto [lo, hi] = range(1);
    return SequenceSpec::fibonacci(lo, hi);
  }
  if (kind == "lucas") {
    const auto [lo, hi] = range(1);
    return SequenceSpec::lucas(lo, hi);
  }
  if (kind == "fibeven") {
    const auto [lo, hi] = range(1);
    return SequenceSpec::fibonacci_even(lo, hi);
  }
  if (kind == "pow") {
    require(parts.size() == 4, "expected pow:G:LO:HI");
    const auto [lo, hi] = range(2);
    return SequenceSpec::power_of(detail::parse_u64(parts[1]), lo, hi);
  }
  std::vector<BigInt> values;
  if (kind == "list") {
    require(parts.size() == 2, "expected list:V1,V2,...");
    for (const auto& v : detail::split(parts[1], ',')) values.push_back(detail::parse_big(v));
    return SequenceSpec::explicit_list(std::move(values));
  }
  std::ifstream in(text);
  if (!in) throw std::invalid_argument("unknown sequence spec or unreadable file: " + text);
  std::string token;
  while (in >> token) {
    for (const auto& v : detail::split(token, ',')) {
      if (!v.empty()) values.push_back(detail::parse_big(v));
    }
  }
  return SequenceSpec::explicit_list(std::move(values));
}

}  // namespace sparsemod
