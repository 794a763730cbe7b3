// Acceptance run: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails. argv[1] is the path of the sparsemod executable.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sparsemod/sparsemod.hpp"

using namespace sparsemod;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// 1. Fibonacci/Lucas addition and product identities.
Outcome identities() {
  constexpr u64 kMax = 200;
  std::vector<BigInt> f(2 * kMax + 2), l(2 * kMax + 2);
  f[0] = 0;
  f[1] = 1;
  l[0] = 2;
  l[1] = 1;
  for (std::size_t i = 2; i < f.size(); ++i) {
    f[i] = f[i - 1] + f[i - 2];
    l[i] = l[i - 1] + l[i - 2];
  }
  u64 checks = 0;
  for (u64 u = 2; u <= kMax; ++u) {
    for (u64 v = 1; v < u; ++v) {
      const BigInt sign = v % 2 ? -1 : 1;
      const bool ok = 2 * f[u + v] == f[u] * l[v] + l[u] * f[v] &&
                      2 * sign * f[u - v] == f[u] * l[v] - l[u] * f[v] &&
                      f[u] * l[v] == f[u + v] + sign * f[u - v] &&
                      l[u] * f[v] == f[u + v] - sign * f[u - v];
      if (!ok) return {false, "integer identity fails at u=" + std::to_string(u) + " v=" + std::to_string(v)};
      ++checks;
    }
  }
  u64 primes_checked = 0;
  for (u64 p : sieve_primes(100)) {
    if (p == 2) continue;
    ++primes_checked;
    std::vector<FibLucas> table(2 * kMax + 1);
    for (u64 n = 0; n <= 2 * kMax; ++n) table[n] = fib_lucas_mod(n, p);
    for (u64 u = 2; u <= kMax; ++u) {
      const auto a = table[u];
      for (u64 v = 1; v < u; ++v) {
        const auto b = table[v];
        const u64 fl = mul_mod(a.fib, b.lucas, p), lf = mul_mod(a.lucas, b.fib, p);
        const u64 sum = table[u + v].fib;
        u64 diff = table[u - v].fib;
        if (v % 2) diff = sub_mod(0, diff, p);
        const bool ok = add_mod(sum, sum, p) == add_mod(fl, lf, p) &&
                        add_mod(diff, diff, p) == sub_mod(fl, lf, p) &&
                        fl == add_mod(sum, diff, p) && lf == sub_mod(sum, diff, p);
        if (!ok) return {false, "modular identity fails at p=" + std::to_string(p)};
        ++checks;
      }
    }
  }
  return {true, std::to_string(checks) + " checks, " + std::to_string(primes_checked) + " odd primes"};
}

// 2. J(N) against the pair-scan oracle.
Outcome collision_oracle() {
  const auto spec = SequenceSpec::fibonacci(1, 40);
  const u64 n = 10'000;
  const auto jt = j_total(spec, n);
  const auto exact = exact_values(spec);
  const u64 pair = j_total_pairscan(exact, n);
  const u64 m = digit_magnitude(exact);
  const double size = static_cast<double>(spec.size());
  const double constant = static_cast<double>(jt.residual) * std::log(static_cast<double>(m)) /
                          (size * size * static_cast<double>(m));
  const bool pass = jt.j_total == pair && jt.main_term + jt.residual == jt.j_total && constant <= 2.0;
  return {pass, "J=" + std::to_string(jt.j_total) + " pairscan=" + std::to_string(pair) +
                    " residual=" + std::to_string(jt.residual) + " M=" + std::to_string(m) +
                    " constant=" + fmt(constant)};
}

// 3. Parseval and additive energy over random multisets.
Outcome parseval_energy() {
  std::mt19937_64 rng(3);
  const auto primes = sieve_primes(2000);
  double worst_parseval = 0.0, worst_residual = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const u64 p = primes[rng() % primes.size()];
    std::map<u64, u64> counts;
    const u64 draws = 1 + rng() % 200;
    for (u64 i = 0; i < draws; ++i) ++counts[rng() % p];
    const auto ms = ResidueMultiset::from_counts(p, counts);
    const auto r = norm_report(ms);
    const double jp = static_cast<double>(collision_stats(ms).j_p);
    worst_parseval = std::max(worst_parseval, std::fabs(r.l2sq - jp) / jp);
    worst_residual = std::max(worst_residual, std::fabs(r.energy_residual));
    if (r.energy != additive_energy_direct(ms)) {
      return {false, "energy mismatch at p=" + std::to_string(p)};
    }
  }
  const bool pass = worst_parseval <= 1e-6 && worst_residual <= 1e-3;
  return {pass, "max Parseval rel err=" + fmt(worst_parseval) +
                    " max energy residual=" + fmt(worst_residual)};
}

// 4. Eightfold sumset of A.B covers F_p when |A||B| > 2p.
Outcome glibichuk() {
  std::mt19937_64 rng(4);
  u64 pairs = 0;
  for (u64 p : sieve_primes(200)) {
    if (p == 2) continue;  // |A||B| <= 4 = 2p, nothing to test
    int done = 0;
    while (done < 50) {
      const u64 na = 1 + rng() % p;
      const u64 nb_min = 2 * p / na + 1;
      if (nb_min > p) continue;
      const u64 nb = nb_min + rng() % (p - nb_min + 1);
      std::vector<u64> pool(p);
      for (u64 i = 0; i < p; ++i) pool[i] = i;
      std::shuffle(pool.begin(), pool.end(), rng);
      const auto a = ResidueSet::of(p, std::vector<u64>(pool.begin(), pool.begin() + na));
      std::shuffle(pool.begin(), pool.end(), rng);
      const auto b = ResidueSet::of(p, std::vector<u64>(pool.begin(), pool.begin() + nb));
      const auto res = glibichuk_check(a, b);
      if (!res.precondition || !res.pass) {
        return {false, "p=" + std::to_string(p) + " witness=" +
                           std::to_string(res.witness.value_or(p))};
      }
      ++done;
      ++pairs;
    }
  }
  return {true, std::to_string(pairs) + " pairs, all covered"};
}

// 5. Ternary count bound, brute force over all quadruples.
Outcome ternary_bound() {
  std::mt19937_64 rng(5);
  const auto primes = sieve_primes(101);
  u64 evaluations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const u64 p = primes[1 + rng() % (primes.size() - 1)];
    auto pick = [&](u64 cap) {
      std::vector<u64> pool(p);
      for (u64 i = 0; i < p; ++i) pool[i] = i;
      std::shuffle(pool.begin(), pool.end(), rng);
      pool.resize(1 + rng() % std::min(cap, p));
      return pool;
    };
    const auto xs = pick(40), ys = pick(40), zs = pick(30);
    std::vector<u64> hist(p, 0);
    for (u64 x : xs) {
      for (u64 y : ys) {
        for (u64 z1 : zs) {
          for (u64 z2 : zs) ++hist[(x * y + z1 + z2) % p];
        }
      }
    }
    const u128 nx = xs.size(), ny = ys.size(), nz = zs.size();
    for (u64 lambda = 0; lambda < p; ++lambda) {
      const u128 pt = static_cast<u128>(p) * hist[lambda];
      const u128 main = nx * ny * nz * nz;
      const u128 diff = pt > main ? pt - main : main - pt;
      if (diff * diff > static_cast<u128>(p) * p * p * nx * ny * nz * nz) {
        return {false, "bound fails at p=" + std::to_string(p) + " lambda=" + std::to_string(lambda)};
      }
      const auto rep = ternary_count(ResidueSet::of(p, xs), ResidueSet::of(p, ys),
                                     ResidueSet::of(p, zs), static_cast<i64>(lambda));
      if (rep.count != hist[lambda]) return {false, "convolution count differs from brute force"};
      ++evaluations;
    }
  }
  return {true, std::to_string(evaluations) + " (configuration, lambda) pairs"};
}

// 6. Short Fibonacci sums cover F_p.
Outcome waring_desk() {
  const u64 n = 5000;
  const u64 max_index = static_cast<u64>(std::ceil(4.0 * std::sqrt(static_cast<double>(n))));
  u64 total = 0, hits = 0;
  std::map<unsigned, u64> histogram;
  for (u64 p : sieve_primes(n)) {
    if (2 * p <= n) continue;
    ++total;
    const auto res = waring_fib_direct(p, max_index, 16);
    if (res.s_min) {
      ++hits;
      ++histogram[*res.s_min];
    }
  }
  const double frac = static_cast<double>(hits) / static_cast<double>(total);
  std::string hist;
  for (const auto& [s, c] : histogram) hist += " s" + std::to_string(s) + ":" + std::to_string(c);
  return {frac >= 0.9, "max_index=" + std::to_string(max_index) + " fraction=" + fmt(frac) +
                           " of " + std::to_string(total) + hist};
}

// 7. Parameter grid and one verified s-term representation.
Outcome waring_eps() {
  for (int i = 1; i <= 49; ++i) {
    const double eps = i / 100.0;
    const auto prm = waring_eps_params(eps);
    const auto expected_k = static_cast<u64>(std::floor(8.0 / eps + 1e-9)) - 1;
    if (prm.k != expected_k || prm.s != 4 * prm.k || !(static_cast<double>(prm.s) < 100.0 / eps)) {
      return {false, "grid fails at eps=" + fmt(eps)};
    }
  }
  const u64 n = 129'140'163;  // 3^17
  const auto rep = waring_eps_verify(97, n, 0.49, 3);
  BigInt sum = 0;
  for (u64 idx : rep.indices) sum += fib_exact(idx);
  const bool pass = rep.indices.size() == rep.params.s && sum % 97 == 3;
  u64 max_idx = 0;
  for (u64 idx : rep.indices) max_idx = std::max(max_idx, idx);
  return {pass, "grid ok; p=97 N=3^17 eps=0.49 s=" + std::to_string(rep.indices.size()) +
                    " max index=" + std::to_string(max_idx) + " <= N^eps=" + fmt(rep.index_limit)};
}

SurveyReport& survey_1e4() {
  static SurveyReport report = [] {
    SurveyConfig cfg;
    cfg.n_max = 10'000;
    cfg.gamma = 0.3;
    return run_survey(cfg);
  }();
  return report;
}

// 8. Norm inequality chains on every survey row.
Outcome norm_chains() {
  const auto& report = survey_1e4();
  u64 checked = 0;
  for (const auto& row : report.rows) {
    if (!row.norms) return {false, "row without norms at p=" + std::to_string(row.record.p)};
    const auto& r = *row.norms;
    const double l2 = r.l2sq, t = static_cast<double>(r.energy), tol = 1e-6;
    const bool ok = r.l1 * r.l1 <= l2 * (1 + tol) && l2 <= std::cbrt(r.l1 * r.l1 * t) * (1 + tol) &&
                    l2 * l2 <= t * (1 + tol);
    if (!ok || row.status == RowStatus::invariant_failure) {
      return {false, "chain fails at p=" + std::to_string(r.p)};
    }
    ++checked;
  }
  return {true, std::to_string(checked) + " norm reports"};
}

// 9. Spread of L1 / floor(N^gamma)^{1/2} over p in (N/2, N].
Outcome ratio_spread() {
  const auto& report = survey_1e4();
  const u64 n = report.config.n_max;
  double lo = 0, hi = 0;
  bool first = true;
  for (const auto& row : report.rows) {
    if (2 * row.record.p <= n || !row.norms) continue;
    const auto& r = *row.norms;
    const double ratio = r.l1 / std::sqrt(static_cast<double>(row.littlewood_terms));
    lo = first ? ratio : std::min(lo, ratio);
    hi = first ? ratio : std::max(hi, ratio);
    first = false;
    const double lb = std::pow(static_cast<double>(r.j_p), 1.5) / std::sqrt(static_cast<double>(r.energy));
    if (r.l1 < lb * (1 - 1e-9)) return {false, "L1 below J^{3/2}/T^{1/2} at p=" + std::to_string(r.p)};
  }
  const double spread = hi / lo;
  return {!first && spread <= 50.0, "min=" + fmt(lo) + " max=" + fmt(hi) + " spread=" + fmt(spread)};
}

// 10. Orders of appearance exceed sqrt(p) for most primes.
Outcome orders() {
  const auto res = orders_survey(100'000, 0.5);
  for (const auto& row : res.rows) {
    if (row.p > 10'000) break;
    if (row.z_p != order_of_appearance_scan(row.p) ||
        (row.t_p && *row.t_p != mult_order_scan(2, row.p))) {
      return {false, "scan disagreement at p=" + std::to_string(row.p)};
    }
  }
  const double frac = *res.z_fraction;
  return {frac > 0.5, "z(p) > sqrt(p) fraction=" + fmt(frac) + " t_p fraction=" + fmt(*res.t_fraction) +
                          " over " + std::to_string(res.rows.size()) + " primes"};
}

// 11. Energy exponent and L1 lower bound for powers of a primitive root.
Outcome power_sums() {
  std::vector<u64> primes;
  for (u64 i = 0; i < 20; ++i) {
    u64 q = 10'000 + i * 4'500;
    while (!is_prime(q)) ++q;
    primes.push_back(q);
  }
  double worst_exp = 0.0, min_ratio = 1e300;
  for (u64 p : primes) {
    const u64 g = least_primitive_root(p);
    const u64 n = floor_power(p, 0.45);
    const auto rep = littlewood_pow(p, g, n);
    worst_exp = std::max(worst_exp, rep.energy_exponent.value_or(0.0));
    min_ratio = std::min(min_ratio, rep.ratio);
    if (!(rep.energy_exponent.value_or(0.0) <= 3.0) || rep.norms.l1 < rep.karatsuba_bound * (1 - 1e-9)) {
      return {false, "fails at p=" + std::to_string(p)};
    }
  }
  return {true, "20 primes, max energy exponent=" + fmt(worst_exp) +
                    " min L1/N^{1/48}=" + fmt(min_ratio)};
}

// 12. Two identical CLI survey runs write identical bytes.
Outcome determinism(const std::string& cli) {
  if (cli.empty()) return {false, "no CLI path given"};
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "sparsemod_acceptance_a.csv";
  const auto b = dir / "sparsemod_acceptance_b.csv";
  for (const auto& path : {a, b}) {
    const std::string cmd = cli + " survey --nmax 2000 --out " + path.string() + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return {false, "survey run failed"};
  }
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string x = slurp(a), y = slurp(b);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  return {!x.empty() && x == y, std::to_string(x.size()) + " bytes, identical=" + (x == y ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"identity suite", identities},
      {"J(N) oracle equivalence", collision_oracle},
      {"Parseval and energy oracles", parseval_energy},
      {"eightfold product-set covering", glibichuk},
      {"ternary count bound", ternary_bound},
      {"short Fibonacci sums cover F_p", waring_desk},
      {"epsilon parameters and representation", waring_eps},
      {"norm inequality chains", norm_chains},
      {"L1 ratio spread", ratio_spread},
      {"orders of appearance", orders},
      {"powers of a primitive root", power_sums},
      {"survey determinism", [&] { return determinism(cli); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const std::chrono::duration<double> secs = std::chrono::steady_clock::now() - start;
    if (!out.pass) ++failures;
    std::cout << (out.pass ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first << ": "
              << out.detail << " (" << fmt(secs.count()) << " s)" << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
