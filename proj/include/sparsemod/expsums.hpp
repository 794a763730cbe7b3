#pragma once

// L1, L2 and L4 norms of the exponential sum S(x) = sum_r c_r e(x r / p) of a
// residue multiset, evaluated directly over the sparse support.
//
// Parseval gives (1/p) sum_x |S(x)|^2 = sum_r c_r^2 = J_p, and
// (1/p) sum_x |S(x)|^4 is the additive energy T_p (ordered quadruples with
// a + b = c + d). Hoelder with exponents 3/2 and 3 then yields
// J_p <= L1^{2/3} T_p^{1/3}, i.e. L1 >= J_p^{3/2} / T_p^{1/2}; for a
// multiplicity-free multiset of size N this is the discrete form of
// Karatsuba's bound (N^3 / T_p)^{1/2}.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "sparsemod/numtheory.hpp"
#include "sparsemod/sequence.hpp"
#include "sparsemod/valueset.hpp"

namespace sparsemod {

template <typename Value>
struct KahanAccumulator {
  Value sum = Value{0};
  Value compensation = Value{0};

  void operator+=(Value value) {
    const Value y = value - compensation;
    const Value t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }

  operator Value() const { return sum; }
};

inline constexpr u64 kNormPrimeGuard = 1'000'000;
inline constexpr double kChainTolerance = 1e-6;

struct NormReport {
  u64 p = 0;
  u64 n = 0;             // total multiplicity
  u64 support = 0;       // distinct residues
  double l1 = 0.0;       // (1/p) sum |S|
  double l2sq = 0.0;     // (1/p) sum |S|^2, measured
  u64 j_p = 0;           // sum c_r^2, exact
  u64 energy = 0;        // T_p = round((1/p) sum |S|^4)
  double energy_residual = 0.0;  // measured minus rounded
  double karatsuba_lb = 0.0;     // J_p^{3/2} / T_p^{1/2}
  unsigned workers = 1;
};

namespace detail {

struct PartialSums {
  KahanAccumulator<double> abs1, abs2, abs4;
};

/// e(k/p) for k < p.
inline std::vector<std::complex<double>> phase_table(u64 p) {
  std::vector<std::complex<double>> table(p);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(p);
  for (u64 k = 0; k < p; ++k) table[k] = std::polar(1.0, step * static_cast<double>(k));
  return table;
}

inline double abs_sum_at(u64 x, u64 p, const std::vector<std::pair<u64, double>>& support,
                         const std::vector<std::complex<double>>& table) {
  KahanAccumulator<std::complex<double>> s;
  for (const auto& [r, c] : support) s += c * table[x * r % p];
  return std::abs(static_cast<std::complex<double>>(s));
}

inline void check_norm_guard(const ResidueMultiset& ms, u64 guard) {
  require(ms.total > 0 && !ms.counts.empty(), "norm_report: empty multiset");
  if (ms.p > guard) {
    throw GuardExceeded("norm_report: p = " + std::to_string(ms.p) + " exceeds guard " +
                        std::to_string(guard));
  }
}

inline std::vector<std::pair<u64, double>> weighted_support(const ResidueMultiset& ms) {
  std::vector<std::pair<u64, double>> out;
  out.reserve(ms.counts.size());
  for (const auto& [r, c] : ms.counts) out.emplace_back(r, static_cast<double>(c));
  return out;
}

}  // namespace detail

/// Checks every inequality a NormReport must satisfy; throws InvariantViolation.
inline void check_norm_chains(const NormReport& r) {
  const double jp = static_cast<double>(r.j_p);
  const double t = static_cast<double>(r.energy);
  auto fail = [&](const std::string& what) {
    throw InvariantViolation("norm chain violated at p = " + std::to_string(r.p) + ": " + what);
  };
  if (std::fabs(r.l2sq - jp) > kChainTolerance * jp) fail("Parseval L2sq = J_p");
  if (r.l1 * r.l1 > jp * (1.0 + kChainTolerance)) fail("L1^2 <= L2sq");
  if (jp > std::cbrt(r.l1 * r.l1 * t) * (1.0 + kChainTolerance)) fail("L2sq <= L1^{2/3} T^{1/3}");
  if (static_cast<u128>(r.j_p) * r.j_p > static_cast<u128>(r.energy)) fail("L2sq^2 <= T");
  if (r.l1 < r.karatsuba_lb * (1.0 - kChainTolerance)) fail("L1 >= J_p^{3/2}/T^{1/2}");
}

/// Evaluates S(x) for every x in F_p over the multiset's support. The x-range
/// is split into `workers` fixed contiguous blocks whose partial sums are
/// combined pairwise in block order, so results are reproducible for a given
/// worker count.
inline NormReport norm_report(const ResidueMultiset& ms, unsigned workers = 1,
                              u64 guard = kNormPrimeGuard) {
  detail::check_norm_guard(ms, guard);
  const u64 p = ms.p;
  const auto table = detail::phase_table(p);
  const auto support = detail::weighted_support(ms);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(p)));

  std::vector<detail::PartialSums> partial(workers);
  auto run_block = [&](unsigned b) {
    const u64 lo = p * b / workers;
    const u64 hi = p * (b + 1) / workers;
    auto& acc = partial[b];
    for (u64 x = lo; x < hi; ++x) {
      const double a = detail::abs_sum_at(x, p, support, table);
      const double a2 = a * a;
      acc.abs1 += a;
      acc.abs2 += a2;
      acc.abs4 += a2 * a2;
    }
  };
  if (workers == 1) {
    run_block(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned b = 0; b < workers; ++b) pool.emplace_back(run_block, b);
    for (auto& t : pool) t.join();
  }
  // pairwise tree reduction in block order
  std::vector<double> s1, s2, s4;
  for (const auto& ps : partial) {
    s1.push_back(ps.abs1);
    s2.push_back(ps.abs2);
    s4.push_back(ps.abs4);
  }
  auto reduce = [](std::vector<double> v) {
    while (v.size() > 1) {
      std::vector<double> next;
      for (std::size_t i = 0; i < v.size(); i += 2) next.push_back(i + 1 < v.size() ? v[i] + v[i + 1] : v[i]);
      v = std::move(next);
    }
    return v.front();
  };

  NormReport r;
  r.p = p;
  r.n = ms.total;
  r.support = ms.counts.size();
  r.workers = workers;
  const double pd = static_cast<double>(p);
  r.l1 = reduce(s1) / pd;
  r.l2sq = reduce(s2) / pd;
  const double energy_raw = reduce(s4) / pd;
  r.energy = static_cast<u64>(std::llround(energy_raw));
  r.energy_residual = energy_raw - static_cast<double>(r.energy);
  r.j_p = collision_stats(ms).j_p;
  r.karatsuba_lb = std::pow(static_cast<double>(r.j_p), 1.5) / std::sqrt(static_cast<double>(r.energy));
  check_norm_chains(r);
  return r;
}

/// L1 from |S(0)| + 2 sum_{1 <= x <= (p-1)/2} |S(x)|, using |S(p - x)| = |S(x)|.
inline double l1_conjugate_symmetric(const ResidueMultiset& ms, u64 guard = kNormPrimeGuard) {
  detail::check_norm_guard(ms, guard);
  const u64 p = ms.p;
  const auto table = detail::phase_table(p);
  const auto support = detail::weighted_support(ms);
  KahanAccumulator<double> acc;
  acc += detail::abs_sum_at(0, p, support, table);
  for (u64 x = 1; 2 * x < p; ++x) acc += 2.0 * detail::abs_sum_at(x, p, support, table);
  if (p % 2 == 0) acc += detail::abs_sum_at(p / 2, p, support, table);
  return static_cast<double>(acc) / static_cast<double>(p);
}

inline constexpr u64 kEnergyCountGuard = 100'000;

/// Ordered quadruples (a, b, c, d) from the multiset with a + b = c + d (mod p),
/// by tabulating pair sums and summing their squared multiplicities.
inline u64 additive_energy_direct(const ResidueMultiset& ms) {
  if (ms.total > kEnergyCountGuard) {
    throw GuardExceeded("additive_energy_direct: more than 10^5 elements");
  }
  std::unordered_map<u64, u64> pair_sums;
  for (const auto& [a, ca] : ms.counts) {
    for (const auto& [b, cb] : ms.counts) pair_sums[add_mod(a, b, ms.p)] += ca * cb;
  }
  u128 t = 0;
  for (const auto& [w, c] : pair_sums) t += static_cast<u128>(c) * c;
  if (t > static_cast<u128>(~u64{0})) throw GuardExceeded("additive energy exceeds 64 bits");
  return static_cast<u64>(t);
}

struct LittlewoodFibReport {
  NormReport norms;
  u64 terms = 0;            // floor(N^gamma)
  double ratio = 0.0;       // L1 / N^{gamma/2}
  double ratio_terms = 0.0; // L1 / floor(N^gamma)^{1/2}
};

/// floor(N^gamma), corrected for rounding in pow.
inline u64 floor_power(u64 n, double gamma) {
  const double v = std::pow(static_cast<double>(n), gamma);
  auto f = static_cast<u64>(std::floor(v * (1.0 + 1e-12)));
  return f;
}

/// Norms of sum_{n <= N^gamma} e(x F_n / p).
inline LittlewoodFibReport littlewood_fib(u64 p, u64 n_max, double gamma, unsigned workers = 1,
                                          u64 guard = kNormPrimeGuard) {
  require(gamma > 0.0 && gamma < 1.0 / 3.0, "gamma must lie in (0, 1/3)");
  require_prime(p);
  require(p <= n_max, "littlewood_fib requires p <= N");
  LittlewoodFibReport out;
  out.terms = std::max<u64>(1, floor_power(n_max, gamma));
  out.norms = norm_report(residue_multiset(SequenceSpec::fibonacci(1, out.terms), p), workers, guard);
  out.ratio = out.norms.l1 / std::pow(static_cast<double>(n_max), gamma / 2.0);
  out.ratio_terms = out.norms.l1 / std::sqrt(static_cast<double>(out.terms));
  if (out.norms.j_p < out.terms) throw InvariantViolation("J_p below the diagonal count");
  return out;
}

struct LittlewoodPowReport {
  NormReport norms;
  std::optional<double> energy_exponent;  // log T / log N, for N >= 2
  double karatsuba_bound = 0.0;           // (N^3 / T)^{1/2}
  double ratio = 0.0;                     // L1 / N^{1/48}
};

/// Norms of sum_{n <= N} e(x g^n / p) for a primitive root g and N < p^{1/2}.
inline LittlewoodPowReport littlewood_pow(u64 p, u64 g, u64 n, unsigned workers = 1,
                                          u64 guard = kNormPrimeGuard) {
  require_prime(p);
  require(g % p != 0 && is_primitive_root(g, p), "g is not a primitive root mod p");
  require(n >= 1 && static_cast<u128>(n) * n < p, "need 1 <= N < p^{1/2}");
  LittlewoodPowReport out;
  const auto ms = residue_multiset(SequenceSpec::power_of(g, 1, n), p);
  out.norms = norm_report(ms, workers, guard);
  const double nd = static_cast<double>(n);
  const double t = static_cast<double>(out.norms.energy);
  if (n >= 2) out.energy_exponent = std::log(t) / std::log(nd);
  out.karatsuba_bound = std::sqrt(nd * nd * nd / t);
  out.ratio = out.norms.l1 / std::pow(nd, 1.0 / 48.0);
  if (out.norms.l1 < out.karatsuba_bound * (1.0 - kChainTolerance)) {
    throw InvariantViolation("L1 below (N^3/T)^{1/2}");
  }
  if (static_cast<u128>(out.norms.energy) > static_cast<u128>(n) * n * n * ms.max_multiplicity()) {
    throw InvariantViolation("energy above N^3 times max multiplicity");
  }
  return out;
}

}  // namespace sparsemod
