#pragma once

// Residue multisets of sparse sequences and collision counts.
//
// For a finite multiset X of integers and a prime p, J_p counts ordered pairs
// (x, y) in X x X with x = y (mod p), the diagonal included, so that
// J_p = sum_r c_r^2 over residue multiplicities c_r. The global count
// J(N) = sum_{p <= N} J_p splits as pi(N)|X| plus an off-diagonal residual that
// is bounded in terms of the number of decimal digits of max X.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sparsemod/numtheory.hpp"
#include "sparsemod/parallel.hpp"
#include "sparsemod/sequence.hpp"

namespace sparsemod {

/// Multiplicity table of values reduced mod p. Only nonzero counts are stored.
struct ResidueMultiset {
  u64 p = 0;
  std::map<u64, u64> counts;
  u64 total = 0;

  static ResidueMultiset from_residues(u64 p, const std::vector<u64>& values) {
    ResidueMultiset ms;
    ms.p = p;
    for (u64 v : values) {
      require(v < p, "residue out of range");
      ++ms.counts[v];
    }
    ms.total = values.size();
    return ms;
  }

  static ResidueMultiset from_counts(u64 p, std::map<u64, u64> counts) {
    ResidueMultiset ms;
    ms.p = p;
    for (auto it = counts.begin(); it != counts.end();) {
      require(it->first < p, "residue out of range");
      if (it->second == 0) {
        it = counts.erase(it);
      } else {
        ms.total += it->second;
        ++it;
      }
    }
    ms.counts = std::move(counts);
    return ms;
  }

  std::size_t distinct() const { return counts.size(); }

  u64 max_multiplicity() const {
    u64 m = 0;
    for (const auto& [r, c] : counts) m = std::max(m, c);
    return m;
  }
};

inline ResidueMultiset residue_multiset(const SequenceSpec& spec, u64 p) {
  require_prime(p);
  return ResidueMultiset::from_residues(p, residues(spec, p));
}

struct CollisionStats {
  u64 size = 0;
  u64 j_p = 0;
  u64 distinct = 0;
};

inline CollisionStats collision_stats(const ResidueMultiset& ms) {
  CollisionStats st;
  st.size = ms.total;
  st.distinct = ms.counts.size();
  for (const auto& [r, c] : ms.counts) st.j_p += c * c;
  return st;
}

struct JTotal {
  u64 j_total = 0;
  u64 main_term = 0;  // pi(N) |X|
  u64 residual = 0;   // off-diagonal solutions, J(N) - pi(N)|X|
  std::vector<std::pair<u64, u64>> per_prime;  // (p, J_p), sorted by p
};

/// J(N) = sum over primes p <= N of J_p, computed exactly prime by prime.
inline JTotal j_total(const SequenceSpec& spec, u64 n_max, unsigned threads = 1) {
  spec.validate();
  const auto primes = sieve_primes(n_max);
  JTotal out;
  out.per_prime.resize(primes.size());
  parallel_for_index(primes.size(), threads, [&](std::size_t i) {
    out.per_prime[i] = {primes[i], collision_stats(residue_multiset(spec, primes[i])).j_p};
  });
  for (const auto& [p, j] : out.per_prime) out.j_total += j;
  out.main_term = static_cast<u64>(primes.size()) * spec.size();
  out.residual = out.j_total - out.main_term;
  return out;
}

/// Independent route to J(N) from exact integers: the diagonal contributes
/// pi(N)|X| and each unordered pair {x, y} contributes 2 for every prime
/// p <= N dividing |x - y| (every prime divides 0).
inline u64 j_total_pairscan(const std::vector<BigInt>& values, u64 n_max) {
  const auto primes = sieve_primes(n_max);
  const u64 pi = primes.size();
  u64 total = pi * values.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      BigInt diff = values[i] - values[j];
      if (diff < 0) diff = -diff;
      if (diff == 0) {
        total += 2 * pi;
        continue;
      }
      for (u64 p : primes) {
        if (diff % p == 0) total += 2;
      }
    }
  }
  return total;
}

/// Least M with max(values) <= 10^M.
inline u64 digit_magnitude(const std::vector<BigInt>& values) {
  require(!values.empty(), "digit_magnitude needs a non-empty list");
  const BigInt& mx = *std::max_element(values.begin(), values.end());
  require(mx >= 1, "values must be positive");
  const u64 d = decimal_digits(mx);
  // mx has d digits, so 10^(d-1) <= mx < 10^d
  if (mx == boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(d - 1))) return d - 1;
  return d;
}

struct ValueSetRow {
  u64 p = 0;
  u64 size = 0;
  u64 distinct = 0;
  double deviation = 0.0;  // (size - distinct) / size
};

struct ValueSetSurvey {
  std::vector<ValueSetRow> rows;
  double delta = 1.0;
  u64 within_tolerance = 0;          // rows with deviation <= 1/delta
  std::optional<double> fraction;    // within_tolerance / rows, empty when no primes
  std::optional<u64> magnitude;      // M, when exact values are available
  std::optional<bool> sparse_condition;  // M |X| delta^2 <= pi(N) log M
};

inline ValueSetRow value_set_row(const SequenceSpec& spec, u64 p) {
  const auto st = collision_stats(residue_multiset(spec, p));
  return {p, st.size, st.distinct,
          static_cast<double>(st.size - st.distinct) / static_cast<double>(st.size)};
}

/// Per-prime value-set sizes for p <= N and the fraction of primes whose
/// relative deficit (|X| - #X mod p)/|X| is at most 1/delta.
inline ValueSetSurvey value_set_survey(const SequenceSpec& spec, u64 n_max, double delta,
                                       unsigned threads = 1) {
  require(delta >= 1.0, "delta must be at least 1");
  spec.validate();
  const auto primes = sieve_primes(n_max);
  ValueSetSurvey out;
  out.delta = delta;
  out.rows.resize(primes.size());
  parallel_for_index(primes.size(), threads,
                     [&](std::size_t i) { out.rows[i] = value_set_row(spec, primes[i]); });
  for (const auto& row : out.rows) {
    if (row.deviation <= 1.0 / delta) ++out.within_tolerance;
  }
  if (!out.rows.empty()) {
    out.fraction = static_cast<double>(out.within_tolerance) / static_cast<double>(out.rows.size());
  }
  try {
    out.magnitude = digit_magnitude(exact_values(spec));
  } catch (const GuardExceeded&) {
  }
  if (out.magnitude && *out.magnitude >= 1) {
    const double m = static_cast<double>(*out.magnitude);
    out.sparse_condition = m * static_cast<double>(spec.size()) * delta * delta <=
                           static_cast<double>(primes.size()) * std::log(m);
  }
  return out;
}

/// True iff F_{2n} mod p, lo < n <= hi, are pairwise distinct.
inline bool fib_even_distinctness(u64 p, u64 lo, u64 hi) {
  require(lo >= 1 && lo < hi, "need 1 <= lo < hi");
  require_prime(p);
  auto vals = residues(SequenceSpec::fibonacci_even(lo + 1, hi), p);
  std::sort(vals.begin(), vals.end());
  return std::adjacent_find(vals.begin(), vals.end()) == vals.end();
}

}  // namespace sparsemod
