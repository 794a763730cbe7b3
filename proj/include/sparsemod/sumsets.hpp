#pragma once

// Sumsets and product sets in F_p, and Waring-type representations of every
// residue class by short sums of Fibonacci numbers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sparsemod/numtheory.hpp"
#include "sparsemod/residue_set.hpp"
#include "sparsemod/sequence.hpp"

namespace sparsemod {

/// Largest prime accepted by operations that allocate length-p tables.
inline constexpr u64 kSumsetPrimeGuard = 100'000'000;

inline void require_sumset_prime(u64 p) {
  require_prime(p);
  if (p > kSumsetPrimeGuard) throw GuardExceeded("prime exceeds sumset guard of 10^8");
}

inline ResidueSet product_set(const ResidueSet& a, const ResidueSet& b) {
  require(a.modulus() == b.modulus(), "product_set: sets over different moduli");
  const u64 p = a.modulus();
  ResidueSet out(p);
  const auto bs = b.elements();
  for (u64 x : a.elements()) {
    for (u64 y : bs) out.insert(mul_mod(x, y, p));
  }
  return out;
}

/// A + B, computed as a union of rotations over the smaller operand.
inline ResidueSet sumset(const ResidueSet& a, const ResidueSet& b) {
  require(a.modulus() == b.modulus(), "sumset: sets over different moduli");
  const bool a_smaller = a.size() <= b.size();
  const ResidueSet& shifts = a_smaller ? a : b;
  const ResidueSet& base = a_smaller ? b : a;
  ResidueSet out(a.modulus());
  for (u64 s : shifts.elements()) out.or_rotated(base, s);
  return out;
}

struct CoverResult {
  std::optional<unsigned> s_min;     // least k with kV = F_p, if reached
  std::vector<u64> coverage_sizes;   // |kV| for k = 1, 2, ... up to the stopping point

  bool covered() const { return s_min.has_value(); }
};

/// Sizes of kV for k = 1..k_max, stopping early once kV = F_p.
inline CoverResult sumset_growth(const ResidueSet& v, unsigned k_max) {
  require(!v.empty(), "sumset of an empty set");
  require(k_max >= 1, "fold count must be at least 1");
  CoverResult res;
  ResidueSet cur = v;
  for (unsigned k = 1;; ++k) {
    res.coverage_sizes.push_back(cur.size());
    if (cur.is_full()) {
      res.s_min = k;
      break;
    }
    if (k == k_max) break;
    cur = sumset(cur, v);
  }
  return res;
}

/// The k-fold sumset kV = {v_1 + ... + v_k}.
inline ResidueSet k_fold_sumset(const ResidueSet& v, unsigned k) {
  require(!v.empty(), "sumset of an empty set");
  require(k >= 1, "fold count must be at least 1");
  ResidueSet cur = v;
  for (unsigned i = 1; i < k && !cur.is_full(); ++i) cur = sumset(cur, v);
  return cur;
}

struct GlibichukResult {
  bool precondition = false;  // |A||B| > 2p
  bool pass = false;          // 8(A.B) = F_p
  u64 product_size = 0;
  std::optional<u64> witness;  // a residue missing from 8(A.B) on failure
};

/// Checks 8(A.B) = F_p. The covering is guaranteed when |A||B| > 2p; callers
/// may probe below that threshold.
inline GlibichukResult glibichuk_check(const ResidueSet& a, const ResidueSet& b) {
  require(a.modulus() == b.modulus(), "glibichuk_check: sets over different moduli");
  const u64 p = a.modulus();
  GlibichukResult res;
  res.precondition = static_cast<u128>(a.size()) * b.size() > static_cast<u128>(2) * p;
  const ResidueSet prod = product_set(a, b);
  res.product_size = prod.size();
  if (prod.empty()) {
    res.witness = 0;
    return res;
  }
  const ResidueSet cover = k_fold_sumset(prod, 8);
  res.pass = cover.is_full();
  if (!res.pass) res.witness = cover.first_missing();
  return res;
}

/// {F_n mod p : 1 <= n <= max_index}
inline ResidueSet fibonacci_value_set(u64 p, u64 max_index) {
  require(max_index >= 1, "max_index must be at least 1");
  return ResidueSet::of(p, residues(SequenceSpec::fibonacci(1, max_index), p));
}

/// Least s with s{F_n mod p : n <= max_index} = F_p, searched up to s_max.
inline CoverResult waring_fib_direct(u64 p, u64 max_index, unsigned s_max) {
  require_sumset_prime(p);
  require(s_max >= 1, "s_max must be at least 1");
  return sumset_growth(fibonacci_value_set(p, max_index), s_max);
}

namespace detail {

/// Layers {0}, V, 2V, ..., kV used to recover one decomposition of a residue.
class SumsetLadder {
 public:
  SumsetLadder(const ResidueSet& v, unsigned k) : values_(v.elements()) {
    layers_.reserve(k + 1);
    ResidueSet zero(v.modulus());
    zero.insert(0);
    layers_.push_back(std::move(zero));
    for (unsigned j = 1; j <= k; ++j) layers_.push_back(sumset(layers_.back(), v));
  }

  const ResidueSet& top() const { return layers_.back(); }

  /// Summands v_1 <= ... in ascending scan order with sum = target, or empty
  /// when target is not in kV.
  std::optional<std::vector<u64>> decompose(u64 target) const {
    const u64 p = top().modulus();
    if (!top().contains(target)) return std::nullopt;
    std::vector<u64> parts;
    for (std::size_t j = layers_.size() - 1; j >= 1; --j) {
      bool found = false;
      for (u64 q : values_) {
        const u64 rest = sub_mod(target, q, p);
        if (layers_[j - 1].contains(rest)) {
          parts.push_back(q);
          target = rest;
          found = true;
          break;
        }
      }
      if (!found) return std::nullopt;
    }
    return parts;
  }

 private:
  std::vector<u64> values_;
  std::vector<ResidueSet> layers_;
};

/// Smallest index with each residue, over a list of (index, residue) pairs.
inline std::unordered_map<u64, u64> first_index_by_residue(u64 first_index,
                                                           const std::vector<u64>& res) {
  std::unordered_map<u64, u64> out;
  for (std::size_t i = 0; i < res.size(); ++i) out.try_emplace(res[i], first_index + i);
  return out;
}

inline u64 sum_fib_mod(const std::vector<u64>& indices, u64 p) {
  u64 s = 0;
  for (u64 n : indices) s = add_mod(s, fib_mod(n, p), p);
  return s;
}

/// Largest b >= 0 with b^e <= x.
inline u64 integer_root(const BigInt& x, unsigned e) {
  u64 lo = 0;
  u64 hi = u64{1} << 62;
  while (lo < hi) {
    const u64 mid = lo + (hi - lo + 1) / 2;
    if (boost::multiprecision::pow(BigInt(mid), e) <= x) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

}  // namespace detail

struct ConstructiveRepresentation {
  u64 p = 0;
  u64 lambda = 0;
  u64 n_lo = 0, n_hi = 0;  // range of n in F_{2n}
  u64 m_hi = 0;            // range 1..m_hi of m in L_{2m}
  u64 f_values = 0;        // |F mod p|
  u64 l_values = 0;        // |L mod p|
  std::vector<std::pair<u64, u64>> pairs;  // (n_i, m_i), eight of them
  std::vector<u64> indices;                // 2(n_i + m_i), 2(n_i - m_i)
};

/// Sixteen Fibonacci indices whose values sum to lambda mod p, built from
/// products F_{2n} L_{2m} with delta sqrt(N)/10 < n <= delta sqrt(N)/5 and
/// 1 <= m <= sqrt(N/delta), the eightfold covering of their product set, and
/// F_u L_v = F_{u+v} + (-1)^v F_{u-v}.
inline ConstructiveRepresentation waring_constructive(u64 p, u64 n_max, double delta, i64 lambda) {
  require_sumset_prime(p);
  require(p <= n_max, "waring_constructive requires p <= N");
  require(delta > 0.0, "delta must be positive");
  ConstructiveRepresentation rep;
  rep.p = p;
  rep.lambda = reduce_signed(lambda, p);
  const double root_n = std::sqrt(static_cast<double>(n_max));
  rep.n_lo = static_cast<u64>(std::floor(delta * root_n / 10.0)) + 1;
  rep.n_hi = static_cast<u64>(std::floor(delta * root_n / 5.0));
  rep.m_hi = static_cast<u64>(std::floor(root_n / std::sqrt(delta)));
  if (rep.n_lo > rep.n_hi || rep.m_hi < 1) {
    throw PreconditionFailed("construction precondition failed: empty index range");
  }
  const auto f_res = residues(SequenceSpec::fibonacci_even(rep.n_lo, rep.n_hi), p);
  const auto l_res = residues(SequenceSpec::lucas(2, 2 * rep.m_hi), p);
  std::vector<u64> l_even;  // L_{2m}
  for (std::size_t i = 0; i < l_res.size(); i += 2) l_even.push_back(l_res[i]);
  const auto f_first = detail::first_index_by_residue(rep.n_lo, f_res);
  const auto l_first = detail::first_index_by_residue(1, l_even);
  rep.f_values = f_first.size();
  rep.l_values = l_first.size();
  if (static_cast<u128>(rep.f_values) * rep.l_values <= static_cast<u128>(2) * p) {
    throw PreconditionFailed("construction precondition failed: |F mod p| |L mod p| = " +
                             std::to_string(rep.f_values * rep.l_values) + " <= 2p");
  }

  // product residue -> (n, m) with the smallest n, then smallest m
  std::unordered_map<u64, std::pair<u64, u64>> witness;
  std::vector<std::pair<u64, u64>> f_sorted(f_first.begin(), f_first.end());
  std::vector<std::pair<u64, u64>> l_sorted(l_first.begin(), l_first.end());
  auto by_index = [](const auto& a, const auto& b) { return a.second < b.second; };
  std::sort(f_sorted.begin(), f_sorted.end(), by_index);
  std::sort(l_sorted.begin(), l_sorted.end(), by_index);
  ResidueSet prod(p);
  for (const auto& [fr, n] : f_sorted) {
    for (const auto& [lr, m] : l_sorted) {
      const u64 q = mul_mod(fr, lr, p);
      if (witness.try_emplace(q, n, m).second) prod.insert(q);
    }
  }

  const detail::SumsetLadder ladder(prod, 8);
  const auto parts = ladder.decompose(rep.lambda);
  if (!parts) throw SearchFailure("no representation found although |F||L| > 2p");
  for (u64 q : *parts) {
    const auto [n, m] = witness.at(q);
    if (n < m) {
      throw PreconditionFailed("construction precondition failed: n < m (needs delta^{3/2} > 10)");
    }
    rep.pairs.emplace_back(n, m);
    rep.indices.push_back(2 * (n + m));
    rep.indices.push_back(2 * (n - m));  // F_0 = 0 when n = m
  }
  if (detail::sum_fib_mod(rep.indices, p) != rep.lambda) {
    throw InvariantViolation("constructive representation does not sum to lambda");
  }
  return rep;
}

struct TernaryReport {
  u64 count = 0;        // T
  double main = 0.0;    // |X||Y||Z|^2 / p
  double bound = 0.0;   // sqrt(p|X||Y|) |Z|
  bool within_bound = false;
};

inline constexpr u64 kTernaryTupleGuard = 1'000'000'000;

/// Number of (x, y, z1, z2) in X x Y x Z x Z with xy + z1 + z2 = lambda (mod p),
/// with the check |T - |X||Y||Z|^2/p| <= sqrt(p|X||Y|)|Z| done in exact
/// integer arithmetic.
inline TernaryReport ternary_count(const ResidueSet& x, const ResidueSet& y, const ResidueSet& z,
                                   i64 lambda) {
  const u64 p = x.modulus();
  require(y.modulus() == p && z.modulus() == p, "ternary_count: sets over different moduli");
  require_sumset_prime(p);
  const u64 nx = x.size(), ny = y.size(), nz = z.size();
  if (static_cast<u128>(nx) * ny * nz * nz > kTernaryTupleGuard) {
    throw GuardExceeded("ternary_count: more than 10^9 tuples");
  }
  const u64 target = reduce_signed(lambda, p);
  std::vector<u64> pair_sums(p, 0);
  const auto ze = z.elements();
  for (u64 a : ze) {
    for (u64 b : ze) ++pair_sums[add_mod(a, b, p)];
  }
  const auto ye = y.elements();
  TernaryReport rep;
  for (u64 a : x.elements()) {
    for (u64 b : ye) rep.count += pair_sums[sub_mod(target, mul_mod(a, b, p), p)];
  }
  const u128 scaled_main = static_cast<u128>(nx) * ny * nz * nz;
  const u128 pt = static_cast<u128>(p) * rep.count;
  const u128 diff = pt > scaled_main ? pt - scaled_main : scaled_main - pt;
  // |pT - XYZ^2| <= p sqrt(p X Y) Z  <=>  (pT - XYZ^2)^2 <= p^3 X Y Z^2
  rep.within_bound = diff * diff <= static_cast<u128>(p) * p * p * nx * ny * nz * nz;
  rep.main = static_cast<double>(nx) * ny * nz * nz / static_cast<double>(p);
  rep.bound = std::sqrt(static_cast<double>(p) * nx * ny) * nz;
  if (!rep.within_bound) {
    throw InvariantViolation("ternary count outside |T - main| <= sqrt(p|X||Y|)|Z|");
  }
  return rep;
}

struct WaringEpsParams {
  double epsilon = 0.0;
  u64 k = 0;  // least k with 1/(k+2) < epsilon/8
  u64 s = 0;  // 4k
};

/// k = [8/eps] - 1 and s = 4k. The quotient 8/eps is snapped to the nearest
/// integer when within 1e-9 relative, so decimal inputs like 0.4 behave as
/// the exact decimal would.
inline WaringEpsParams waring_eps_params(double epsilon) {
  require(epsilon > 0.0 && epsilon <= 0.5, "epsilon must lie in (0, 1/2]");
  double q = 8.0 / epsilon;
  const double nearest = std::round(q);
  if (std::fabs(q - nearest) <= 1e-9 * q) q = nearest;
  WaringEpsParams out;
  out.epsilon = epsilon;
  out.k = static_cast<u64>(std::floor(q)) - 1;
  out.s = 4 * out.k;
  if (!(static_cast<double>(out.s) < 100.0 / epsilon) ||
      !(7.0 / static_cast<double>(out.k + 2) < epsilon)) {
    throw InvariantViolation("waring_eps_params: s < 100/eps or 7/(k+2) < eps violated");
  }
  return out;
}

struct EpsRepresentation {
  WaringEpsParams params;
  u64 p = 0;
  u64 lambda = 0;
  u64 short_bound = 0;   // floor(N^{1/(k+2)}) bounds n_i, l_j, l'_j
  u64 m_lo = 0, m_hi = 0;  // N^{7/(k+2)}/2 < m <= N^{7/(k+2)}
  u64 x_values = 0, y_values = 0, z_values = 0;  // sizes mod p
  u64 m = 0;
  std::vector<u64> n, l, l_prime;  // k each
  std::vector<u64> indices;         // s = 4k Fibonacci indices
  double index_limit = 0.0;         // N^eps
};

inline constexpr u64 kEpsLadderGuard = 1'000'000'000;  // k * p bits
inline constexpr u64 kEpsLucasRangeGuard = 100'000'000;

/// s = 4k Fibonacci indices, each at most N^eps, whose values sum to lambda
/// mod p. Solves xy + z1 + z2 = lambda with x a k-fold sum of F_{2n-1},
/// y = L_m, z1, z2 k-fold sums of F_{2l}; then L_m F_{2n-1} =
/// F_{m+2n-1} + F_{m-2n+1} splits every product into two Fibonacci numbers.
inline EpsRepresentation waring_eps_verify(u64 p, u64 n_max, double epsilon, i64 lambda) {
  require_sumset_prime(p);
  require(p <= n_max, "waring_eps_verify requires p <= N");
  EpsRepresentation rep;
  rep.params = waring_eps_params(epsilon);
  rep.p = p;
  rep.lambda = reduce_signed(lambda, p);
  const u64 k = rep.params.k;
  const auto e = static_cast<unsigned>(k + 2);
  if (static_cast<u128>(k) * p > kEpsLadderGuard) {
    throw GuardExceeded("waring_eps_verify: k * p exceeds ladder guard");
  }

  const BigInt big_n = n_max;
  const BigInt n7 = boost::multiprecision::pow(big_n, 7);
  rep.short_bound = detail::integer_root(big_n, e);
  rep.m_hi = detail::integer_root(n7, e);
  // m > N^{7/e}/2  <=>  (2m)^e > N^7
  rep.m_lo = detail::integer_root(n7, e) / 2 + 1;
  while (rep.m_lo > 1 && boost::multiprecision::pow(BigInt(2 * (rep.m_lo - 1)), e) > n7) --rep.m_lo;
  while (boost::multiprecision::pow(BigInt(2 * rep.m_lo), e) <= n7) ++rep.m_lo;
  rep.index_limit = std::pow(static_cast<double>(n_max), epsilon);
  if (rep.short_bound < 1 || rep.m_lo > rep.m_hi) {
    throw PreconditionFailed("precondition |X||Y||Z|^2 <= p^3: empty index range");
  }
  if (rep.m_hi - rep.m_lo + 1 > kEpsLucasRangeGuard) {
    throw GuardExceeded("waring_eps_verify: Lucas index range exceeds guard");
  }

  const auto odd_fib = residues(SequenceSpec::fibonacci(1, 2 * rep.short_bound - 1), p);
  const auto even_fib = residues(SequenceSpec::fibonacci_even(1, rep.short_bound), p);
  std::vector<u64> odd_vals;  // F_{2n-1}, n = 1..B
  for (std::size_t i = 0; i < odd_fib.size(); i += 2) odd_vals.push_back(odd_fib[i]);
  const auto odd_first = detail::first_index_by_residue(1, odd_vals);
  const auto even_first = detail::first_index_by_residue(1, even_fib);

  const detail::SumsetLadder x_ladder(ResidueSet::of(p, odd_vals), static_cast<unsigned>(k));
  const detail::SumsetLadder z_ladder(ResidueSet::of(p, even_fib), static_cast<unsigned>(k));
  const ResidueSet& xs = x_ladder.top();
  const ResidueSet& zs = z_ladder.top();

  // L_m mod p, first m per residue, in ascending m
  std::vector<std::pair<u64, u64>> y_first;  // (residue, m)
  {
    std::vector<bool> seen(p, false);
    auto [f, f1] = fib_pair_mod(rep.m_lo, p);
    for (u64 m = rep.m_lo; m <= rep.m_hi && y_first.size() < p; ++m) {
      const u64 lm = sub_mod(add_mod(f1, f1, p), f, p);
      if (!seen[lm]) {
        seen[lm] = true;
        y_first.emplace_back(lm, m);
      }
      const u64 next = add_mod(f, f1, p);
      f = f1;
      f1 = next;
    }
  }
  rep.x_values = xs.size();
  rep.y_values = y_first.size();
  rep.z_values = zs.size();
  const double lhs = static_cast<double>(rep.x_values) * static_cast<double>(rep.y_values) *
                     static_cast<double>(rep.z_values) * static_cast<double>(rep.z_values);
  const double rhs = static_cast<double>(p) * static_cast<double>(p) * static_cast<double>(p);
  if (!(lhs > rhs)) {
    throw PreconditionFailed("precondition |X||Y||Z|^2 <= p^3 (" + std::to_string(lhs) +
                             " <= " + std::to_string(rhs) + ")");
  }

  const ResidueSet zz = sumset(zs, zs);
  const auto x_elems = xs.elements();
  std::optional<std::pair<u64, std::pair<u64, u64>>> hit;  // (x, (y, m))
  for (const auto& [yr, m] : y_first) {
    for (u64 xr : x_elems) {
      if (zz.contains(sub_mod(rep.lambda, mul_mod(xr, yr, p), p))) {
        hit = {xr, {yr, m}};
        break;
      }
    }
    if (hit) break;
  }
  if (!hit) {
    throw SearchFailure("no solution of xy + z1 + z2 = lambda although |X||Y||Z|^2 > p^3");
  }
  const u64 xr = hit->first;
  const u64 yr = hit->second.first;
  rep.m = hit->second.second;
  const u64 w = sub_mod(rep.lambda, mul_mod(xr, yr, p), p);
  u64 z1 = 0;
  for (u64 a : zs.elements()) {
    if (zs.contains(sub_mod(w, a, p))) {
      z1 = a;
      break;
    }
  }
  const u64 z2 = sub_mod(w, z1, p);

  const auto x_parts = x_ladder.decompose(xr);
  const auto z1_parts = z_ladder.decompose(z1);
  const auto z2_parts = z_ladder.decompose(z2);
  if (!x_parts || !z1_parts || !z2_parts) throw SearchFailure("ladder decomposition failed");
  for (u64 v : *x_parts) rep.n.push_back(odd_first.at(v));
  for (u64 v : *z1_parts) rep.l.push_back(even_first.at(v));
  for (u64 v : *z2_parts) rep.l_prime.push_back(even_first.at(v));

  for (u64 ni : rep.n) {
    if (rep.m < 2 * ni) {
      throw InvariantViolation("index m - 2n + 1 below 1");
    }
    rep.indices.push_back(rep.m + 2 * ni - 1);
    rep.indices.push_back(rep.m - 2 * ni + 1);
  }
  for (u64 li : rep.l) rep.indices.push_back(2 * li);
  for (u64 li : rep.l_prime) rep.indices.push_back(2 * li);

  const u64 range_cap = rep.m_hi + 2 * rep.short_bound;
  for (u64 idx : rep.indices) {
    if (idx < 1 || idx > range_cap ||
        static_cast<double>(idx) > rep.index_limit * (1.0 + 1e-12)) {
      throw InvariantViolation("index " + std::to_string(idx) + " outside [1, N^eps]");
    }
  }
  if (rep.indices.size() != rep.params.s) {
    throw InvariantViolation("representation length differs from s = 4k");
  }
  if (detail::sum_fib_mod(rep.indices, p) != rep.lambda) {
    throw InvariantViolation("epsilon representation does not sum to lambda");
  }
  return rep;
}

}  // namespace sparsemod
