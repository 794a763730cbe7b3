#pragma once

// Modular arithmetic kernel: prime sieve, Miller-Rabin, fast-doubling
// Fibonacci/Lucas, multiplicative order and the order of appearance z(p).
//
// Moduli are capped at 2^62 so that a product of two reduced residues fits in
// an unsigned 128-bit intermediate and sums of two residues never overflow.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sparsemod/errors.hpp"

namespace sparsemod {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline constexpr u64 kMaxModulus = u64{1} << 62;
inline constexpr u64 kMaxFibIndex = u64{1} << 62;

inline u64 add_mod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return s >= m ? s - m : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Reduces a signed integer into [0, m).
inline u64 reduce_signed(i64 a, u64 m) {
  if (a >= 0) return static_cast<u64>(a) % m;
  u64 r = static_cast<u64>(-(a + 1)) % m;  // avoids overflow at INT64_MIN
  return m - 1 - r;
}

/// Primes <= n in increasing order (odd-only sieve of Eratosthenes).
inline std::vector<u64> sieve_primes(u64 n) {
  std::vector<u64> primes;
  if (n < 2) return primes;
  primes.push_back(2);
  // composite[i] describes the odd number 2i + 1
  std::vector<bool> composite((n + 1) / 2, false);
  for (u64 i = 1; i < composite.size(); ++i) {
    if (composite[i]) continue;
    const u64 q = 2 * i + 1;
    primes.push_back(q);
    for (u64 j = q * q / 2; j < composite.size(); j += q) composite[j] = true;
  }
  return primes;
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

/// Prime factorization by trial division; returns (prime, exponent) pairs.
inline std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::vector<std::pair<u64, int>> factors;
  auto strip = [&](u64 q) {
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    if (e) factors.emplace_back(q, e);
  };
  strip(2);
  for (u64 q = 3; q <= n / q; q += 2) strip(q);
  if (n > 1) factors.emplace_back(n, 1);
  return factors;
}

inline void require_modulus(u64 m) {
  require(m >= 2, "modulus must be at least 2");
  require(m <= kMaxModulus, "modulus must not exceed 2^62");
}

inline void require_prime(u64 p) {
  require(is_prime(p), "argument " + std::to_string(p) + " is not prime");
  require(p <= kMaxModulus, "prime must not exceed 2^62");
}

struct FibLucas {
  u64 fib;
  u64 lucas;
  friend bool operator==(const FibLucas&, const FibLucas&) = default;
};

/// (F_n, F_{n+1}) mod m by fast doubling, with F_0 = 0.
inline std::pair<u64, u64> fib_pair_mod(u64 n, u64 m) {
  require_modulus(m);
  require(n <= kMaxFibIndex, "Fibonacci index must not exceed 2^62");
  u64 a = 0;      // F_k
  u64 b = 1 % m;  // F_{k+1}
  for (int bit = 63; bit >= 0; --bit) {
    // F_{2k} = F_k (2F_{k+1} - F_k), F_{2k+1} = F_k^2 + F_{k+1}^2
    const u64 c = mul_mod(a, sub_mod(add_mod(b, b, m), a, m), m);
    const u64 d = add_mod(mul_mod(a, a, m), mul_mod(b, b, m), m);
    if ((n >> bit) & 1) {
      a = d;
      b = add_mod(c, d, m);
    } else {
      a = c;
      b = d;
    }
  }
  return {a, b};
}

/// F_n and L_n mod m. Index 0 is accepted with F_0 = 0, L_0 = 2.
inline FibLucas fib_lucas_mod(u64 n, u64 m) {
  const auto [f, f1] = fib_pair_mod(n, m);
  // L_n = F_{n-1} + F_{n+1} = 2F_{n+1} - F_n
  return {f, sub_mod(add_mod(f1, f1, m), f, m)};
}

inline u64 fib_mod(u64 n, u64 m) { return fib_pair_mod(n, m).first; }

inline u64 lucas_mod(u64 n, u64 m) { return fib_lucas_mod(n, m).lucas; }

/// Legendre symbol (a|p) for an odd prime p via Euler's criterion.
inline int legendre(i64 a, u64 p) {
  require(p != 2, "Legendre symbol requires an odd prime");
  require_prime(p);
  const u64 r = pow_mod(reduce_signed(a, p), (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

/// (5|p), extended to p = 2 by the Kronecker symbol: (5|2) = -1.
inline int legendre5(u64 p) {
  if (p == 2) return -1;
  return legendre(5, p);
}

/// Least t >= 1 with a^t = 1 (mod p), found among divisors of p - 1.
inline u64 mult_order(u64 a, u64 p) {
  require_prime(p);
  a %= p;
  require(a != 0, "base must be coprime to the modulus");
  u64 t = p - 1;
  for (const auto& [q, e] : factorize(p - 1)) {
    for (int i = 0; i < e && t % q == 0 && pow_mod(a, t / q, p) == 1; ++i) t /= q;
  }
  return t;
}

/// Linear-scan multiplicative order; O(t).
inline u64 mult_order_scan(u64 a, u64 p) {
  require_prime(p);
  a %= p;
  require(a != 0, "base must be coprime to the modulus");
  u64 x = a;
  u64 t = 1;
  while (x != 1) {
    x = mul_mod(x, a, p);
    ++t;
  }
  return t;
}

inline bool is_primitive_root(u64 g, u64 p) { return mult_order(g, p) == p - 1; }

/// Least primitive root modulo p.
inline u64 least_primitive_root(u64 p) {
  require_prime(p);
  if (p == 2) return 1;
  const auto factors = factorize(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool generator = true;
    for (const auto& [q, e] : factors) {
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return g;
  }
  throw SearchFailure("no primitive root found");
}

/// Least ell >= 1 with F_ell = 0 (mod p) by direct scan of the recurrence.
inline u64 order_of_appearance_scan(u64 p) {
  require_prime(p);
  u64 a = 1;  // F_1
  u64 b = 1;  // F_2
  u64 ell = 1;
  while (a != 0) {
    const u64 next = add_mod(a, b, p);
    a = b;
    b = next;
    ++ell;
  }
  return ell;
}

/// Order of appearance z(p). For p not in {2, 5}, z(p) divides p - (5|p).
inline u64 order_of_appearance(u64 p) {
  require_prime(p);
  if (p == 2) return 3;
  if (p == 5) return 5;
  const u64 n = legendre5(p) == 1 ? p - 1 : p + 1;
  u64 z = n;
  for (const auto& [q, e] : factorize(n)) {
    for (int i = 0; i < e && z % q == 0 && fib_mod(z / q, p) == 0; ++i) z /= q;
  }
  if (fib_mod(z, p) != 0) return order_of_appearance_scan(p);
  return z;
}

struct PrimeRecord {
  u64 p = 0;
  std::optional<u64> t_p;  // order of 2; undefined for p = 2
  u64 z_p = 0;
  int legendre5 = 0;
};

inline PrimeRecord make_prime_record(u64 p) {
  PrimeRecord rec;
  rec.p = p;
  if (p != 2) rec.t_p = mult_order(2, p);
  rec.z_p = order_of_appearance(p);
  rec.legendre5 = legendre5(p);
  return rec;
}

}  // namespace sparsemod
