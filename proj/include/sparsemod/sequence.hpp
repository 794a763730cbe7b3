#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sparsemod/numtheory.hpp"

namespace sparsemod {

using BigInt = boost::multiprecision::cpp_int;

namespace family {
struct Fibonacci {};
struct Lucas {};
/// x_n = F_{2n}
struct FibonacciEvenIndex {};
struct PowerOf {
  u64 base;
};
/// Positions index_lo..index_hi (1-based) into a strictly increasing list.
struct Explicit {
  std::vector<BigInt> values;
};
}  // namespace family

using Family = std::variant<family::Fibonacci, family::Lucas, family::FibonacciEvenIndex,
                            family::PowerOf, family::Explicit>;

/// A sparse sequence family restricted to an index range.
struct SequenceSpec {
  Family family;
  u64 index_lo = 1;
  u64 index_hi = 1;

  std::size_t size() const { return static_cast<std::size_t>(index_hi - index_lo + 1); }

  static SequenceSpec fibonacci(u64 lo, u64 hi) { return make(family::Fibonacci{}, lo, hi); }
  static SequenceSpec lucas(u64 lo, u64 hi) { return make(family::Lucas{}, lo, hi); }
  static SequenceSpec fibonacci_even(u64 lo, u64 hi) {
    return make(family::FibonacciEvenIndex{}, lo, hi);
  }
  static SequenceSpec power_of(u64 g, u64 lo, u64 hi) { return make(family::PowerOf{g}, lo, hi); }
  static SequenceSpec explicit_list(std::vector<BigInt> values) {
    const u64 n = values.size();
    return make(family::Explicit{std::move(values)}, 1, n);
  }
  template <typename Int>
  static SequenceSpec explicit_list(const std::vector<Int>& values) {
    return explicit_list(std::vector<BigInt>(values.begin(), values.end()));
  }

  void validate() const {
    require(index_lo >= 1, "sequence index range must start at 1 or later");
    require(index_hi >= index_lo, "sequence index range must be non-empty");
    require(index_hi <= kMaxFibIndex / 2, "sequence index exceeds supported range");
    if (const auto* pw = std::get_if<family::PowerOf>(&family)) {
      require(pw->base >= 2, "power base must be at least 2");
    }
    if (const auto* ex = std::get_if<family::Explicit>(&family)) {
      require(!ex->values.empty(), "explicit list must be non-empty");
      require(index_hi <= ex->values.size(), "index range exceeds explicit list");
      require(ex->values.front() >= 1, "explicit values must be positive integers");
      require(std::adjacent_find(ex->values.begin(), ex->values.end(),
                                 [](const BigInt& a, const BigInt& b) { return !(a < b); }) ==
                  ex->values.end(),
              "explicit list must be strictly increasing");
    }
  }

 private:
  static SequenceSpec make(Family f, u64 lo, u64 hi) {
    SequenceSpec s{std::move(f), lo, hi};
    s.validate();
    return s;
  }
};

/// Exact F_n and L_n over the integers, n >= 0.
inline std::pair<BigInt, BigInt> fib_lucas_exact(u64 n) {
  BigInt a = 0;  // F_k
  BigInt b = 1;  // F_{k+1}
  for (int bit = 63; bit >= 0; --bit) {
    BigInt c = a * (2 * b - a);
    BigInt d = a * a + b * b;
    if ((n >> bit) & 1) {
      a = d;
      b = c + d;
    } else {
      a = std::move(c);
      b = std::move(d);
    }
  }
  BigInt lucas = 2 * b - a;
  return {std::move(a), std::move(lucas)};
}

inline BigInt fib_exact(u64 n) { return fib_lucas_exact(n).first; }

/// Number of decimal digits of a positive integer.
inline std::size_t decimal_digits(const BigInt& v) { return v.str().size(); }

inline constexpr std::size_t kMaxExactDigits = 5000;

/// Exact sequence values over the index range. Rejects ranges whose values
/// would exceed kMaxExactDigits digits.
inline std::vector<BigInt> exact_values(const SequenceSpec& spec) {
  spec.validate();
  std::vector<BigInt> out;
  out.reserve(spec.size());
  auto guard = [](const BigInt& v) {
    // bit length filters first; every value above 3 bits per digit gets the exact check
    if (v > 0 && boost::multiprecision::msb(v) > kMaxExactDigits * 3 &&
        decimal_digits(v) > kMaxExactDigits) {
      throw GuardExceeded("exact sequence value exceeds " + std::to_string(kMaxExactDigits) +
                          " digits");
    }
  };
  std::visit(
      [&](const auto& fam) {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, family::Explicit>) {
          for (u64 n = spec.index_lo; n <= spec.index_hi; ++n) out.push_back(fam.values[n - 1]);
        } else if constexpr (std::is_same_v<T, family::PowerOf>) {
          if (static_cast<double>(spec.index_lo) * std::log10(static_cast<double>(fam.base)) >
              static_cast<double>(kMaxExactDigits)) {
            throw GuardExceeded("exact sequence value exceeds digit guard");
          }
          BigInt v = boost::multiprecision::pow(BigInt(fam.base), static_cast<unsigned>(spec.index_lo));
          guard(v);
          for (u64 n = spec.index_lo; n <= spec.index_hi; ++n) {
            out.push_back(v);
            v *= fam.base;
            if (n < spec.index_hi) guard(v);
          }
        } else {
          const u64 step = std::is_same_v<T, family::FibonacciEvenIndex> ? 2 : 1;
          BigInt f = fib_exact(step * spec.index_lo);
          BigInt f1 = fib_exact(step * spec.index_lo + 1);
          for (u64 n = spec.index_lo; n <= spec.index_hi; ++n) {
            if constexpr (std::is_same_v<T, family::Lucas>) {
              out.push_back(2 * f1 - f);
            } else {
              out.push_back(f);
            }
            guard(out.back());
            for (u64 s = 0; s < step; ++s) {
              BigInt next = f + f1;
              f = std::move(f1);
              f1 = std::move(next);
            }
          }
        }
      },
      spec.family);
  return out;
}

/// Residues x_n mod m for index_lo <= n <= index_hi, computed index-wise
/// without materializing the integers.
inline std::vector<u64> residues(const SequenceSpec& spec, u64 m) {
  spec.validate();
  require_modulus(m);
  std::vector<u64> out;
  out.reserve(spec.size());
  std::visit(
      [&](const auto& fam) {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, family::Explicit>) {
          const BigInt mod = m;
          for (u64 n = spec.index_lo; n <= spec.index_hi; ++n) {
            out.push_back(static_cast<u64>(fam.values[n - 1] % mod));
          }
        } else if constexpr (std::is_same_v<T, family::PowerOf>) {
          const u64 g = fam.base % m;
          u64 v = pow_mod(g, spec.index_lo, m);
          for (u64 n = spec.index_lo; n <= spec.index_hi; ++n) {
            out.push_back(v);
            v = mul_mod(v, g, m);
          }
        } else {
          const u64 step = std::is_same_v<T, family::FibonacciEvenIndex> ? 2 : 1;
          auto [f, f1] = fib_pair_mod(step * spec.index_lo, m);
          for (u64 n = spec.index_lo; n <= spec.index_hi; ++n) {
            if constexpr (std::is_same_v<T, family::Lucas>) {
              out.push_back(sub_mod(add_mod(f1, f1, m), f, m));
            } else {
              out.push_back(f);
            }
            for (u64 s = 0; s < step; ++s) {
              const u64 next = add_mod(f, f1, m);
              f = f1;
              f1 = next;
            }
          }
        }
      },
      spec.family);
  return out;
}

/// Short human-readable description, e.g. "fib:1:40".
inline std::string describe(const SequenceSpec& spec) {
  const std::string range = std::to_string(spec.index_lo) + ":" + std::to_string(spec.index_hi);
  return std::visit(
      [&](const auto& fam) -> std::string {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, family::Fibonacci>) return "fib:" + range;
        if constexpr (std::is_same_v<T, family::Lucas>) return "lucas:" + range;
        if constexpr (std::is_same_v<T, family::FibonacciEvenIndex>) return "fibeven:" + range;
        if constexpr (std::is_same_v<T, family::PowerOf>) {
          return "pow:" + std::to_string(fam.base) + ":" + range;
        }
        if constexpr (std::is_same_v<T, family::Explicit>) {
          return "list[" + std::to_string(fam.values.size()) + "]:" + range;
        }
      },
      spec.family);
}

}  // namespace sparsemod
