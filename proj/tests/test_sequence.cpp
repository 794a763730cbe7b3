#include <gtest/gtest.h>

#include <vector>

#include "sparsemod/sequence.hpp"

using namespace sparsemod;

namespace {

// F_0..F_n and L_0..L_n by the integer recurrences.
std::pair<std::vector<BigInt>, std::vector<BigInt>> recurrence_table(std::size_t n) {
  std::vector<BigInt> f(n + 2), l(n + 2);
  f[0] = 0;
  f[1] = 1;
  l[0] = 2;
  l[1] = 1;
  for (std::size_t i = 2; i <= n + 1; ++i) {
    f[i] = f[i - 1] + f[i - 2];
    l[i] = l[i - 1] + l[i - 2];
  }
  return {f, l};
}

}  // namespace

TEST(Exact, FastDoublingMatchesRecurrence) {
  const auto [f, l] = recurrence_table(500);
  for (u64 n = 0; n <= 500; ++n) {
    const auto [fe, le] = fib_lucas_exact(n);
    ASSERT_EQ(fe, f[n]) << n;
    ASSERT_EQ(le, l[n]) << n;
  }
  EXPECT_EQ(l[2], 3);
  EXPECT_EQ(fib_exact(100), BigInt("354224848179261915075"));
}

TEST(Exact, ValuesPerFamily) {
  const auto fib = exact_values(SequenceSpec::fibonacci(1, 10));
  EXPECT_EQ(fib.back(), 55);
  EXPECT_EQ(fib.front(), 1);
  const auto luc = exact_values(SequenceSpec::lucas(1, 10));
  EXPECT_EQ(luc.front(), 1);
  EXPECT_EQ(luc.back(), 123);
  const auto even = exact_values(SequenceSpec::fibonacci_even(3, 5));
  EXPECT_EQ(even, (std::vector<BigInt>{8, 21, 55}));
  const auto pw = exact_values(SequenceSpec::power_of(3, 2, 4));
  EXPECT_EQ(pw, (std::vector<BigInt>{9, 27, 81}));
  const auto ex = exact_values(SequenceSpec::explicit_list(std::vector<int>{1, 8, 15}));
  EXPECT_EQ(ex, (std::vector<BigInt>{1, 8, 15}));
}

TEST(Exact, DigitGuard) {
  EXPECT_THROW(exact_values(SequenceSpec::fibonacci(30000, 30001)), GuardExceeded);
  EXPECT_THROW(exact_values(SequenceSpec::power_of(10, 5001, 5001)), GuardExceeded);
  EXPECT_NO_THROW(exact_values(SequenceSpec::power_of(10, 4998, 4999)));
}

TEST(Residues, AgreeWithExactValues) {
  const std::vector<SequenceSpec> specs{
      SequenceSpec::fibonacci(1, 300),     SequenceSpec::lucas(5, 300),
      SequenceSpec::fibonacci_even(2, 150), SequenceSpec::power_of(2, 1, 300),
      SequenceSpec::power_of(7, 40, 90),
      SequenceSpec::explicit_list(std::vector<long long>{3, 17, 1000000007, 99999999977}),
  };
  for (const auto& spec : specs) {
    const auto exact = exact_values(spec);
    for (u64 m : {2ull, 7ull, 97ull, 1000003ull, (1ull << 61) - 1}) {
      const auto res = residues(spec, m);
      ASSERT_EQ(res.size(), exact.size());
      for (std::size_t i = 0; i < res.size(); ++i) {
        ASSERT_EQ(res[i], static_cast<u64>(exact[i] % m)) << describe(spec) << " mod " << m;
      }
    }
  }
}

TEST(Spec, Validation) {
  EXPECT_THROW(SequenceSpec::fibonacci(0, 5), std::invalid_argument);
  EXPECT_THROW(SequenceSpec::fibonacci(6, 5), std::invalid_argument);
  EXPECT_THROW(SequenceSpec::power_of(1, 1, 5), std::invalid_argument);
  EXPECT_THROW(SequenceSpec::explicit_list(std::vector<int>{1, 1, 2}), std::invalid_argument);
  EXPECT_THROW(SequenceSpec::explicit_list(std::vector<int>{3, 2}), std::invalid_argument);
  EXPECT_THROW(SequenceSpec::explicit_list(std::vector<int>{0, 2}), std::invalid_argument);
  EXPECT_THROW(SequenceSpec::explicit_list(std::vector<int>{}), std::invalid_argument);
  EXPECT_EQ(SequenceSpec::fibonacci(3, 9).size(), 7u);
  EXPECT_EQ(describe(SequenceSpec::power_of(2, 1, 9)), "pow:2:1:9");
}

// 2 F_{u+v} = F_u L_v + L_u F_v and 2 (-1)^v F_{u-v} = F_u L_v - L_u F_v
TEST(Identities, SumAndDifferenceOverIntegers) {
  const auto [f, l] = recurrence_table(400);
  for (u64 u = 1; u <= 200; ++u) {
    for (u64 v = 1; v <= u; ++v) {
      const BigInt plus = f[u] * l[v] + l[u] * f[v];
      const BigInt minus = f[u] * l[v] - l[u] * f[v];
      ASSERT_EQ(2 * f[u + v], plus);
      ASSERT_EQ((v % 2 ? -2 : 2) * f[u - v], minus);
    }
  }
}

TEST(Identities, SumAndDifferenceModOddPrimes) {
  for (u64 p : {3ull, 7ull, 11ull, 13ull, 97ull}) {
    const u64 half = (p + 1) / 2;
    for (u64 u = 1; u <= 200; ++u) {
      for (u64 v = 1; v <= u; ++v) {
        const auto a = fib_lucas_mod(u, p), b = fib_lucas_mod(v, p);
        const u64 plus = add_mod(mul_mod(a.fib, b.lucas, p), mul_mod(a.lucas, b.fib, p), p);
        ASSERT_EQ(fib_mod(u + v, p), mul_mod(half, plus, p));
        u64 minus = mul_mod(half, sub_mod(mul_mod(a.fib, b.lucas, p), mul_mod(a.lucas, b.fib, p), p), p);
        if (v % 2) minus = sub_mod(0, minus, p);
        ASSERT_EQ(fib_mod(u - v, p), minus);
      }
    }
  }
}

// F_u L_v = F_{u+v} + (-1)^v F_{u-v} and L_u F_v = F_{u+v} + (-1)^{v+1} F_{u-v}
TEST(Identities, ProductRewrites) {
  const auto [f, l] = recurrence_table(400);
  for (u64 u = 2; u <= 200; ++u) {
    for (u64 v = 1; v < u; ++v) {
      const BigInt sign = v % 2 ? -1 : 1;
      ASSERT_EQ(f[u] * l[v], f[u + v] + sign * f[u - v]);
      ASSERT_EQ(l[u] * f[v], f[u + v] - sign * f[u - v]);
    }
  }
}
