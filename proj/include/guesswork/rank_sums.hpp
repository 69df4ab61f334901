#pragma once

// Sums of rank powers over a contiguous block of guess indices
// [first, first + count), returned as logarithms so that blocks with
// astronomically large indices stay representable.
//
// alpha in {1, 2}: exact integer arithmetic.
// Short blocks below 2^40: direct compensated summation (SIMD kernels).
// Anything else: indices below kTailStart are summed directly and the rest
// by the midpoint Euler-Maclaurin formula with two correction terms, whose
// relative error is below 1e-16 once every index is >= kTailStart.

#include <cstdint>

#include "guesswork/bigint.hpp"

namespace guesswork {

inline constexpr std::uint64_t kDirectSumLimit = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kTailStart = std::uint64_t{1} << 16;

// log sum_{i=first}^{first+count-1} i^alpha; first >= 1. -inf when count == 0.
double log_rank_power_sum(const BigInt& first, const BigInt& count, double alpha);

// log sum_{i=first}^{first+count-1} log i; -inf when the sum is zero.
double log_rank_log_sum(const BigInt& first, const BigInt& count);

// Tail-only evaluations, exposed so they can be checked against direct sums.
// Require first >= kTailStart.
double log_power_sum_euler_maclaurin(const BigInt& first, const BigInt& count, double alpha);
double log_log_sum_euler_maclaurin(const BigInt& first, const BigInt& count);

}  // namespace guesswork
