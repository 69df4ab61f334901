#pragma once

#include <cstdint>
#include <span>

#include <boost/multiprecision/cpp_int.hpp>

namespace guesswork {

using BigInt = boost::multiprecision::cpp_int;

// Natural log of a positive integer of any size; -inf for zero.
double log_of(const BigInt& n);

// Nearest long double; exact for values below 2^64.
long double to_long_double(const BigInt& n);

BigInt binomial(std::uint64_t n, std::uint64_t r);

// k! / prod_a counts[a]! with k = sum of counts.
BigInt multinomial(std::span<const std::uint64_t> counts);

}  // namespace guesswork
