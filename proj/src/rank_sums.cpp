#include "guesswork/rank_sums.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "guesswork/error.hpp"
#include "guesswork/kernels.hpp"

namespace guesswork {

namespace {

constexpr double kNegInfinity = -std::numeric_limits<double>::infinity();
const BigInt kDirectIndexLimit = BigInt(1) << 40;

double log_add(double a, double b) {
  if (a == kNegInfinity) return b;
  if (b == kNegInfinity) return a;
  const double top = std::max(a, b);
  return top + std::log1p(std::exp(std::min(a, b) - top));
}

struct TailGeometry {
  long double log_lo;  // log(first - 1/2)
  long double t;       // count / (first - 1/2)
  long double log1p_t;  // log((last + 1/2) / (first - 1/2))
};

TailGeometry tail_geometry(const BigInt& first, const BigInt& count) {
  const long double a = to_long_double(first);
  const long double n = to_long_double(count);
  TailGeometry g{};
  if (std::isfinite(a) && std::isfinite(n)) {
    g.log_lo = std::log(a - 0.5L);
    g.t = n / (a - 0.5L);
  } else {
    g.log_lo = static_cast<long double>(log_of(first)) + std::log1p(-0.5L / a);
    g.t = std::exp(static_cast<long double>(log_of(count)) - g.log_lo);
  }
  g.log1p_t = std::log1p(g.t);
  return g;
}

}  // namespace

double log_power_sum_euler_maclaurin(const BigInt& first, const BigInt& count, double alpha) {
  if (first < kTailStart) throw Error(Errc::invalid_argument, "Euler-Maclaurin tail needs first >= 2^16");
  if (count <= 0) return kNegInfinity;
  const TailGeometry geo = tail_geometry(first, count);
  const long double a = alpha;
  const long double e = a + 1.0L;
  const long double log_hi = geo.log_lo + geo.log1p_t;

  // log of the integral of x^alpha over [first - 1/2, last + 1/2]
  long double log_integral;
  if (e > 0.0L) {
    log_integral = e * log_hi + std::log(-std::expm1(-e * geo.log1p_t)) - std::log(e);
  } else if (e < 0.0L) {
    log_integral = e * geo.log_lo + std::log(-std::expm1(e * geo.log1p_t)) - std::log(-e);
  } else {
    log_integral = std::log(geo.log1p_t);
  }

  // Midpoint-rule corrections: -(1/24)[f'] + (7/5760)[f'''] across the ends.
  const auto relative = [&](long double power, long double coeff) {
    return coeff * (std::exp(power * log_hi - log_integral) - std::exp(power * geo.log_lo - log_integral));
  };
  long double corr = relative(a - 1.0L, -a / 24.0L);
  corr += relative(a - 3.0L, 7.0L * a * (a - 1.0L) * (a - 2.0L) / 5760.0L);
  return static_cast<double>(log_integral + std::log1p(corr));
}

double log_log_sum_euler_maclaurin(const BigInt& first, const BigInt& count) {
  if (first < kTailStart) throw Error(Errc::invalid_argument, "Euler-Maclaurin tail needs first >= 2^16");
  if (count <= 0) return kNegInfinity;
  const TailGeometry geo = tail_geometry(first, count);
  const long double log_hi = geo.log_lo + geo.log1p_t;
  // (1/L) * integral of log x over [A, B] = log B - 1 + (A/L) log(B/A)
  const long double ratio = geo.t > 0.0L ? geo.log1p_t / geo.t : 1.0L;
  const long double mean = log_hi - 1.0L + ratio;
  const long double log_count = static_cast<long double>(log_of(count));
  // -(1/24)(f'(B) - f'(A)) with f' = 1/x, relative to L * mean.
  const long double corr =
      (std::exp(-geo.log_lo - log_count) - std::exp(-log_hi - log_count)) / (24.0L * mean);
  return static_cast<double>(log_count + std::log(mean) + std::log1p(corr));
}

double log_rank_power_sum(const BigInt& first, const BigInt& count, double alpha) {
  if (first < 1) throw Error(Errc::invalid_argument, "guess indices start at 1");
  if (count <= 0) return kNegInfinity;
  if (alpha == 0.0) return log_of(count);
  const BigInt last = first + count - 1;
  if (alpha == 1.0) {
    return log_of(count * (first + last)) - std::log(2.0);
  }
  if (alpha == 2.0) {
    const auto cumulative = [](const BigInt& n) { return n * (n + 1) * (2 * n + 1); };
    return log_of(cumulative(last) - cumulative(first - 1)) - std::log(6.0);
  }
  if (last < kDirectIndexLimit && count <= kDirectSumLimit) {
    return std::log(kernels::power_sum(first.convert_to<double>(), count.convert_to<std::uint64_t>(), alpha));
  }
  double head = kNegInfinity;
  BigInt tail_first = first;
  if (first < kTailStart) {
    const BigInt head_last = std::min<BigInt>(last, BigInt(kTailStart - 1));
    const BigInt head_count = head_last - first + 1;
    head = std::log(kernels::power_sum(first.convert_to<double>(), head_count.convert_to<std::uint64_t>(), alpha));
    tail_first = head_last + 1;
  }
  if (tail_first > last) return head;
  return log_add(head, log_power_sum_euler_maclaurin(tail_first, last - tail_first + 1, alpha));
}

double log_rank_log_sum(const BigInt& first, const BigInt& count) {
  if (first < 1) throw Error(Errc::invalid_argument, "guess indices start at 1");
  if (count <= 0) return kNegInfinity;
  const BigInt last = first + count - 1;
  if (last < kDirectIndexLimit && count <= kDirectSumLimit) {
    const double s = kernels::log_sum(first.convert_to<double>(), count.convert_to<std::uint64_t>());
    return s > 0.0 ? std::log(s) : kNegInfinity;
  }
  double head = kNegInfinity;
  BigInt tail_first = first;
  if (first < kTailStart) {
    const BigInt head_last = std::min<BigInt>(last, BigInt(kTailStart - 1));
    const BigInt head_count = head_last - first + 1;
    const double s = kernels::log_sum(first.convert_to<double>(), head_count.convert_to<std::uint64_t>());
    head = s > 0.0 ? std::log(s) : kNegInfinity;
    tail_first = head_last + 1;
  }
  if (tail_first > last) return head;
  return log_add(head, log_log_sum_euler_maclaurin(tail_first, last - tail_first + 1));
}

}  // namespace guesswork
