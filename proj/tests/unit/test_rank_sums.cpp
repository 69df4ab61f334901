#include <doctest.h>

#include <cmath>

#include "guesswork/kernels.hpp"
#include "guesswork/rank_sums.hpp"

using namespace guesswork;

namespace {

long double direct_power(std::uint64_t first, std::uint64_t count, long double alpha) {
  long double s = 0.0L;
  for (std::uint64_t i = 0; i < count; ++i) s += std::pow(static_cast<long double>(first + i), alpha);
  return s;
}

long double direct_log(std::uint64_t first, std::uint64_t count) {
  long double s = 0.0L;
  for (std::uint64_t i = 0; i < count; ++i) s += std::log(static_cast<long double>(first + i));
  return s;
}

}  // namespace

TEST_CASE("exact integer orders") {
  CHECK(std::exp(log_rank_power_sum(1, 5, 1.0)) == doctest::Approx(15.0).epsilon(1e-15));
  CHECK(std::exp(log_rank_power_sum(3, 4, 2.0)) == doctest::Approx(9 + 16 + 25 + 36).epsilon(1e-15));
  CHECK(std::exp(log_rank_power_sum(7, 9, 0.0)) == doctest::Approx(9.0).epsilon(1e-15));
  // beyond double range
  const BigInt n = BigInt(1) << 2000;
  const double v = log_rank_power_sum(1, n, 1.0);
  CHECK(v == doctest::Approx(2.0 * 2000.0 * std::log(2.0) - std::log(2.0)).epsilon(1e-14));
  CHECK(log_rank_power_sum(4, 0, 1.5) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("euler-maclaurin tail matches direct summation") {
  for (double alpha : {-0.5, 0.5, 1.5, 2.0, 3.0, -2.0}) {
    for (std::uint64_t first : {std::uint64_t{1} << 16, std::uint64_t{100000}, std::uint64_t{1} << 22}) {
      for (std::uint64_t count : {std::uint64_t{1}, std::uint64_t{7}, std::uint64_t{5000}, std::uint64_t{200000}}) {
        const double em = log_power_sum_euler_maclaurin(first, count, alpha);
        const double direct = static_cast<double>(std::log(direct_power(first, count, alpha)));
        CHECK(std::abs(em - direct) < 1e-13 * std::max(1.0, std::abs(direct)));
      }
    }
  }
  for (std::uint64_t first : {std::uint64_t{1} << 16, std::uint64_t{3} << 20}) {
    for (std::uint64_t count : {std::uint64_t{1}, std::uint64_t{33}, std::uint64_t{300000}}) {
      const double em = log_log_sum_euler_maclaurin(first, count);
      const double direct = static_cast<double>(std::log(direct_log(first, count)));
      CHECK(std::abs(em - direct) < 1e-13 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("head plus tail split agrees with direct summation") {
  for (double alpha : {-0.5, 0.5, 1.7}) {
    const std::uint64_t first = 1000;
    const std::uint64_t count = (std::uint64_t{1} << 21) + 12345;
    const double v = log_rank_power_sum(first, count, alpha);
    const double direct = static_cast<double>(std::log(direct_power(first, count, alpha)));
    CHECK(v == doctest::Approx(direct).epsilon(1e-13));
  }
  const double v = log_rank_log_sum(2, std::uint64_t{3} << 20);
  CHECK(v == doctest::Approx(static_cast<double>(std::log(direct_log(2, std::uint64_t{3} << 20)))).epsilon(1e-13));
  CHECK(log_rank_log_sum(1, 1) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("huge blocks stay finite") {
  const BigInt first = BigInt(1) << 600;
  const BigInt count = BigInt(1) << 700;
  for (double alpha : {-0.5, 0.5, 2.5}) {
    const double v = log_rank_power_sum(first, count, alpha);
    CHECK(std::isfinite(v));
    // the block is dominated by its top end: sum ~ last^(a+1) / (a+1)
    const double approx = (alpha + 1.0) * 700.0 * std::log(2.0) - std::log(alpha + 1.0);
    CHECK(v == doctest::Approx(approx).epsilon(1e-6));
  }
  CHECK(std::isfinite(log_rank_log_sum(first, count)));
}

TEST_CASE("kernel variants are equivalent") {
  using namespace guesswork::kernels;
  const std::uint64_t counts[] = {1, 3, 4, 5, 17, 1000, 65537};
  const double firsts[] = {1.0, 2.0, 1234.0, 1e9};
  for (double alpha : {0.0, 1.0, 2.0, 0.5, -0.5, 1.3, -1.7, 3.0}) {
    for (double f : firsts) {
      for (auto n : counts) {
        const double s = scalar::power_sum(f, n, alpha);
        const double d = power_sum(f, n, alpha);
        CHECK(d == doctest::Approx(s).epsilon(1e-13));
#if defined(GUESSWORK_HAVE_AVX2)
        if (detected_isa() == Isa::avx2) CHECK(avx2::power_sum(f, n, alpha) == doctest::Approx(s).epsilon(1e-13));
#endif
      }
    }
  }
  for (double f : firsts) {
    for (auto n : counts) {
      const double s = scalar::log_sum(f, n);
      CHECK(log_sum(f, n) == doctest::Approx(s).epsilon(1e-13));
#if defined(GUESSWORK_HAVE_AVX2)
      if (detected_isa() == Isa::avx2) CHECK(avx2::log_sum(f, n) == doctest::Approx(s).epsilon(1e-13));
#endif
    }
  }
}

TEST_CASE("forcing the scalar path") {
  using namespace guesswork::kernels;
  force_isa(Isa::scalar);
  CHECK(active_isa() == Isa::scalar);
  const double s = power_sum(10.0, 1000, 0.5);
  force_isa(std::nullopt);
  CHECK(active_isa() == detected_isa());
  CHECK(power_sum(10.0, 1000, 0.5) == doctest::Approx(s).epsilon(1e-13));
}
