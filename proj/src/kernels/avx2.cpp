// AVX2+FMA variants of the rank-sum kernels. This translation unit is built
// with -mavx2 -mfma and must only be entered after a runtime CPU check.

#include <immintrin.h>

#include <cmath>
#include <cstdint>

#include "guesswork/kernels.hpp"

namespace guesswork::kernels::avx2 {

namespace {

constexpr double kLn2Hi = 6.93147180369123816490e-01;
constexpr double kLn2Lo = 1.90821492927058770002e-10;
constexpr double kLog2e = 1.44269504088896338700e+00;
constexpr double kSqrt2 = 1.41421356237309504880e+00;

// Natural log of positive normal doubles. x = m * 2^e with m in
// [sqrt(1/2), sqrt(2)), then log m = 2 atanh(s), s = (m - 1)/(m + 1), summed
// as an odd series in s; |s| <= 0.1716 so eleven terms reach double precision.
inline __m256d log_pd(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));

  // Biased exponent to double through the 2^52 magic constant.
  const __m256i biased = _mm256_srli_epi64(bits, 52);
  const __m256i magic_bits = _mm256_set1_epi64x(0x4330000000000000LL);
  __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(biased, magic_bits)),
                            _mm256_set1_pd(4503599627370496.0 + 1023.0));

  const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(kSqrt2), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, _mm256_set1_pd(1.0)));

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d s = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  const __m256d z = _mm256_mul_pd(s, s);

  __m256d poly = _mm256_set1_pd(1.0 / 23.0);
  poly = _mm256_fmadd_pd(poly, z, _mm256_set1_pd(1.0 / 21.0));
  poly = _mm256_fmadd_pd(poly, z, _mm256_set1_pd(1.0 / 19.0));
  poly = _mm256_fmadd_pd(poly, z, _mm256_set1_pd(1.0 / 17.0));
  poly = _mm256_fmadd_pd(poly, z, _mm256_set1_pd(1.0 / 15.0));
  poly = _mm256_fmadd_pd(poly, z, _mm256_set1_pd(1.0 / 13.0));
  poly = _mm256_fmadd_pd(poly, z, _mm256_set1_pd(1.0 / 11.0));
  poly = _mm256_fmadd_pd(poly, z, _mm256_set1_pd(1.0 / 9.0));
  poly = _mm256_fmadd_pd(poly, z, _mm256_set1_pd(1.0 / 7.0));
  poly = _mm256_fmadd_pd(poly, z, _mm256_set1_pd(1.0 / 5.0));
  poly = _mm256_fmadd_pd(poly, z, _mm256_set1_pd(1.0 / 3.0));
  // log m = 2 s + 2 s z poly
  const __m256d two_s = _mm256_add_pd(s, s);
  const __m256d log_m = _mm256_fmadd_pd(_mm256_mul_pd(two_s, z), poly, two_s);

  return _mm256_add_pd(_mm256_mul_pd(e, _mm256_set1_pd(kLn2Hi)),
                       _mm256_fmadd_pd(e, _mm256_set1_pd(kLn2Lo), log_m));
}

// exp for |y| < 700: y = n ln2 + r with |r| <= ln2/2, Taylor series of
// degree 13 for exp(r), then scaling by 2^n through the exponent field.
inline __m256d exp_pd(__m256d y) {
  const __m256d n = _mm256_round_pd(_mm256_mul_pd(y, _mm256_set1_pd(kLog2e)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(kLn2Hi), y);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(kLn2Lo), r);

  __m256d poly = _mm256_set1_pd(1.0 / 6227020800.0);  // 1/13!
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 479001600.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 39916800.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 3628800.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 362880.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 40320.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 5040.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 720.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 120.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 24.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 6.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(0.5));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0));

  const __m128i n32 = _mm256_cvtpd_epi32(n);
  __m256i scale = _mm256_cvtepi32_epi64(n32);
  scale = _mm256_slli_epi64(_mm256_add_epi64(scale, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(poly, _mm256_castsi256_pd(scale));
}

struct LaneNeumaier {
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();

  void add(__m256d y) {
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));
    const __m256d t = _mm256_add_pd(sum, y);
    const __m256d sum_dominates =
        _mm256_cmp_pd(_mm256_and_pd(sum, abs_mask), _mm256_and_pd(y, abs_mask), _CMP_GE_OQ);
    const __m256d c_sum = _mm256_add_pd(_mm256_sub_pd(sum, t), y);
    const __m256d c_term = _mm256_add_pd(_mm256_sub_pd(y, t), sum);
    comp = _mm256_add_pd(comp, _mm256_blendv_pd(c_term, c_sum, sum_dominates));
    sum = t;
  }

  double reduce(double tail_sum, double tail_comp) const {
    alignas(32) double s[4];
    alignas(32) double c[4];
    _mm256_store_pd(s, sum);
    _mm256_store_pd(c, comp);
    double total = tail_sum;
    double err = tail_comp;
    for (double x : s) {
      const double t = total + x;
      err += std::abs(total) >= std::abs(x) ? (total - t) + x : (x - t) + total;
      total = t;
    }
    for (double x : c) err += x;
    return total + err;
  }
};

template <class VecTerm, class ScalarTerm>
double accumulate(double first, std::uint64_t count, VecTerm vterm, ScalarTerm sterm) {
  LaneNeumaier acc;
  __m256d x = _mm256_add_pd(_mm256_set1_pd(first), _mm256_set_pd(3.0, 2.0, 1.0, 0.0));
  const __m256d step = _mm256_set1_pd(4.0);
  std::uint64_t j = 0;
  for (; j + 4 <= count; j += 4) {
    acc.add(vterm(x));
    x = _mm256_add_pd(x, step);
  }
  double tail = 0.0;
  double tail_comp = 0.0;
  for (; j < count; ++j) {
    const double y = sterm(first + static_cast<double>(j));
    const double t = tail + y;
    tail_comp += std::abs(tail) >= std::abs(y) ? (tail - t) + y : (y - t) + tail;
    tail = t;
  }
  return acc.reduce(tail, tail_comp);
}

}  // namespace

double power_sum(double first, std::uint64_t count, double alpha) {
  if (alpha == 0.0) return static_cast<double>(count);
  if (alpha == 1.0) {
    return accumulate(first, count, [](__m256d x) { return x; }, [](double x) { return x; });
  }
  if (alpha == 2.0) {
    return accumulate(first, count, [](__m256d x) { return _mm256_mul_pd(x, x); },
                      [](double x) { return x * x; });
  }
  if (alpha == 0.5) {
    return accumulate(first, count, [](__m256d x) { return _mm256_sqrt_pd(x); },
                      [](double x) { return std::sqrt(x); });
  }
  if (alpha == -0.5) {
    return accumulate(
        first, count, [](__m256d x) { return _mm256_div_pd(_mm256_set1_pd(1.0), _mm256_sqrt_pd(x)); },
        [](double x) { return 1.0 / std::sqrt(x); });
  }
  const double last = first + static_cast<double>(count);
  if (std::abs(alpha) * std::log(last) > 700.0) return scalar::power_sum(first, count, alpha);
  const __m256d a = _mm256_set1_pd(alpha);
  return accumulate(first, count, [a](__m256d x) { return exp_pd(_mm256_mul_pd(a, log_pd(x))); },
                    [alpha](double x) { return std::pow(x, alpha); });
}

double log_sum(double first, std::uint64_t count) {
  return accumulate(first, count, [](__m256d x) { return log_pd(x); }, [](double x) { return std::log(x); });
}

}  // namespace guesswork::kernels::avx2
