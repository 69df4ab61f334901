#include <cmath>

#include "guesswork/kernels.hpp"

namespace guesswork::kernels::scalar {

namespace {

struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

template <class F>
double accumulate(double first, std::uint64_t count, F term) {
  Neumaier acc;
  for (std::uint64_t j = 0; j < count; ++j) acc.add(term(first + static_cast<double>(j)));
  return acc.value();
}

}  // namespace

double power_sum(double first, std::uint64_t count, double alpha) {
  if (alpha == 0.0) return static_cast<double>(count);
  if (alpha == 1.0) return accumulate(first, count, [](double x) { return x; });
  if (alpha == 2.0) return accumulate(first, count, [](double x) { return x * x; });
  if (alpha == 0.5) return accumulate(first, count, [](double x) { return std::sqrt(x); });
  if (alpha == -0.5) return accumulate(first, count, [](double x) { return 1.0 / std::sqrt(x); });
  return accumulate(first, count, [alpha](double x) { return std::pow(x, alpha); });
}

double log_sum(double first, std::uint64_t count) {
  return accumulate(first, count, [](double x) { return std::log(x); });
}

}  // namespace guesswork::kernels::scalar
