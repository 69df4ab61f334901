#pragma once

// The clamped optimiser with its thresholds taken literally as -h(p) - eps
// and -h(p) + eps. eta is positive, so the lower clamp can never fire and the
// upper clamp fires for every alpha, including alpha = 0. Kept only to show
// that this reading contradicts Lambda'(0) = h(p).

#include "guesswork/tilt_solver.hpp"

namespace support {

inline guesswork::TypeVector printed_threshold_optimum(const guesswork::LetterDistribution& p, double epsilon,
                                                       const guesswork::BoundaryTypes& b, double alpha) {
  const double h = guesswork::shannon_entropy(p);
  const double e = guesswork::eta(p, alpha);
  if (e <= -h - epsilon) return b.l_plus;
  if (e >= -h + epsilon) return b.l_minus;
  return guesswork::tilted_type(p, alpha);
}

// alpha h(l) - D(l || p) along the printed selector.
inline double printed_threshold_scgf(const guesswork::LetterDistribution& p, double epsilon,
                                     const guesswork::BoundaryTypes& b, double alpha) {
  const auto l = printed_threshold_optimum(p, epsilon, b, alpha);
  return alpha * guesswork::shannon_entropy(l) - guesswork::kl_divergence(l, p);
}

}  // namespace support
