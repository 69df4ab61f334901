#pragma once

// Exponentially tilted letter laws l_a proportional to p_a^beta with
// beta = 1/(1+alpha), and the maximum-entropy types on the two boundaries of
// the typical log-probability window.

#include <optional>

#include "guesswork/entropy_core.hpp"

namespace guesswork {

// The one-parameter family beta -> p^beta / sum_b p_b^beta. Evaluation is done
// in the log domain so that very large or very small beta neither overflows
// nor underflows the normalizer.
class TiltedFamily {
 public:
  explicit TiltedFamily(LetterDistribution p);

  const LetterDistribution& distribution() const noexcept { return p_; }

  // beta in (0, inf). beta == 1 returns p itself.
  TypeVector at_beta(double beta) const;
  TypeVector at_alpha(double alpha) const;

  // log sum_a p_a^beta
  double log_partition(double beta) const;
  // -sum_a l_a log p_a for the tilted law at beta; decreasing in beta.
  double constraint_value(double beta) const;

  // beta -> 0: uniform on the support of p.
  TypeVector uniform_on_support() const;
  // beta -> inf: uniform on argmax_a p_a.
  TypeVector uniform_on_modes() const;
  double constraint_at_zero() const;      // mean of -log p_a over the support
  double constraint_at_infinity() const;  // -log max_a p_a

 private:
  std::vector<double> weights(double beta) const;

  LetterDistribution p_;
};

// Throws Errc::alpha_out_of_domain for alpha <= -1.
TypeVector tilted_type(const LetterDistribution& p, double alpha);

// eta(alpha) = -sum_a l^W_a(alpha) log p_a.
double eta(const LetterDistribution& p, double alpha);

struct BoundaryTypes {
  TypeVector l_minus;  // on -sum l log p = h(p) + eps, or uniform on support when clamped
  TypeVector l_plus;   // on -sum l log p = h(p) - eps, or uniform on modes when absent
  bool exists_minus = false;
  bool exists_plus = false;
  bool clamped_to_log_m = false;
  // Tilt exponents of the two solutions; beta_plus is +inf when l_plus is the
  // limiting mode-uniform law, beta_minus is 0 when clamped.
  double beta_minus = 0.0;
  double beta_plus = kInf;

  // Regime breakpoints alpha = 1/beta - 1 of the clamped optimizer.
  double alpha_minus() const noexcept;
  double alpha_plus() const noexcept;
};

// Solves both boundary problems and reports existence through flags only.
BoundaryTypes solve_boundaries(const LetterDistribution& p, double epsilon);

// As solve_boundaries, but throws Errc::epsilon_too_large_for_l_plus when
// l_plus does not exist for a source that is not uniform on its support.
BoundaryTypes boundary_types(const LetterDistribution& p, double epsilon);

// Supremum of the epsilons for which both boundary types exist:
// min(h(p) + log max p, c0 - h(p)) where c0 = -mean_{a in supp} log p_a is the
// constraint value of the uniform law on the support. Zero for sources
// uniform on their support.
double admissible_epsilon_bound(const LetterDistribution& p);

enum class Regime { lower_clamp, interior, upper_clamp };

const char* to_string(Regime r) noexcept;

struct ClampedOptimum {
  TypeVector l_star;
  Regime regime;
};

// The maximiser of alpha h(l) - D(l||p) over the typical window: l_plus when
// eta(alpha) <= h(p) - eps, l_minus when eta(alpha) >= h(p) + eps, and the
// tilted law in between.
ClampedOptimum l_star(const LetterDistribution& p, double epsilon, const BoundaryTypes& boundaries,
                      double alpha);
ClampedOptimum l_star(const LetterDistribution& p, double epsilon, double alpha);

}  // namespace guesswork
