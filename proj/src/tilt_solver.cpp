#include "guesswork/tilt_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "guesswork/error.hpp"

namespace guesswork {

namespace {

// Limits of the constraint value are compared with this slack so that a
// target sitting on a limit up to rounding counts as attained.
constexpr double kLimitSlack = 1e-14;

double beta_of(double alpha) {
  if (!(alpha > -1.0)) {
    std::ostringstream msg;
    msg << "alpha out of domain: tilted family needs alpha > -1, got " << alpha;
    throw Error(Errc::alpha_out_of_domain, msg.str());
  }
  return 1.0 / (1.0 + alpha);
}

// Bisection on a decreasing function f over [lo, hi] with f(lo) >= target >=
// f(hi), run until the bracket stops shrinking in double precision.
template <class F>
double bisect_decreasing(F f, double lo, double hi, double target) {
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(f(lo) - target) <= std::abs(f(hi) - target) ? lo : hi;
}

}  // namespace

TiltedFamily::TiltedFamily(LetterDistribution p) : p_(std::move(p)) {}

std::vector<double> TiltedFamily::weights(double beta) const {
  const auto lp = p_.log_probs();
  double top = kNegInf;
  for (double x : lp) {
    if (x != kNegInf) top = std::max(top, beta * x);
  }
  std::vector<double> w(lp.size(), 0.0);
  double z = 0.0;
  for (std::size_t a = 0; a < lp.size(); ++a) {
    if (lp[a] == kNegInf) continue;
    w[a] = std::exp(beta * lp[a] - top);
    z += w[a];
  }
  for (double& x : w) x /= z;
  return w;
}

TypeVector TiltedFamily::at_beta(double beta) const {
  if (!(beta >= 0.0)) throw Error(Errc::invalid_argument, "tilt exponent must be nonnegative");
  if (beta == 0.0) return uniform_on_support();
  if (std::isinf(beta)) return uniform_on_modes();
  if (beta == 1.0) return TypeVector(std::vector<double>(p_.probs().begin(), p_.probs().end()));
  return TypeVector(weights(beta));
}

TypeVector TiltedFamily::at_alpha(double alpha) const { return at_beta(beta_of(alpha)); }

double TiltedFamily::log_partition(double beta) const {
  const auto lp = p_.log_probs();
  double top = kNegInf;
  for (double x : lp) {
    if (x != kNegInf) top = std::max(top, beta * x);
  }
  double z = 0.0;
  for (double x : lp) {
    if (x != kNegInf) z += std::exp(beta * x - top);
  }
  return top + std::log(z);
}

double TiltedFamily::constraint_value(double beta) const {
  if (beta == 0.0) return constraint_at_zero();
  if (std::isinf(beta)) return constraint_at_infinity();
  const auto w = weights(beta);
  double c = 0.0;
  for (std::size_t a = 0; a < w.size(); ++a) {
    if (w[a] > 0.0) c -= w[a] * p_.log_prob(a);
  }
  return c;
}

TypeVector TiltedFamily::uniform_on_support() const {
  std::vector<double> u(p_.size(), 0.0);
  const double share = 1.0 / static_cast<double>(p_.support_size());
  for (std::size_t a = 0; a < u.size(); ++a) {
    if (p_[a] > 0.0) u[a] = share;
  }
  return TypeVector(std::move(u));
}

TypeVector TiltedFamily::uniform_on_modes() const {
  std::vector<double> u(p_.size(), 0.0);
  std::size_t modes = 0;
  for (std::size_t a = 0; a < u.size(); ++a) {
    if (p_[a] == p_.max_prob()) ++modes;
  }
  for (std::size_t a = 0; a < u.size(); ++a) {
    if (p_[a] == p_.max_prob()) u[a] = 1.0 / static_cast<double>(modes);
  }
  return TypeVector(std::move(u));
}

double TiltedFamily::constraint_at_zero() const {
  double c = 0.0;
  for (double x : p_.log_probs()) {
    if (x != kNegInf) c -= x;
  }
  return c / static_cast<double>(p_.support_size());
}

double TiltedFamily::constraint_at_infinity() const { return -std::log(p_.max_prob()); }

TypeVector tilted_type(const LetterDistribution& p, double alpha) {
  return TiltedFamily(p).at_beta(beta_of(alpha));
}

double eta(const LetterDistribution& p, double alpha) {
  return TiltedFamily(p).constraint_value(beta_of(alpha));
}

double BoundaryTypes::alpha_minus() const noexcept {
  return beta_minus == 0.0 ? kInf : 1.0 / beta_minus - 1.0;
}

double BoundaryTypes::alpha_plus() const noexcept {
  return std::isinf(beta_plus) ? -1.0 : 1.0 / beta_plus - 1.0;
}

BoundaryTypes solve_boundaries(const LetterDistribution& p, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw Error(Errc::invalid_argument, "epsilon must be positive");
  const TiltedFamily family(p);
  const double h = shannon_entropy(p);
  const auto c = [&](double beta) { return family.constraint_value(beta); };

  BoundaryTypes out{family.uniform_on_support(), family.uniform_on_modes()};

  // Upper boundary h(p) + eps lies between beta = 0 and beta = 1.
  const double upper_target = h + epsilon;
  const double c0 = family.constraint_at_zero();
  if (upper_target <= c0 + kLimitSlack && !p.is_uniform_on_support()) {
    out.exists_minus = true;
    if (upper_target >= c0) {
      out.beta_minus = 0.0;
    } else {
      out.beta_minus = bisect_decreasing(c, 0.0, 1.0, upper_target);
      out.l_minus = family.at_beta(out.beta_minus);
    }
  } else {
    out.clamped_to_log_m = true;
  }

  // Lower boundary h(p) - eps lies between beta = 1 and beta = inf.
  const double lower_target = h - epsilon;
  const double c_inf = family.constraint_at_infinity();
  if (lower_target >= c_inf - kLimitSlack && !p.is_uniform_on_support()) {
    out.exists_plus = true;
    if (lower_target <= c_inf) {
      out.beta_plus = kInf;
    } else {
      double lo = 1.0;
      double hi = 2.0;
      while (c(hi) > lower_target && hi < 1e300) {
        lo = hi;
        hi *= 2.0;
      }
      out.beta_plus = bisect_decreasing(c, lo, hi, lower_target);
      out.l_plus = family.at_beta(out.beta_plus);
    }
  }
  return out;
}

BoundaryTypes boundary_types(const LetterDistribution& p, double epsilon) {
  BoundaryTypes out = solve_boundaries(p, epsilon);
  if (!out.exists_plus && !p.is_uniform_on_support()) {
    std::ostringstream msg;
    msg.precision(9);
    msg << "epsilon too large for l_plus: h(p) - epsilon = " << shannon_entropy(p) - epsilon
        << " is below -log max p = " << -std::log(p.max_prob());
    throw Error(Errc::epsilon_too_large_for_l_plus, msg.str());
  }
  return out;
}

double admissible_epsilon_bound(const LetterDistribution& p) {
  if (p.is_uniform_on_support()) return 0.0;
  const double h = shannon_entropy(p);
  const TiltedFamily family(p);
  return std::min(h - family.constraint_at_infinity(), family.constraint_at_zero() - h);
}

const char* to_string(Regime r) noexcept {
  switch (r) {
    case Regime::lower_clamp: return "lower_clamp";
    case Regime::interior: return "interior";
    case Regime::upper_clamp: return "upper_clamp";
  }
  return "?";
}

ClampedOptimum l_star(const LetterDistribution& p, double epsilon, const BoundaryTypes& boundaries,
                      double alpha) {
  const double beta = beta_of(alpha);
  const TiltedFamily family(p);
  const double h = shannon_entropy(p);
  const double e = family.constraint_value(beta);
  if (boundaries.exists_plus && e <= h - epsilon) return {boundaries.l_plus, Regime::lower_clamp};
  if (boundaries.exists_minus && e >= h + epsilon) return {boundaries.l_minus, Regime::upper_clamp};
  return {family.at_beta(beta), Regime::interior};
}

ClampedOptimum l_star(const LetterDistribution& p, double epsilon, double alpha) {
  return l_star(p, epsilon, boundary_types(p, epsilon), alpha);
}

}  // namespace guesswork
