#pragma once

// Scaled cumulant generating functions of (1/k) log G for the unconditioned
// source, the source conditioned on its typical set, and the uniform law on
// the typical set; their Legendre-Fenchel rate functions; and the
// large-deviation approximation of the Guesswork distribution.

#include <cstdint>
#include <optional>
#include <string>

#include "guesswork/entropy_core.hpp"
#include "guesswork/tilt_solver.hpp"

namespace guesswork {

enum class Source { unconditioned, conditioned, uniform_typical };

const char* to_string(Source s) noexcept;

class SourceKind {
 public:
  static SourceKind unconditioned(LetterDistribution p);
  static SourceKind conditioned(LetterDistribution p, double epsilon);
  static SourceKind uniform_typical(LetterDistribution p, double epsilon);

  Source source() const noexcept { return source_; }
  const LetterDistribution& p() const noexcept { return p_; }
  // Zero for the unconditioned source.
  double epsilon() const noexcept { return epsilon_; }

 private:
  SourceKind(Source s, LetterDistribution p, double epsilon);

  Source source_;
  LetterDistribution p_;
  double epsilon_;
};

// Immutable asymptotic fingerprint of one source: Lambda on the whole real
// line, its slope, the most-likely-word exponent g and the plateau width
// gamma.
class ScgfModel {
 public:
  // Throws Errc::epsilon_too_large_for_l_plus for conditioned sources whose
  // lower boundary type does not exist.
  explicit ScgfModel(SourceKind kind);

  const SourceKind& kind() const noexcept { return kind_; }

  double operator()(double alpha) const;

  // Lambda'(alpha) for alpha > -1. On the tilted family the envelope
  // theorem gives Lambda'(alpha) = h(l*(alpha)).
  double slope(double alpha) const;

  // alpha Lambda'(alpha) - Lambda(alpha) = D(l*(alpha) || p), the value of the
  // Legendre-Fenchel transform at x = Lambda'(alpha).
  double conjugate_at(double alpha) const;

  double g() const noexcept { return g_; }
  // Lambda'(-1 + 1e-7).
  double gamma() const;
  // 0 (or log #modes) unconditioned, h(l+) conditioned, h(l-) uniform.
  double gamma_closed_form() const;

  // sup_alpha Lambda'(alpha), and the limit of x alpha - Lambda(alpha) there.
  double slope_ceiling() const noexcept { return ceiling_; }
  double ceiling_rate() const noexcept { return ceiling_rate_; }

  double entropy() const noexcept { return h_; }
  // h(l-), or log |supp p| when the upper boundary is clamped.
  double h_minus() const noexcept { return h_minus_; }
  const std::optional<BoundaryTypes>& boundaries() const noexcept { return boundaries_; }
  // Clamped optimiser; conditioned sources only.
  ClampedOptimum optimum(double alpha) const;

 private:
  SourceKind kind_;
  TiltedFamily family_;
  std::optional<BoundaryTypes> boundaries_;
  double h_ = 0.0;
  double h_minus_ = 0.0;
  double g_ = 0.0;
  double ceiling_ = 0.0;
  double ceiling_rate_ = 0.0;
};

double scgf(const SourceKind& kind, double alpha);

struct GrowthExponents {
  double e_log_G;  // Lambda'(0), central difference with step 1e-6
  double e_G;      // Lambda(1)
  double g;
  double gamma;
  // A = eta(1) - (h(p) + eps); conditioned sources only.
  std::optional<double> regime_indicator;
  bool clamped_to_log_m = false;
};

GrowthExponents growth_exponents(const SourceKind& kind);

class RateFunction {
 public:
  explicit RateFunction(ScgfModel model) : model_(std::move(model)) {}

  // Lambda*(x); kInf outside the finite domain.
  double operator()(double x) const;

  const ScgfModel& model() const noexcept { return model_; }

 private:
  ScgfModel model_;
};

double rate_function(const SourceKind& kind, double x);

// (1/n) exp(-k Lambda*(log(n)/k)) for 1 <= n <= m^k. On the plateau
// log(n)/k <= gamma the expression is evaluated in its collapsed form
// exp(k g).
double guesswork_pmf_approx(const RateFunction& rate, std::uint64_t k, double n);
double guesswork_pmf_approx(const SourceKind& kind, std::uint64_t k, double n);

// Closed forms of the binary source with P(letter 0) = p0 > 1/2.
struct BinaryClosedForms {
  double p0;
  double epsilon;
  double l_minus0;
  double l_plus0;
  double h_p;
  double h_minus;
  double h_plus;
  double lambda_w1;      // 2 log(sqrt(p0) + sqrt(1 - p0))
  double eta1;
  double kl_minus;       // D(l- || p)
  double regime_indicator;  // A = eta(1) - (h(p) + eps)
  double lambda_we1;     // conditioned growth rate of E G
  double top;            // h(l-) - h(p)
  double middle;         // Lambda_U(1) - Lambda_We(1)
  double bottom;         // h(l-) - Lambda_W(1)
};

// Upper end of the admissible epsilon range (0, log(p0/(1-p0)) min(p0-1/2, 1-p0)).
double binary_epsilon_bound(double p0);

// Throws Errc::epsilon_inadmissible outside the admissible range.
BinaryClosedForms binary_closed_forms(double p0, double epsilon);

}  // namespace guesswork
