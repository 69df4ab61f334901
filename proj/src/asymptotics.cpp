#include "guesswork/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "guesswork/error.hpp"

namespace guesswork {

namespace {

constexpr double kGammaOffset = 1e-7;
constexpr double kDerivativeStep = 1e-6;
// x within this distance of the slope ceiling is evaluated at the ceiling.
constexpr double kCeilingSlack = 1e-13;
constexpr double kDomainSlack = 1e-12;

double binary_entropy(double q) {
  double h = 0.0;
  if (q > 0.0) h -= q * std::log(q);
  if (q < 1.0) h -= (1.0 - q) * std::log1p(-q);
  return h;
}

std::size_t mode_count(const LetterDistribution& p) {
  return static_cast<std::size_t>(
      std::count(p.probs().begin(), p.probs().end(), p.max_prob()));
}

}  // namespace

const char* to_string(Source s) noexcept {
  switch (s) {
    case Source::unconditioned: return "unconditioned";
    case Source::conditioned: return "conditioned";
    case Source::uniform_typical: return "uniform_typical";
  }
  return "?";
}

// ------------------------------------------------------------ SourceKind --

SourceKind::SourceKind(Source s, LetterDistribution p, double epsilon)
    : source_(s), p_(std::move(p)), epsilon_(epsilon) {
  if (s != Source::unconditioned && (!(epsilon_ > 0.0) || !std::isfinite(epsilon_))) {
    throw Error(Errc::invalid_argument, "typical-set sources need epsilon > 0");
  }
}

SourceKind SourceKind::unconditioned(LetterDistribution p) {
  return SourceKind(Source::unconditioned, std::move(p), 0.0);
}

SourceKind SourceKind::conditioned(LetterDistribution p, double epsilon) {
  return SourceKind(Source::conditioned, std::move(p), epsilon);
}

SourceKind SourceKind::uniform_typical(LetterDistribution p, double epsilon) {
  return SourceKind(Source::uniform_typical, std::move(p), epsilon);
}

// ------------------------------------------------------------- ScgfModel --

ScgfModel::ScgfModel(SourceKind kind) : kind_(std::move(kind)), family_(kind_.p()) {
  const auto& p = kind_.p();
  h_ = shannon_entropy(p);
  const double log_support = std::log(static_cast<double>(p.support_size()));
  const TypeVector uniform = family_.uniform_on_support();

  switch (kind_.source()) {
    case Source::unconditioned:
      g_ = std::log(p.max_prob());
      ceiling_ = log_support;
      ceiling_rate_ = kl_divergence(uniform, p);
      h_minus_ = log_support;
      break;
    case Source::uniform_typical: {
      boundaries_ = solve_boundaries(p, kind_.epsilon());
      h_minus_ = boundaries_->exists_minus ? shannon_entropy(boundaries_->l_minus) : log_support;
      g_ = -h_minus_;
      ceiling_ = h_minus_;
      ceiling_rate_ = 0.0;
      break;
    }
    case Source::conditioned: {
      boundaries_ = boundary_types(p, kind_.epsilon());
      h_minus_ = boundaries_->exists_minus ? shannon_entropy(boundaries_->l_minus) : log_support;
      g_ = std::min(-h_ + kind_.epsilon(), std::log(p.max_prob()));
      ceiling_ = h_minus_;
      ceiling_rate_ = boundaries_->exists_minus ? kl_divergence(boundaries_->l_minus, p)
                                                : kl_divergence(uniform, p);
      break;
    }
  }
}

ClampedOptimum ScgfModel::optimum(double alpha) const {
  if (kind_.source() != Source::conditioned) {
    throw Error(Errc::invalid_argument, "clamped optimiser is defined for conditioned sources only");
  }
  return l_star(kind_.p(), kind_.epsilon(), *boundaries_, alpha);
}

double ScgfModel::operator()(double alpha) const {
  if (alpha <= -1.0) return g_;
  switch (kind_.source()) {
    case Source::unconditioned:
      return (1.0 + alpha) * family_.log_partition(1.0 / (1.0 + alpha));
    case Source::uniform_typical:
      return alpha * h_minus_;
    case Source::conditioned: {
      const ClampedOptimum opt = optimum(alpha);
      return alpha * shannon_entropy(opt.l_star) - kl_divergence(opt.l_star, kind_.p());
    }
  }
  return 0.0;
}

double ScgfModel::slope(double alpha) const {
  if (alpha <= -1.0) return 0.0;
  switch (kind_.source()) {
    case Source::unconditioned: return shannon_entropy(family_.at_alpha(alpha));
    case Source::uniform_typical: return h_minus_;
    case Source::conditioned: return shannon_entropy(optimum(alpha).l_star);
  }
  return 0.0;
}

double ScgfModel::conjugate_at(double alpha) const {
  switch (kind_.source()) {
    case Source::unconditioned: return kl_divergence(family_.at_alpha(alpha), kind_.p());
    case Source::uniform_typical: return 0.0;
    case Source::conditioned: return kl_divergence(optimum(alpha).l_star, kind_.p());
  }
  return 0.0;
}

double ScgfModel::gamma() const { return slope(-1.0 + kGammaOffset); }

double ScgfModel::gamma_closed_form() const {
  switch (kind_.source()) {
    case Source::unconditioned:
      return std::log(static_cast<double>(mode_count(kind_.p())));
    case Source::uniform_typical:
      return h_minus_;
    case Source::conditioned:
      return boundaries_->exists_plus ? shannon_entropy(boundaries_->l_plus)
                                      : std::log(static_cast<double>(mode_count(kind_.p())));
  }
  return 0.0;
}

double scgf(const SourceKind& kind, double alpha) { return ScgfModel(kind)(alpha); }

GrowthExponents growth_exponents(const SourceKind& kind) {
  const ScgfModel model(kind);
  GrowthExponents out{};
  out.e_log_G = (model(kDerivativeStep) - model(-kDerivativeStep)) / (2.0 * kDerivativeStep);
  out.e_G = model(1.0);
  out.g = model.g();
  out.gamma = model.gamma();
  if (kind.source() == Source::conditioned) {
    out.regime_indicator = eta(kind.p(), 1.0) - (model.entropy() + kind.epsilon());
  }
  if (model.boundaries()) out.clamped_to_log_m = model.boundaries()->clamped_to_log_m;
  return out;
}

// --------------------------------------------------------- RateFunction --

double RateFunction::operator()(double x) const {
  const double log_m = std::log(static_cast<double>(model_.kind().p().size()));
  if (!(x >= 0.0) || x > log_m + kDomainSlack) return kInf;
  const double gamma = model_.gamma_closed_form();
  if (x <= gamma) return -x - model_.g();
  const double ceiling = model_.slope_ceiling();
  if (x > ceiling + kCeilingSlack) return kInf;
  if (x >= ceiling - kCeilingSlack) return model_.ceiling_rate();

  // Lambda' is continuous and nondecreasing on (-1, inf); bracket the
  // solution of Lambda'(alpha) = x, then bisect.
  double lo = -1.0;
  double hi = 1.0;
  while (model_.slope(hi) < x) {
    lo = hi;
    hi = 2.0 * hi + 1.0;
    if (hi > 1e12) return model_.ceiling_rate();
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (model_.slope(mid) < x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double alpha = 0.5 * (lo + hi);
  return alpha * (x - model_.slope(alpha)) + model_.conjugate_at(alpha);
}

double rate_function(const SourceKind& kind, double x) { return RateFunction(ScgfModel(kind))(x); }

double guesswork_pmf_approx(const RateFunction& rate, std::uint64_t k, double n) {
  const auto& model = rate.model();
  const double log_m = std::log(static_cast<double>(model.kind().p().size()));
  if (k == 0) throw Error(Errc::invalid_argument, "word length must be >= 1");
  if (!(n >= 1.0) || std::log(n) > static_cast<double>(k) * log_m + kDomainSlack) {
    throw Error(Errc::invalid_argument, "guess index must lie in [1, m^k]");
  }
  const double kd = static_cast<double>(k);
  const double x = std::log(n) / kd;
  // On the plateau (1/n) exp(-k(-x - g)) = exp(k g) exactly.
  if (x <= model.gamma_closed_form()) return std::exp(kd * model.g());
  const double r = rate(x);
  if (std::isinf(r)) return 0.0;
  return std::exp(-std::log(n) - kd * r);
}

double guesswork_pmf_approx(const SourceKind& kind, std::uint64_t k, double n) {
  return guesswork_pmf_approx(RateFunction(ScgfModel(kind)), k, n);
}

// ----------------------------------------------------------------- binary --

double binary_epsilon_bound(double p0) {
  if (!(p0 > 0.5 && p0 < 1.0)) {
    throw Error(Errc::epsilon_inadmissible, "epsilon inadmissible: binary closed forms need p0 in (1/2, 1)");
  }
  return std::log(p0 / (1.0 - p0)) * std::min(p0 - 0.5, 1.0 - p0);
}

BinaryClosedForms binary_closed_forms(double p0, double epsilon) {
  const double bound = binary_epsilon_bound(p0);
  if (!(epsilon > 0.0 && epsilon < bound)) {
    std::ostringstream msg;
    msg.precision(9);
    msg << "epsilon inadmissible: need epsilon in (0, " << bound << ") for p0 = " << p0;
    throw Error(Errc::epsilon_inadmissible, msg.str());
  }
  BinaryClosedForms out{};
  out.p0 = p0;
  out.epsilon = epsilon;
  const double q0 = 1.0 - p0;
  const double log_ratio = std::log(p0 / q0);
  out.l_minus0 = p0 - epsilon / log_ratio;
  out.l_plus0 = p0 + epsilon / log_ratio;
  out.h_p = binary_entropy(p0);
  out.h_minus = binary_entropy(out.l_minus0);
  out.h_plus = binary_entropy(out.l_plus0);

  const double r0 = std::sqrt(p0);
  const double r1 = std::sqrt(q0);
  out.lambda_w1 = 2.0 * std::log(r0 + r1);
  out.eta1 = (r0 * -std::log(p0) + r1 * -std::log(q0)) / (r0 + r1);
  out.kl_minus = out.l_minus0 * std::log(out.l_minus0 / p0) +
                 (1.0 - out.l_minus0) * std::log((1.0 - out.l_minus0) / q0);
  out.regime_indicator = out.eta1 - (out.h_p + epsilon);
  const bool upper_clamped = out.eta1 > out.h_p + epsilon;
  out.lambda_we1 = upper_clamped ? out.h_minus - out.kl_minus : out.lambda_w1;
  out.top = out.h_minus - out.h_p;
  out.middle = upper_clamped ? out.kl_minus : out.h_minus - out.lambda_w1;
  out.bottom = out.h_minus - out.lambda_w1;
  return out;
}

}  // namespace guesswork
