// Word-by-word enumeration. Deliberately shares nothing with the type-based
// path beyond the distribution itself: no types, no rank-sum kernels.

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "guesswork/error.hpp"
#include "guesswork/exact_oracle.hpp"

namespace guesswork {

namespace {

constexpr double kAgreement = 1e-9;
constexpr double kWindowSlack = 1e-12;

double relative_error(long double naive, double typed) {
  const long double scale = std::abs(naive);
  const long double diff = std::abs(naive - static_cast<long double>(typed));
  return static_cast<double>(scale > 0.0L ? diff / scale : diff);
}

}  // namespace

CrosscheckReport naive_enumeration_crosscheck(const SourceKind& kind, std::uint64_t k, const OracleLimits& limits) {
  if (k == 0) throw Error(Errc::invalid_argument, "word length k must be >= 1");
  const auto& p = kind.p();
  const std::size_t m = p.size();

  long double space = 1.0L;
  for (std::uint64_t i = 0; i < k; ++i) space *= static_cast<long double>(m);
  if (space > static_cast<long double>(limits.max_words)) {
    std::ostringstream msg;
    msg << "word-space too large: " << m << "^" << k << " words exceeds the limit of " << limits.max_words;
    throw Error(Errc::word_space_too_large, msg.str());
  }
  const auto words = static_cast<std::uint64_t>(space);

  const long double h = shannon_entropy(p);
  const long double lo = h - kind.epsilon();
  const long double hi = h + kind.epsilon();
  const bool typical_only = kind.source() != Source::unconditioned;

  // Probabilities of the retained words.
  std::vector<long double> probs;
  probs.reserve(words);
  std::vector<std::uint32_t> letters(k, 0);
  for (std::uint64_t w = 0; w < words; ++w) {
    long double prob = 1.0L;
    long double log_prob = 0.0L;
    bool possible = true;
    for (std::uint32_t a : letters) {
      prob *= p[a];
      if (p[a] == 0.0) {
        possible = false;
      } else {
        log_prob += std::log(static_cast<long double>(p[a]));
      }
    }
    if (typical_only) {
      const long double rate = -log_prob / static_cast<long double>(k);
      if (possible && lo - kWindowSlack <= rate && rate <= hi + kWindowSlack) probs.push_back(prob);
    } else {
      probs.push_back(prob);
    }
    // odometer
    for (std::size_t i = 0; i < k; ++i) {
      if (++letters[i] < m) break;
      letters[i] = 0;
    }
  }
  if (probs.empty()) throw Error(Errc::empty_typical_set, "empty typical set");

  std::sort(probs.begin(), probs.end(), std::greater<>());
  if (kind.source() == Source::conditioned) {
    long double mass = 0.0L;
    for (long double q : probs) mass += q;
    for (long double& q : probs) q /= mass;
  } else if (kind.source() == Source::uniform_typical) {
    std::fill(probs.begin(), probs.end(), 1.0L / static_cast<long double>(probs.size()));
  }

  const ExactGuessTable table = build_guess_table(kind, k, limits);
  CrosscheckReport report;
  report.words = words;
  for (double alpha : {-0.5, 0.5, 1.0, 2.0}) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      acc += probs[i] * std::pow(static_cast<long double>(i + 1), static_cast<long double>(alpha));
    }
    report.max_relative_error = std::max(report.max_relative_error, relative_error(acc, exact_moment(table, alpha)));
  }
  long double acc = 0.0L;
  for (std::size_t i = 0; i < probs.size(); ++i) acc += probs[i] * std::log(static_cast<long double>(i + 1));
  report.max_relative_error = std::max(report.max_relative_error, relative_error(acc, expected_log_guess(table)));
  report.agree = report.max_relative_error <= kAgreement;
  return report;
}

}  // namespace guesswork
