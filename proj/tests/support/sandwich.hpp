#pragma once

// Method-of-types bounds on exact finite-k quantities, in log form.
// M = max over typical k-types l of N_k(l)^(1+alpha) P_l / P(T), where P_l is
// the probability of one word of type l and T the typical set. For the
// conditioned source:
//   alpha > 0:        M / (1+alpha) <= E G^alpha <= (k+1)^(m(1+alpha)) M
//   -1 < alpha <= 0:  M <= E G^alpha <= (k+1)^m M / (1+alpha)

#include <algorithm>
#include <cmath>

#include "guesswork/exact_oracle.hpp"

namespace support {

struct Bracket {
  double lower;  // log of the lower bound
  double value;  // log E G^alpha
  double upper;  // log of the upper bound
  bool holds(double slack = 1e-12) const { return lower <= value + slack && value <= upper + slack; }
};

inline Bracket moment_sandwich(const guesswork::LetterDistribution& p, double epsilon, std::uint64_t k,
                               double alpha) {
  using namespace guesswork;
  const auto census = typical_set_census(p, epsilon, k);
  double log_m = kNegInf;
  for (std::size_t i = 0; i < census.types.size(); ++i) {
    double lp = 0.0;
    const auto counts = census.types[i].counts();
    for (std::size_t a = 0; a < counts.size(); ++a) {
      if (counts[a] > 0) lp += static_cast<double>(counts[a]) * p.log_prob(a);
    }
    log_m = std::max(log_m, (1.0 + alpha) * log_of(census.type_counts[i]) + lp - census.log_prob_mass);
  }
  const double log_k1 = std::log(static_cast<double>(k + 1));
  const double m = static_cast<double>(p.size());
  const auto table = build_guess_table(SourceKind::conditioned(p, epsilon), k);
  Bracket b{};
  b.value = log_moment(table, alpha);
  if (alpha > 0.0) {
    b.lower = log_m - std::log1p(alpha);
    b.upper = log_m + m * (1.0 + alpha) * log_k1;
  } else {
    b.lower = log_m;
    b.upper = log_m + m * log_k1 - std::log1p(alpha);
  }
  return b;
}

// max_l N_k(l) <= |T| <= (k+1)^m max_l N_k(l), checked on exact integers.
inline bool union_bound_holds(const guesswork::LetterDistribution& p, double epsilon, std::uint64_t k) {
  using guesswork::BigInt;
  const auto c = guesswork::typical_set_census(p, epsilon, k);
  const BigInt factor = boost::multiprecision::pow(BigInt(k + 1), static_cast<unsigned>(p.size()));
  return c.max_type_count <= c.cardinality && c.cardinality <= factor * c.max_type_count;
}

}  // namespace support
