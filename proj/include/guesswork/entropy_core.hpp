#pragma once

// Alphabets, letter distributions, empirical types and the entropy
// functionals shared by every other part of the library. All logarithms are
// natural; entropies are in nats.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "guesswork/bigint.hpp"

namespace guesswork {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Tolerance on the unit sum of probability vectors.
inline constexpr double kSimplexTolerance = 1e-12;

// Probability law of a single letter over the alphabet {0, ..., m-1}.
// Zero entries are allowed; every functional restricts itself to the support.
class LetterDistribution {
 public:
  explicit LetterDistribution(std::vector<double> probs);

  // Accepts vectors whose sum is within `tolerance` of one and rescales them
  // onto the simplex. Anything further off is rejected.
  static LetterDistribution renormalized(std::vector<double> probs, double tolerance = 1e-6);

  std::span<const double> probs() const noexcept { return probs_; }
  std::span<const double> log_probs() const noexcept { return log_probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t a) const { return probs_[a]; }
  double log_prob(std::size_t a) const { return log_probs_[a]; }

  double max_prob() const noexcept { return max_prob_; }
  std::size_t support_size() const noexcept { return support_size_; }
  // True when every letter of positive probability has the same probability.
  bool is_uniform_on_support() const noexcept;

 private:
  std::vector<double> probs_;
  std::vector<double> log_probs_;
  double max_prob_ = 0.0;
  std::size_t support_size_ = 0;
};

// Empirical letter-frequency vector. When built from counts it carries its
// grain k and the exact integer counts, so that k * freqs[a] is an integer.
class TypeVector {
 public:
  explicit TypeVector(std::vector<double> freqs);

  static TypeVector from_counts(std::vector<std::uint64_t> counts);
  // Throws Errc::not_a_k_type unless every k * freqs[a] is (numerically) an
  // integer summing to k.
  static TypeVector grained(std::span<const double> freqs, std::uint64_t k);

  std::span<const double> freqs() const noexcept { return freqs_; }
  std::size_t size() const noexcept { return freqs_.size(); }
  double operator[](std::size_t a) const { return freqs_[a]; }

  std::optional<std::uint64_t> grain() const noexcept { return grain_; }
  // Letter counts; empty unless the vector is grained.
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }

  std::string to_string() const;

  friend bool operator==(const TypeVector&, const TypeVector&) = default;

 private:
  TypeVector() = default;

  std::vector<double> freqs_;
  std::optional<std::uint64_t> grain_;
  std::vector<std::uint64_t> counts_;
};

class Word {
 public:
  Word(std::vector<std::uint32_t> letters, std::size_t alphabet_size);

  std::span<const std::uint32_t> letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  std::size_t alphabet_size() const noexcept { return alphabet_size_; }

 private:
  std::vector<std::uint32_t> letters_;
  std::size_t alphabet_size_;
};

struct Interval {
  double lo;
  double hi;
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

// Typical-set parameters. The window on -(1/k) log P(W_k = w) is always
// recomputed from p and epsilon, never stored.
class TypicalSetSpec {
 public:
  TypicalSetSpec(LetterDistribution p, double epsilon, std::uint64_t k);

  const LetterDistribution& p() const noexcept { return p_; }
  double epsilon() const noexcept { return epsilon_; }
  std::uint64_t k() const noexcept { return k_; }
  Interval window() const;

 private:
  LetterDistribution p_;
  double epsilon_;
  std::uint64_t k_;
};

double shannon_entropy(std::span<const double> l);
inline double shannon_entropy(const TypeVector& l) { return shannon_entropy(l.freqs()); }
inline double shannon_entropy(const LetterDistribution& p) { return shannon_entropy(p.probs()); }

// D(l || p). Throws Errc::absolute_continuity when l charges a letter that
// p does not.
double kl_divergence(std::span<const double> l, const LetterDistribution& p);
inline double kl_divergence(const TypeVector& l, const LetterDistribution& p) {
  return kl_divergence(l.freqs(), p);
}

// -sum_a l_a log p_a, the per-letter log-probability of words of type l.
// +inf when l charges a zero-probability letter.
double cross_entropy(std::span<const double> l, const LetterDistribution& p);
inline double cross_entropy(const TypeVector& l, const LetterDistribution& p) {
  return cross_entropy(l.freqs(), p);
}

// Renyi entropy rate of an i.i.d. source; beta == 1 gives the Shannon rate.
double renyi_rate(const LetterDistribution& p, double beta);

// log P(W_k = w); kNegInf for words using a zero-probability letter.
double word_log_prob(const LetterDistribution& p, const Word& w);

TypeVector word_type(const Word& w);

// N_k(l) = k! / prod_a (k l_a)!, exact.
BigInt type_count(const TypeVector& l);
// log N_k(l) through log-gamma; usable at any k.
double log_type_count(const TypeVector& l);

inline constexpr std::uint64_t kExactCountLimit = 20000;

struct TypeCount {
  std::optional<BigInt> exact;
  double log_count;
  bool approximate;
};

// Exact count up to grain `exact_limit`, log-gamma beyond it (flagged).
TypeCount count_type(const TypeVector& l, std::uint64_t exact_limit = kExactCountLimit);

inline constexpr std::uint64_t kDefaultMaxTypes = 10'000'000;

// |L_k| = C(k + m - 1, m - 1).
BigInt number_of_types(std::uint64_t k, std::size_t m);

// All k-types over m letters, lexicographically ascending in the count
// vector. Throws Errc::type_space_too_large past `max_types`.
std::vector<TypeVector> enumerate_types(std::uint64_t k, std::size_t m,
                                        std::uint64_t max_types = kDefaultMaxTypes);

Interval typical_window(const TypicalSetSpec& spec);
Interval typical_window(const LetterDistribution& p, double epsilon);

// Membership of l in the closed window [h(p) - eps, h(p) + eps] for
// -sum_a l_a log p_a. Applies to grained and ungrained l alike.
bool is_typical_type(const LetterDistribution& p, double epsilon, std::span<const double> l);
inline bool is_typical_type(const TypicalSetSpec& spec, const TypeVector& l) {
  return is_typical_type(spec.p(), spec.epsilon(), l.freqs());
}

}  // namespace guesswork
