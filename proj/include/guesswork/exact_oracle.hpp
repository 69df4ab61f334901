#pragma once

// Exact finite-k ground truth. For an i.i.d. source the probability of a word
// depends only on its type, so the optimal guessing order is a sequence of
// type-class blocks of consecutive guess indices. Moments of the Guesswork
// are then sums over O(#types) blocks instead of m^k words.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "guesswork/asymptotics.hpp"
#include "guesswork/bigint.hpp"
#include "guesswork/entropy_core.hpp"

namespace guesswork {

struct OracleLimits {
  std::uint64_t max_types = kDefaultMaxTypes;
  std::uint64_t max_words = std::uint64_t{1} << 22;
};

struct GuessBlock {
  double log_word_prob;  // per-word log probability under the table's law
  BigInt start;          // first guess index, 1-based
  BigInt length;         // number of words in the block
  TypeVector type;

  double word_prob() const;
};

class ExactGuessTable {
 public:
  ExactGuessTable(SourceKind kind, std::uint64_t k, std::vector<GuessBlock> blocks);

  const SourceKind& kind() const noexcept { return kind_; }
  std::uint64_t k() const noexcept { return k_; }
  std::span<const GuessBlock> blocks() const noexcept { return blocks_; }
  // m^k for the unconditioned source, |T^eps_k| otherwise.
  const BigInt& total() const noexcept { return total_; }
  // Number of words sharing the largest probability.
  BigInt modal_count() const;

 private:
  SourceKind kind_;
  std::uint64_t k_;
  std::vector<GuessBlock> blocks_;
  BigInt total_;
};

// Blocks sorted by per-word probability, descending; equal probabilities keep
// lexicographic type order. Throws Errc::empty_typical_set when a
// typical-set source has no typical k-type.
ExactGuessTable build_guess_table(const SourceKind& kind, std::uint64_t k, const OracleLimits& limits = {});

// log E G^alpha
double log_moment(const ExactGuessTable& table, double alpha);
// E G^alpha; may overflow to inf for large k, use log_moment there.
double exact_moment(const ExactGuessTable& table, double alpha);
// E log G
double expected_log_guess(const ExactGuessTable& table);
// Sum over blocks of length * word probability.
double total_probability(const ExactGuessTable& table);

struct TypicalSetCensus {
  std::vector<TypeVector> types;
  std::vector<BigInt> type_counts;
  BigInt cardinality;
  double log_cardinality = kNegInf;
  double prob_mass = 0.0;
  double log_prob_mass = kNegInf;
  BigInt max_type_count;
  // max_l N_k(l) <= |T| <= (k+1)^m max_l N_k(l)
  bool union_bound_holds = true;

  bool empty() const noexcept { return types.empty(); }
};

TypicalSetCensus typical_set_census(const LetterDistribution& p, double epsilon, std::uint64_t k,
                                    const OracleLimits& limits = {});

// Smallest k in [1, k_max] whose typical set is nonempty.
std::optional<std::uint64_t> smallest_nonempty_k(const LetterDistribution& p, double epsilon,
                                                 std::uint64_t k_max, const OracleLimits& limits = {});

struct FiniteKExponents {
  std::uint64_t k;
  std::vector<std::pair<double, double>> scaled_log_moments;  // (alpha, (1/k) log E G^alpha)
  double scaled_expected_log;       // (1/k) E log G
  double scaled_log_first_guess;    // (1/k) log P(G = 1)
  double scaled_log_support;        // (1/k) log of the table's word count
  double scaled_log_modal_count;    // (1/k) log #(maximum-probability words)
};

FiniteKExponents finite_k_exponents(const SourceKind& kind, std::uint64_t k, std::span<const double> alphas,
                                    const OracleLimits& limits = {});
FiniteKExponents finite_k_exponents(const ExactGuessTable& table, std::span<const double> alphas);

struct CrosscheckReport {
  bool agree = false;
  double max_relative_error = 0.0;
  std::uint64_t words = 0;  // words enumerated
};

// Enumerates all m^k words, sorts them by probability and recomputes
// E G^alpha for alpha in {-0.5, 0.5, 1, 2} and E log G without using types;
// agreement is judged at 1e-9 relative. Throws Errc::word_space_too_large
// past limits.max_words.
CrosscheckReport naive_enumeration_crosscheck(const SourceKind& kind, std::uint64_t k,
                                              const OracleLimits& limits = {});

enum class SeriesQuantity { scaled_moment, expected_log, first_guess, modal_count, typical_size };

struct SeriesSpec {
  SeriesQuantity quantity;
  double alpha = 0.0;  // scaled_moment only

  std::string label() const;
};

struct SeriesPoint {
  std::uint64_t k;
  std::optional<double> value;  // empty when the typical set is empty
  double target;
  double gap;  // |value - target|, NaN when value is empty
};

// Asymptotic target of a series for the given source.
double series_target(const ScgfModel& model, const SeriesSpec& spec);
double series_value(const FiniteKExponents& exps, const SeriesSpec& spec);

std::vector<SeriesPoint> convergence_series(const SourceKind& kind, const SeriesSpec& spec,
                                            std::span<const std::uint64_t> ks, const OracleLimits& limits = {});

// Gaps at or below this are treated as exact agreement.
inline constexpr double kExactGap = 1e-12;

// True when the gaps of the nonempty points strictly decrease along the
// series, or when every gap is exact.
bool gaps_strictly_decrease(std::span<const SeriesPoint> series);

}  // namespace guesswork
