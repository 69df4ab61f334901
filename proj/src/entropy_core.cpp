#include "guesswork/entropy_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "guesswork/error.hpp"

namespace guesswork {

namespace {

// Slack on the closed typical window so that types sitting on a boundary
// up to rounding in -sum l log p are not excluded by accident.
constexpr double kWindowSlack = 1e-12;

double neumaier_sum(std::span<const double> xs) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

void check_simplex(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw Error(Errc::invalid_argument, std::string(what) + ": entries must be finite and nonnegative");
    }
  }
  if (std::abs(neumaier_sum(v) - 1.0) > kSimplexTolerance) {
    throw Error(Errc::invalid_argument, std::string(what) + ": entries must sum to 1");
  }
}

void lexicographic_compositions(std::uint64_t remaining, std::size_t slot,
                                std::vector<std::uint64_t>& current,
                                std::vector<TypeVector>& out) {
  if (slot + 1 == current.size()) {
    current[slot] = remaining;
    out.push_back(TypeVector::from_counts(current));
    return;
  }
  for (std::uint64_t c = 0; c <= remaining; ++c) {
    current[slot] = c;
    lexicographic_compositions(remaining - c, slot + 1, current, out);
  }
}

}  // namespace

// ---------------------------------------------------------------- BigInt --

double log_of(const BigInt& n) {
  if (n.is_zero()) return kNegInf;
  const auto top = boost::multiprecision::msb(n);
  if (top < 64) return static_cast<double>(std::log(static_cast<long double>(n.convert_to<std::uint64_t>())));
  const auto shift = top - 63;
  const BigInt head = n >> shift;
  const long double lead = static_cast<long double>(head.convert_to<std::uint64_t>());
  return static_cast<double>(std::log(lead) + static_cast<long double>(shift) * std::log(2.0L));
}

long double to_long_double(const BigInt& n) {
  if (n.is_zero()) return 0.0L;
  const auto top = boost::multiprecision::msb(n);
  if (top < 64) return static_cast<long double>(n.convert_to<std::uint64_t>());
  const auto shift = top - 63;
  const BigInt head = n >> shift;
  return std::ldexp(static_cast<long double>(head.convert_to<std::uint64_t>()), static_cast<int>(shift));
}

BigInt binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    result *= n - r + i;
    result /= i;
  }
  return result;
}

BigInt multinomial(std::span<const std::uint64_t> counts) {
  BigInt result = 1;
  std::uint64_t running = 0;
  for (std::uint64_t c : counts) {
    running += c;
    result *= binomial(running, c);
  }
  return result;
}

// ---------------------------------------------------- LetterDistribution --

LetterDistribution::LetterDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.size() < 2) throw Error(Errc::invalid_argument, "letter distribution needs at least 2 letters");
  check_simplex(probs_, "letter distribution");
  log_probs_.reserve(probs_.size());
  for (double x : probs_) {
    log_probs_.push_back(x > 0.0 ? std::log(x) : kNegInf);
    if (x > 0.0) ++support_size_;
    max_prob_ = std::max(max_prob_, x);
  }
}

LetterDistribution LetterDistribution::renormalized(std::vector<double> probs, double tolerance) {
  for (double x : probs) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw Error(Errc::invalid_argument, "letter distribution: entries must be finite and nonnegative");
    }
  }
  const double total = neumaier_sum(probs);
  if (std::abs(total - 1.0) > tolerance) {
    std::ostringstream msg;
    msg << "letter distribution: probabilities sum to " << total << ", not within " << tolerance << " of 1";
    throw Error(Errc::invalid_argument, msg.str());
  }
  for (double& x : probs) x /= total;
  // One more pass absorbs the rounding left by the division.
  const double residue = 1.0 - neumaier_sum(probs);
  auto largest = std::max_element(probs.begin(), probs.end());
  if (largest != probs.end()) *largest += residue;
  return LetterDistribution(std::move(probs));
}

bool LetterDistribution::is_uniform_on_support() const noexcept {
  for (double x : probs_) {
    if (x > 0.0 && x != max_prob_) return false;
  }
  return true;
}

// ------------------------------------------------------------ TypeVector --

TypeVector::TypeVector(std::vector<double> freqs) : freqs_(std::move(freqs)) {
  if (freqs_.empty()) throw Error(Errc::invalid_argument, "type vector must be nonempty");
  check_simplex(freqs_, "type vector");
}

TypeVector TypeVector::from_counts(std::vector<std::uint64_t> counts) {
  const std::uint64_t k = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (counts.empty() || k == 0) throw Error(Errc::invalid_argument, "type counts must be nonempty with positive total");
  TypeVector t;
  t.freqs_.reserve(counts.size());
  for (std::uint64_t c : counts) t.freqs_.push_back(static_cast<double>(c) / static_cast<double>(k));
  t.grain_ = k;
  t.counts_ = std::move(counts);
  return t;
}

TypeVector TypeVector::grained(std::span<const double> freqs, std::uint64_t k) {
  if (k == 0) throw Error(Errc::not_a_k_type, "not a k-type: grain must be positive");
  std::vector<std::uint64_t> counts;
  counts.reserve(freqs.size());
  std::uint64_t total = 0;
  for (double f : freqs) {
    const double scaled = f * static_cast<double>(k);
    const double rounded = std::round(scaled);
    if (!(f >= 0.0) || std::abs(scaled - rounded) > 1e-9 * std::max(1.0, scaled)) {
      throw Error(Errc::not_a_k_type, "not a k-type: entries are not multiples of 1/" + std::to_string(k));
    }
    counts.push_back(static_cast<std::uint64_t>(rounded));
    total += counts.back();
  }
  if (total != k) throw Error(Errc::not_a_k_type, "not a k-type: counts do not sum to " + std::to_string(k));
  return from_counts(std::move(counts));
}

std::string TypeVector::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t a = 0; a < freqs_.size(); ++a) {
    if (a) out << ',';
    if (grain_) {
      out << counts_[a] << '/' << *grain_;
    } else {
      out << freqs_[a];
    }
  }
  out << ')';
  return out.str();
}

// ------------------------------------------------------------------ Word --

Word::Word(std::vector<std::uint32_t> letters, std::size_t alphabet_size)
    : letters_(std::move(letters)), alphabet_size_(alphabet_size) {
  if (letters_.empty()) throw Error(Errc::invalid_argument, "word must have length >= 1");
  for (auto a : letters_) {
    if (a >= alphabet_size_) throw Error(Errc::invalid_argument, "word letter outside alphabet");
  }
}

// -------------------------------------------------------- TypicalSetSpec --

TypicalSetSpec::TypicalSetSpec(LetterDistribution p, double epsilon, std::uint64_t k)
    : p_(std::move(p)), epsilon_(epsilon), k_(k) {
  if (!(epsilon_ > 0.0) || !std::isfinite(epsilon_)) throw Error(Errc::invalid_argument, "epsilon must be positive");
  if (k_ == 0) throw Error(Errc::invalid_argument, "word length must be >= 1");
}

Interval TypicalSetSpec::window() const { return typical_window(p_, epsilon_); }

// ------------------------------------------------------------ functionals --

double shannon_entropy(std::span<const double> l) {
  double h = 0.0;
  for (double x : l) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

double kl_divergence(std::span<const double> l, const LetterDistribution& p) {
  if (l.size() != p.size()) throw Error(Errc::invalid_argument, "type and distribution sizes differ");
  double d = 0.0;
  for (std::size_t a = 0; a < l.size(); ++a) {
    if (l[a] <= 0.0) continue;
    if (p[a] <= 0.0) {
      throw Error(Errc::absolute_continuity,
                  "absolute-continuity violation: type charges letter " + std::to_string(a) +
                      " of zero probability");
    }
    d += l[a] * (std::log(l[a]) - p.log_prob(a));
  }
  return std::max(d, 0.0);
}

double cross_entropy(std::span<const double> l, const LetterDistribution& p) {
  if (l.size() != p.size()) throw Error(Errc::invalid_argument, "type and distribution sizes differ");
  double c = 0.0;
  for (std::size_t a = 0; a < l.size(); ++a) {
    if (l[a] <= 0.0) continue;
    if (p[a] <= 0.0) return kInf;
    c -= l[a] * p.log_prob(a);
  }
  return c;
}

double renyi_rate(const LetterDistribution& p, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw Error(Errc::invalid_argument, "renyi order must be positive");
  if (beta == 1.0) return shannon_entropy(p);
  // log sum_a p_a^beta in log-sum-exp form.
  double top = kNegInf;
  for (double lp : p.log_probs()) {
    if (lp != kNegInf) top = std::max(top, beta * lp);
  }
  double acc = 0.0;
  for (double lp : p.log_probs()) {
    if (lp != kNegInf) acc += std::exp(beta * lp - top);
  }
  return (top + std::log(acc)) / (1.0 - beta);
}

double word_log_prob(const LetterDistribution& p, const Word& w) {
  if (w.alphabet_size() > p.size()) throw Error(Errc::invalid_argument, "word alphabet larger than distribution");
  double total = 0.0;
  for (auto a : w.letters()) {
    const double lp = p.log_prob(a);
    if (lp == kNegInf) return kNegInf;
    total += lp;
  }
  return total;
}

TypeVector word_type(const Word& w) {
  std::vector<std::uint64_t> counts(w.alphabet_size(), 0);
  for (auto a : w.letters()) ++counts[a];
  return TypeVector::from_counts(std::move(counts));
}

BigInt type_count(const TypeVector& l) {
  if (!l.grain()) throw Error(Errc::not_a_k_type, "not a k-type: type vector has no grain");
  return multinomial(l.counts());
}

double log_type_count(const TypeVector& l) {
  if (!l.grain()) throw Error(Errc::not_a_k_type, "not a k-type: type vector has no grain");
  double v = std::lgamma(static_cast<double>(*l.grain()) + 1.0);
  for (auto c : l.counts()) v -= std::lgamma(static_cast<double>(c) + 1.0);
  return v;
}

TypeCount count_type(const TypeVector& l, std::uint64_t exact_limit) {
  if (!l.grain()) throw Error(Errc::not_a_k_type, "not a k-type: type vector has no grain");
  if (*l.grain() <= exact_limit) {
    BigInt n = type_count(l);
    const double lg = log_of(n);
    return TypeCount{std::move(n), lg, false};
  }
  return TypeCount{std::nullopt, log_type_count(l), true};
}

BigInt number_of_types(std::uint64_t k, std::size_t m) {
  if (m < 1) return 0;
  return binomial(k + m - 1, m - 1);
}

std::vector<TypeVector> enumerate_types(std::uint64_t k, std::size_t m, std::uint64_t max_types) {
  if (k < 1) throw Error(Errc::invalid_argument, "word length must be >= 1");
  if (m < 2) throw Error(Errc::invalid_argument, "alphabet needs at least 2 letters");
  const BigInt count = number_of_types(k, m);
  if (count > max_types) {
    throw Error(Errc::type_space_too_large, "type-space too large: " + count.str() + " types exceeds cap " +
                                                std::to_string(max_types));
  }
  std::vector<TypeVector> out;
  out.reserve(count.convert_to<std::size_t>());
  std::vector<std::uint64_t> current(m, 0);
  lexicographic_compositions(k, 0, current, out);
  return out;
}

Interval typical_window(const TypicalSetSpec& spec) { return spec.window(); }

Interval typical_window(const LetterDistribution& p, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(Errc::invalid_argument, "epsilon must be positive");
  const double h = shannon_entropy(p);
  return Interval{h - epsilon, h + epsilon};
}

bool is_typical_type(const LetterDistribution& p, double epsilon, std::span<const double> l) {
  const Interval w = typical_window(p, epsilon);
  const double rate = cross_entropy(l, p);
  if (!std::isfinite(rate)) return false;
  return w.lo - kWindowSlack <= rate && rate <= w.hi + kWindowSlack;
}

}  // namespace guesswork
