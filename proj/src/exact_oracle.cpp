#include "guesswork/exact_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "guesswork/error.hpp"
#include "guesswork/rank_sums.hpp"

namespace guesswork {

namespace {

constexpr double kTieTolerance = 1e-12;

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double top = std::max(a, b);
  return top + std::log1p(std::exp(std::min(a, b) - top));
}

// log prod_a p_a^{n_a}; 0 * log 0 counts as 0.
double type_log_prob(const LetterDistribution& p, std::span<const std::uint64_t> counts) {
  double v = 0.0;
  for (std::size_t a = 0; a < counts.size(); ++a) {
    if (counts[a] == 0) continue;
    if (p[a] == 0.0) return kNegInf;
    v += static_cast<double>(counts[a]) * p.log_prob(a);
  }
  return v;
}

bool ties(double a, double b) {
  if (a == b) return true;
  return std::abs(a - b) <= kTieTolerance * std::max(1.0, std::abs(a));
}

void require_positive_k(std::uint64_t k) {
  if (k == 0) throw Error(Errc::invalid_argument, "word length k must be >= 1");
}

}  // namespace

double GuessBlock::word_prob() const { return std::exp(log_word_prob); }

ExactGuessTable::ExactGuessTable(SourceKind kind, std::uint64_t k, std::vector<GuessBlock> blocks)
    : kind_(std::move(kind)), k_(k), blocks_(std::move(blocks)) {
  total_ = 0;
  for (const auto& b : blocks_) total_ += b.length;
}

BigInt ExactGuessTable::modal_count() const {
  BigInt n = 0;
  if (blocks_.empty()) return n;
  const double top = blocks_.front().log_word_prob;
  for (const auto& b : blocks_) {
    if (!ties(b.log_word_prob, top)) break;
    n += b.length;
  }
  return n;
}

ExactGuessTable build_guess_table(const SourceKind& kind, std::uint64_t k, const OracleLimits& limits) {
  require_positive_k(k);
  const auto& p = kind.p();
  const bool typical_only = kind.source() != Source::unconditioned;

  std::vector<GuessBlock> blocks;
  for (auto& l : enumerate_types(k, p.size(), limits.max_types)) {
    if (typical_only && !is_typical_type(p, kind.epsilon(), l.freqs())) continue;
    const double lp = type_log_prob(p, l.counts());
    BigInt n = type_count(l);
    blocks.push_back(GuessBlock{lp, 0, std::move(n), std::move(l)});
  }
  if (blocks.empty()) {
    std::ostringstream msg;
    msg << "empty typical set at k = " << k;
    throw Error(Errc::empty_typical_set, msg.str());
  }

  if (kind.source() == Source::conditioned) {
    double log_mass = kNegInf;
    for (const auto& b : blocks) log_mass = log_add(log_mass, b.log_word_prob + log_of(b.length));
    for (auto& b : blocks) b.log_word_prob -= log_mass;
  } else if (kind.source() == Source::uniform_typical) {
    BigInt size = 0;
    for (const auto& b : blocks) size += b.length;
    const double log_size = log_of(size);
    for (auto& b : blocks) b.log_word_prob = -log_size;
  }

  // Types arrive in lexicographic order, so a stable sort keeps ties in
  // that order.
  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const GuessBlock& a, const GuessBlock& b) { return a.log_word_prob > b.log_word_prob; });
  BigInt next = 1;
  for (auto& b : blocks) {
    b.start = next;
    next += b.length;
  }
  return ExactGuessTable(kind, k, std::move(blocks));
}

double log_moment(const ExactGuessTable& table, double alpha) {
  double acc = kNegInf;
  for (const auto& b : table.blocks()) {
    if (b.log_word_prob == kNegInf) continue;
    acc = log_add(acc, b.log_word_prob + log_rank_power_sum(b.start, b.length, alpha));
  }
  return acc;
}

double exact_moment(const ExactGuessTable& table, double alpha) { return std::exp(log_moment(table, alpha)); }

double expected_log_guess(const ExactGuessTable& table) {
  long double acc = 0.0L;
  for (const auto& b : table.blocks()) {
    if (b.log_word_prob == kNegInf) continue;
    const double s = log_rank_log_sum(b.start, b.length);
    if (s == kNegInf) continue;
    acc += std::exp(static_cast<long double>(b.log_word_prob) + s);
  }
  return static_cast<double>(acc);
}

double total_probability(const ExactGuessTable& table) {
  long double acc = 0.0L;
  for (const auto& b : table.blocks()) {
    if (b.log_word_prob == kNegInf) continue;
    acc += std::exp(static_cast<long double>(b.log_word_prob) + log_of(b.length));
  }
  return static_cast<double>(acc);
}

// ---------------------------------------------------------------- census --

TypicalSetCensus typical_set_census(const LetterDistribution& p, double epsilon, std::uint64_t k,
                                    const OracleLimits& limits) {
  require_positive_k(k);
  TypicalSetCensus c;
  c.cardinality = 0;
  c.max_type_count = 0;
  for (auto& l : enumerate_types(k, p.size(), limits.max_types)) {
    if (!is_typical_type(p, epsilon, l.freqs())) continue;
    BigInt n = type_count(l);
    c.log_prob_mass = log_add(c.log_prob_mass, type_log_prob(p, l.counts()) + log_of(n));
    c.cardinality += n;
    if (n > c.max_type_count) c.max_type_count = n;
    c.type_counts.push_back(std::move(n));
    c.types.push_back(std::move(l));
  }
  c.log_cardinality = log_of(c.cardinality);
  c.prob_mass = std::exp(c.log_prob_mass);
  BigInt factor = boost::multiprecision::pow(BigInt(k + 1), static_cast<unsigned>(p.size()));
  c.union_bound_holds = c.max_type_count <= c.cardinality && c.cardinality <= factor * c.max_type_count;
  return c;
}

std::optional<std::uint64_t> smallest_nonempty_k(const LetterDistribution& p, double epsilon, std::uint64_t k_max,
                                                 const OracleLimits& limits) {
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    if (!typical_set_census(p, epsilon, k, limits).empty()) return k;
  }
  return std::nullopt;
}

// ------------------------------------------------------ finite exponents --

FiniteKExponents finite_k_exponents(const ExactGuessTable& table, std::span<const double> alphas) {
  const double kd = static_cast<double>(table.k());
  FiniteKExponents out{};
  out.k = table.k();
  for (double a : alphas) out.scaled_log_moments.emplace_back(a, log_moment(table, a) / kd);
  out.scaled_expected_log = expected_log_guess(table) / kd;
  out.scaled_log_first_guess = table.blocks().front().log_word_prob / kd;
  out.scaled_log_support = log_of(table.total()) / kd;
  out.scaled_log_modal_count = log_of(table.modal_count()) / kd;
  return out;
}

FiniteKExponents finite_k_exponents(const SourceKind& kind, std::uint64_t k, std::span<const double> alphas,
                                    const OracleLimits& limits) {
  return finite_k_exponents(build_guess_table(kind, k, limits), alphas);
}

// ---------------------------------------------------------------- series --

std::string SeriesSpec::label() const {
  switch (quantity) {
    case SeriesQuantity::scaled_moment: {
      std::ostringstream s;
      s << "scgf(alpha=" << alpha << ")";
      return s.str();
    }
    case SeriesQuantity::expected_log: return "e_log_G";
    case SeriesQuantity::first_guess: return "g";
    case SeriesQuantity::modal_count: return "gamma";
    case SeriesQuantity::typical_size: return "typical_size_rate";
  }
  return "?";
}

double series_target(const ScgfModel& model, const SeriesSpec& spec) {
  switch (spec.quantity) {
    case SeriesQuantity::scaled_moment: return model(spec.alpha);
    case SeriesQuantity::expected_log: return model.slope(0.0);
    case SeriesQuantity::first_guess: return model.g();
    case SeriesQuantity::modal_count: return model.gamma_closed_form();
    case SeriesQuantity::typical_size:
      // Unconditioned tables hold all m^k words.
      if (model.kind().source() == Source::unconditioned) {
        return std::log(static_cast<double>(model.kind().p().size()));
      }
      return model.h_minus();
  }
  return 0.0;
}

double series_value(const FiniteKExponents& exps, const SeriesSpec& spec) {
  switch (spec.quantity) {
    case SeriesQuantity::scaled_moment:
      for (const auto& [a, v] : exps.scaled_log_moments) {
        if (a == spec.alpha) return v;
      }
      throw Error(Errc::invalid_argument, "moment order was not computed");
    case SeriesQuantity::expected_log: return exps.scaled_expected_log;
    case SeriesQuantity::first_guess: return exps.scaled_log_first_guess;
    case SeriesQuantity::modal_count: return exps.scaled_log_modal_count;
    case SeriesQuantity::typical_size: return exps.scaled_log_support;
  }
  return 0.0;
}

std::vector<SeriesPoint> convergence_series(const SourceKind& kind, const SeriesSpec& spec,
                                            std::span<const std::uint64_t> ks, const OracleLimits& limits) {
  const ScgfModel model(kind);
  const double target = series_target(model, spec);
  std::vector<double> alphas;
  if (spec.quantity == SeriesQuantity::scaled_moment) alphas.push_back(spec.alpha);

  std::vector<SeriesPoint> out;
  for (std::uint64_t k : ks) {
    SeriesPoint pt{k, std::nullopt, target, std::nan("")};
    try {
      const double v = series_value(finite_k_exponents(kind, k, alphas, limits), spec);
      pt.value = v;
      pt.gap = std::abs(v - target);
    } catch (const Error& e) {
      if (e.code() != Errc::empty_typical_set) throw;
    }
    out.push_back(pt);
  }
  return out;
}

bool gaps_strictly_decrease(std::span<const SeriesPoint> series) {
  std::vector<double> gaps;
  for (const auto& pt : series) {
    if (pt.value) gaps.push_back(pt.gap);
  }
  if (gaps.size() < 2) return false;
  if (std::all_of(gaps.begin(), gaps.end(), [](double g) { return g <= kExactGap; })) return true;
  for (std::size_t i = 1; i < gaps.size(); ++i) {
    if (!(gaps[i] < gaps[i - 1])) return false;
  }
  return true;
}

}  // namespace guesswork
