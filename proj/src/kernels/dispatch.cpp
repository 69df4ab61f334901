#include <atomic>
#include <stdexcept>

#include "guesswork/kernels.hpp"

namespace guesswork::kernels {

namespace {

// -1 means "use detection".
std::atomic<int> g_forced{-1};

}  // namespace

const char* to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "?";
}

Isa detected_isa() noexcept {
#if defined(GUESSWORK_HAVE_AVX2)
  static const bool has_avx2 = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  if (has_avx2) return Isa::avx2;
#endif
  return Isa::scalar;
}

Isa active_isa() noexcept {
  const int forced = g_forced.load(std::memory_order_relaxed);
  return forced < 0 ? detected_isa() : static_cast<Isa>(forced);
}

void force_isa(std::optional<Isa> isa) {
  if (!isa) {
    g_forced.store(-1, std::memory_order_relaxed);
    return;
  }
  if (*isa == Isa::avx2 && detected_isa() != Isa::avx2) {
    throw std::invalid_argument("avx2 kernels are not supported on this CPU");
  }
  g_forced.store(static_cast<int>(*isa), std::memory_order_relaxed);
}

double power_sum(double first, std::uint64_t count, double alpha) {
#if defined(GUESSWORK_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::power_sum(first, count, alpha);
#endif
  return scalar::power_sum(first, count, alpha);
}

double log_sum(double first, std::uint64_t count) {
#if defined(GUESSWORK_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::log_sum(first, count);
#endif
  return scalar::log_sum(first, count);
}

}  // namespace guesswork::kernels
