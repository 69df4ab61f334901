#pragma once

// Rank-sum kernels behind the exact Guesswork moments. Each kernel has a
// scalar reference implementation and, on x86-64, an AVX2+FMA variant; the
// dispatching entry points pick the widest variant the CPU supports.

#include <cstdint>
#include <optional>

namespace guesswork::kernels {

enum class Isa { scalar, avx2 };

const char* to_string(Isa isa) noexcept;

// Widest variant supported by the running CPU.
Isa detected_isa() noexcept;
// Variant used by the dispatching entry points.
Isa active_isa() noexcept;
// Pins the dispatching entry points to `isa` (must be supported), or restores
// detection with std::nullopt.
void force_isa(std::optional<Isa> isa);

// sum_{j=0}^{count-1} (first + j)^alpha with compensated accumulation.
// `first` must be >= 1 and first + count must stay below 2^53.
double power_sum(double first, std::uint64_t count, double alpha);

// sum_{j=0}^{count-1} log(first + j), same preconditions.
double log_sum(double first, std::uint64_t count);

namespace scalar {
double power_sum(double first, std::uint64_t count, double alpha);
double log_sum(double first, std::uint64_t count);
}  // namespace scalar

#if defined(GUESSWORK_HAVE_AVX2)
namespace avx2 {
double power_sum(double first, std::uint64_t count, double alpha);
double log_sum(double first, std::uint64_t count);
}  // namespace avx2
#endif

}  // namespace guesswork::kernels
