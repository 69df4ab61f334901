#pragma once

// Subcommands of guessctl, callable in-process. Each writes its report to
// `out` and returns the process exit status; precondition failures escape as
// guesswork::Error.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "guesswork/asymptotics.hpp"
#include "guesswork/exact_oracle.hpp"

namespace guessctl {

enum class Format { csv, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitResourceGuard = 2;
inline constexpr int kExitTrendFailure = 3;

struct RunConfig {
  std::vector<double> p;
  std::optional<double> epsilon;
  std::vector<std::uint64_t> k;
  std::vector<double> alpha;
  std::vector<double> p0_grid;
  std::size_t x_points = 400;
  std::optional<Format> format;  // command default when unset
  std::string kind = "unconditioned";
  guesswork::OracleLimits limits;
};

// "0.8,0.2" -> {0.8, 0.2}
std::vector<double> parse_real_list(const std::string& text);
std::vector<std::uint64_t> parse_k_list(const std::string& text);
// Either a comma list or start:stop:step, both ends inclusive.
std::vector<double> parse_grid(const std::string& text);
std::vector<double> default_p0_grid();
guesswork::Source parse_kind(const std::string& text);

// 9 significant digits; "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double v);

int cmd_analyze(const RunConfig& cfg, std::ostream& out);
int cmd_fig1(const RunConfig& cfg, std::ostream& out);
int cmd_fig2(const RunConfig& cfg, std::ostream& out);
int cmd_exact_compare(const RunConfig& cfg, std::ostream& out);
int cmd_census(const RunConfig& cfg, std::ostream& out);

}  // namespace guessctl
