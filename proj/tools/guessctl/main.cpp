#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "guesswork/error.hpp"

namespace {

using guessctl::RunConfig;

struct RawFlags {
  std::string p;
  std::optional<double> epsilon;
  std::string k;
  std::string alpha;
  std::string p0_grid;
  std::string format;
  std::string out;
};

RunConfig resolve(const RawFlags& raw, RunConfig cfg) {
  if (!raw.p.empty()) cfg.p = guessctl::parse_real_list(raw.p);
  cfg.epsilon = raw.epsilon;
  if (!raw.k.empty()) cfg.k = guessctl::parse_k_list(raw.k);
  if (!raw.alpha.empty()) cfg.alpha = guessctl::parse_real_list(raw.alpha);
  if (!raw.p0_grid.empty()) cfg.p0_grid = guessctl::parse_grid(raw.p0_grid);
  if (raw.format == "csv") cfg.format = guessctl::Format::csv;
  if (raw.format == "json") cfg.format = guessctl::Format::json;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Guesswork exponents, figure data and exact finite-k comparisons"};
  app.require_subcommand(1);

  RawFlags raw;
  RunConfig cfg;
  using Command = int (*)(const RunConfig&, std::ostream&);
  Command selected = nullptr;

  const auto add = [&](const char* name, const char* help, Command fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--p", raw.p, "letter probabilities, comma separated");
    sub->add_option("--epsilon", raw.epsilon, "typical-set half width");
    sub->add_option("--k", raw.k, "word lengths, comma separated");
    sub->add_option("--alpha", raw.alpha, "moment orders, comma separated");
    sub->add_option("--p0-grid", raw.p0_grid, "p0 values: list or start:stop:step");
    sub->add_option("--x-points", cfg.x_points, "number of x samples on [0, log m]");
    sub->add_option("--format", raw.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", raw.out, "output file (default stdout)");
    sub->add_option("--max-types", cfg.limits.max_types, "type enumeration guard");
    sub->add_option("--max-words", cfg.limits.max_words, "word enumeration guard");
    sub->add_option("--kind", cfg.kind, "unconditioned | conditioned | uniform_typical");
    sub->callback([&selected, fn] { selected = fn; });
  };
  add("analyze", "exponent report for all three sources", guessctl::cmd_analyze);
  add("fig1", "growth-rate differences of the binary source over a p0 grid", guessctl::cmd_fig1);
  add("fig2", "-x - rate function curves of the three sources", guessctl::cmd_fig2);
  add("exact-compare", "exact finite-k exponents against their limits", guessctl::cmd_exact_compare);
  add("census", "typical-set census", guessctl::cmd_census);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? guessctl::kExitOk : guessctl::kExitValidation;
  }

  try {
    const RunConfig resolved = resolve(raw, cfg);
    if (raw.out.empty()) return selected(resolved, std::cout);
    std::ofstream file(raw.out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open " << raw.out << "\n";
      return guessctl::kExitValidation;
    }
    return selected(resolved, file);
  } catch (const guesswork::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_resource_guard() ? guessctl::kExitResourceGuard : guessctl::kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return guessctl::kExitValidation;
  }
}
