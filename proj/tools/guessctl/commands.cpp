#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "guesswork/error.hpp"

namespace guessctl {

using guesswork::Errc;
using guesswork::Error;
using guesswork::LetterDistribution;
using guesswork::ScgfModel;
using guesswork::Source;
using guesswork::SourceKind;
using json = nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(Errc::invalid_argument, "not a number: '" + s + "'");
  }
  if (used != s.size()) throw Error(Errc::invalid_argument, "not a number: '" + s + "'");
  return v;
}

// Snap grid arithmetic onto the decimal it is meant to hit.
double snap(double v) { return std::round(v * 1e12) / 1e12; }

// Numbers go through the 9-digit text form so JSON and CSV agree.
json number(double v) {
  if (!std::isfinite(v)) return format_number(v);
  return std::stod(format_number(v));
}

json vector_json(std::span<const double> v) {
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

LetterDistribution distribution(const RunConfig& cfg) {
  if (cfg.p.empty()) throw Error(Errc::invalid_argument, "--p is required");
  return LetterDistribution::renormalized(cfg.p);
}

double require_epsilon(const RunConfig& cfg) {
  if (!cfg.epsilon) throw Error(Errc::invalid_argument, "--epsilon is required");
  if (!(*cfg.epsilon > 0.0)) throw Error(Errc::invalid_argument, "--epsilon must be positive");
  return *cfg.epsilon;
}

// Fails with the admissible interval when the lower boundary type is missing
// for a source that is not uniform on its support.
void require_admissible(const LetterDistribution& p, double epsilon) {
  if (p.is_uniform_on_support()) return;
  if (guesswork::solve_boundaries(p, epsilon).exists_plus) return;
  std::ostringstream msg;
  msg << "epsilon inadmissible: need epsilon in (0, " << format_number(guesswork::admissible_epsilon_bound(p))
      << ")";
  throw Error(Errc::epsilon_inadmissible, msg.str());
}

SourceKind make_kind(Source s, const LetterDistribution& p, double epsilon) {
  switch (s) {
    case Source::unconditioned: return SourceKind::unconditioned(p);
    case Source::conditioned: return SourceKind::conditioned(p, epsilon);
    case Source::uniform_typical: return SourceKind::uniform_typical(p, epsilon);
  }
  throw Error(Errc::invalid_argument, "unknown source");
}

constexpr Source kAllSources[] = {Source::unconditioned, Source::conditioned, Source::uniform_typical};

}  // namespace

// ----------------------------------------------------------------- parsing --

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split(text, ',')) out.push_back(parse_real(s));
  if (out.empty()) throw Error(Errc::invalid_argument, "empty list");
  return out;
}

std::vector<std::uint64_t> parse_k_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& s : split(text, ',')) {
    const double v = parse_real(s);
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e9) {
      throw Error(Errc::invalid_argument, "word lengths must be positive integers, got '" + s + "'");
    }
    out.push_back(static_cast<std::uint64_t>(v));
  }
  if (out.empty()) throw Error(Errc::invalid_argument, "empty k list");
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  if (text.find(':') == std::string::npos) return parse_real_list(text);
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw Error(Errc::invalid_argument, "grid must be start:stop:step");
  const double start = parse_real(parts[0]);
  const double stop = parse_real(parts[1]);
  const double step = parse_real(parts[2]);
  if (!(step > 0.0) || stop < start) throw Error(Errc::invalid_argument, "grid needs step > 0 and stop >= start");
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
  std::vector<double> out;
  for (std::size_t i = 0; i <= n; ++i) out.push_back(snap(start + static_cast<double>(i) * step));
  return out;
}

std::vector<double> default_p0_grid() { return parse_grid("0.525:0.975:0.025"); }

Source parse_kind(const std::string& text) {
  if (text == "unconditioned" || text == "W") return Source::unconditioned;
  if (text == "conditioned" || text == "We") return Source::conditioned;
  if (text == "uniform_typical" || text == "uniform" || text == "U") return Source::uniform_typical;
  throw Error(Errc::invalid_argument, "unknown kind '" + text + "' (unconditioned, conditioned, uniform_typical)");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  std::string s = buf;
  if (s == "-0") s = "0";
  return s;
}

// ----------------------------------------------------------------- analyze --

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const LetterDistribution p = distribution(cfg);
  const double eps = require_epsilon(cfg);
  require_admissible(p, eps);

  const auto b = guesswork::solve_boundaries(p, eps);
  json report;
  report["p"] = vector_json(p.probs());
  report["epsilon"] = number(eps);
  report["h_p"] = number(guesswork::shannon_entropy(p));
  report["h_l_minus"] = number(guesswork::shannon_entropy(b.l_minus));
  report["h_l_plus"] = number(guesswork::shannon_entropy(b.l_plus));
  report["l_minus"] = vector_json(b.l_minus.freqs());
  report["l_plus"] = vector_json(b.l_plus.freqs());
  report["clamped_to_log_m"] = b.clamped_to_log_m;
  report["l_plus_exists"] = b.exists_plus;
  report["alpha_minus"] = number(b.alpha_minus());
  report["alpha_plus"] = number(b.alpha_plus());
  report["regime_indicator"] = number(guesswork::eta(p, 1.0) - (guesswork::shannon_entropy(p) + eps));

  json sources;
  for (Source s : kAllSources) {
    const auto kind = make_kind(s, p, eps);
    const auto e = guesswork::growth_exponents(kind);
    const ScgfModel model(kind);
    json row;
    row["e_G"] = number(e.e_G);
    row["e_log_G"] = number(e.e_log_G);
    row["g"] = number(e.g);
    row["gamma"] = number(e.gamma);
    row["gamma_closed_form"] = number(model.gamma_closed_form());
    sources[guesswork::to_string(s)] = row;
  }
  report["sources"] = sources;

  if (cfg.format.value_or(Format::json) == Format::json) {
    out << report.dump(2) << "\n";
  } else {
    out << "key,value\n";
    for (const auto& [key, value] : report.items()) {
      if (key == "sources") {
        for (const auto& [src, row] : value.items()) {
          for (const auto& [name, v] : row.items()) out << src << "." << name << "," << v.dump() << "\n";
        }
      } else if (value.is_array()) {
        for (std::size_t i = 0; i < value.size(); ++i) out << key << "[" << i << "]," << value[i].dump() << "\n";
      } else {
        out << key << "," << value.dump() << "\n";
      }
    }
  }
  return kExitOk;
}

// -------------------------------------------------------------------- fig1 --

int cmd_fig1(const RunConfig& cfg, std::ostream& out) {
  const double eps = require_epsilon(cfg);
  const auto grid = cfg.p0_grid.empty() ? default_p0_grid() : cfg.p0_grid;
  const bool as_json = cfg.format.value_or(Format::csv) == Format::json;

  json rows = json::array();
  if (!as_json) {
    out << "# binary source, epsilon=" << format_number(eps) << "\n";
    out << "# top=h(l-)-h(p) middle=uniform_vs_conditioned bottom=h(l-)-Lambda_W(1)\n";
    out << "p0,top,middle,bottom,regime_indicator,flag\n";
  }
  for (double p0 : grid) {
    std::optional<guesswork::BinaryClosedForms> f;
    try {
      f = guesswork::binary_closed_forms(p0, eps);
    } catch (const Error& e) {
      if (e.code() != Errc::epsilon_inadmissible) throw;
    }
    const char* flag = !f ? "inadmissible" : (f->regime_indicator > 0.0 ? "upper_clamped" : "interior");
    if (as_json) {
      json r;
      r["p0"] = number(p0);
      r["top"] = f ? number(f->top) : json(nullptr);
      r["middle"] = f ? number(f->middle) : json(nullptr);
      r["bottom"] = f ? number(f->bottom) : json(nullptr);
      r["regime_indicator"] = f ? number(f->regime_indicator) : json(nullptr);
      r["flag"] = flag;
      rows.push_back(r);
    } else if (f) {
      out << format_number(p0) << "," << format_number(f->top) << "," << format_number(f->middle) << ","
          << format_number(f->bottom) << "," << format_number(f->regime_indicator) << "," << flag << "\n";
    } else {
      out << format_number(p0) << ",,,,," << flag << "\n";
    }
  }
  if (as_json) out << json{{"epsilon", number(eps)}, {"rows", rows}}.dump(2) << "\n";
  return kExitOk;
}

// -------------------------------------------------------------------- fig2 --

int cmd_fig2(const RunConfig& cfg, std::ostream& out) {
  const LetterDistribution p = distribution(cfg);
  const double eps = require_epsilon(cfg);
  require_admissible(p, eps);
  if (cfg.x_points < 2) throw Error(Errc::invalid_argument, "--x-points must be at least 2");

  std::vector<guesswork::RateFunction> rates;
  for (Source s : kAllSources) rates.emplace_back(ScgfModel(make_kind(s, p, eps)));

  const double log_m = std::log(static_cast<double>(p.size()));
  const bool as_json = cfg.format.value_or(Format::csv) == Format::json;
  // -x - Lambda*(x); the sentinel marks points outside the finite domain.
  const auto curve = [](const guesswork::RateFunction& r, double x) -> std::optional<double> {
    const double v = r(x);
    if (std::isinf(v)) return std::nullopt;
    return -x - v;
  };

  json meta;
  if (!as_json) out << "# epsilon=" << format_number(eps) << "\n";
  for (std::size_t i = 0; i < rates.size(); ++i) {
    const auto& m = rates[i].model();
    const char* name = guesswork::to_string(kAllSources[i]);
    if (as_json) {
      meta[name] = {{"g", number(m.g())}, {"gamma", number(m.gamma_closed_form())}};
    } else {
      out << "# " << name << " g=" << format_number(m.g()) << " gamma=" << format_number(m.gamma_closed_form())
          << "\n";
    }
  }
  if (!as_json) out << "x,unconditioned,conditioned,uniform_typical\n";

  json rows = json::array();
  for (std::size_t j = 0; j < cfg.x_points; ++j) {
    double x = log_m * static_cast<double>(j) / static_cast<double>(cfg.x_points - 1);
    if (j + 1 == cfg.x_points) x = log_m;
    if (as_json) {
      json r;
      r["x"] = number(x);
      for (std::size_t i = 0; i < rates.size(); ++i) {
        const auto v = curve(rates[i], x);
        r[guesswork::to_string(kAllSources[i])] = v ? number(*v) : json("inf");
      }
      rows.push_back(r);
    } else {
      out << format_number(x);
      for (const auto& r : rates) {
        const auto v = curve(r, x);
        out << "," << (v ? format_number(*v) : std::string("inf"));
      }
      out << "\n";
    }
  }
  if (as_json) out << json{{"epsilon", number(eps)}, {"sources", meta}, {"rows", rows}}.dump(2) << "\n";
  return kExitOk;
}

// ----------------------------------------------------------- exact-compare --

int cmd_exact_compare(const RunConfig& cfg, std::ostream& out) {
  const LetterDistribution p = distribution(cfg);
  const Source source = parse_kind(cfg.kind);
  double eps = 0.0;
  if (source != Source::unconditioned) {
    eps = require_epsilon(cfg);
    require_admissible(p, eps);
  }
  if (cfg.k.empty()) throw Error(Errc::invalid_argument, "--k is required");
  const auto kind = make_kind(source, p, eps);
  const std::vector<double> alphas = cfg.alpha.empty() ? std::vector<double>{1.0} : cfg.alpha;

  std::vector<guesswork::SeriesSpec> specs;
  for (double a : alphas) specs.push_back({guesswork::SeriesQuantity::scaled_moment, a});
  specs.push_back({guesswork::SeriesQuantity::expected_log});
  specs.push_back({guesswork::SeriesQuantity::first_guess});
  specs.push_back({guesswork::SeriesQuantity::modal_count});
  specs.push_back({guesswork::SeriesQuantity::typical_size});

  const ScgfModel model(kind);
  // One table per k serves every series.
  std::vector<std::optional<guesswork::FiniteKExponents>> exps;
  for (auto k : cfg.k) {
    try {
      exps.push_back(guesswork::finite_k_exponents(kind, k, alphas, cfg.limits));
    } catch (const Error& e) {
      if (e.code() != Errc::empty_typical_set) throw;
      exps.push_back(std::nullopt);
    }
  }

  const bool as_json = cfg.format.value_or(Format::csv) == Format::json;
  json rows = json::array();
  json trends;
  if (!as_json) {
    out << "# kind=" << guesswork::to_string(source) << "\n";
    out << "series,k,alpha,exact,asymptotic,gap,flag\n";
  }
  bool all_ok = true;
  std::vector<std::pair<std::string, std::string>> verdicts;
  for (const auto& spec : specs) {
    const double target = guesswork::series_target(model, spec);
    std::vector<guesswork::SeriesPoint> series;
    for (std::size_t i = 0; i < cfg.k.size(); ++i) {
      guesswork::SeriesPoint pt{cfg.k[i], std::nullopt, target, std::nan("")};
      if (exps[i]) {
        pt.value = guesswork::series_value(*exps[i], spec);
        pt.gap = std::abs(*pt.value - target);
      }
      series.push_back(pt);
    }
    const std::string name = spec.quantity == guesswork::SeriesQuantity::scaled_moment ? "scgf" : spec.label();
    const std::string alpha_field =
        spec.quantity == guesswork::SeriesQuantity::scaled_moment ? format_number(spec.alpha) : "";
    for (const auto& pt : series) {
      const char* flag = pt.value ? "" : "empty_typical_set";
      if (as_json) {
        json r;
        r["series"] = name;
        r["k"] = pt.k;
        r["alpha"] = alpha_field.empty() ? json(nullptr) : number(spec.alpha);
        r["exact"] = pt.value ? number(*pt.value) : json(nullptr);
        r["asymptotic"] = number(target);
        r["gap"] = pt.value ? number(pt.gap) : json(nullptr);
        r["flag"] = flag;
        rows.push_back(r);
      } else {
        out << name << "," << pt.k << "," << alpha_field << "," << (pt.value ? format_number(*pt.value) : "")
            << "," << format_number(target) << "," << (pt.value ? format_number(pt.gap) : "") << "," << flag
            << "\n";
      }
    }
    const auto nonempty = std::count_if(series.begin(), series.end(), [](const auto& pt) { return pt.value; });
    std::string verdict = "n/a";
    if (nonempty >= 2) {
      const bool ok = guesswork::gaps_strictly_decrease(series);
      verdict = ok ? "pass" : "fail";
      all_ok = all_ok && ok;
    }
    const std::string label = alpha_field.empty() ? name : name + "(" + alpha_field + ")";
    verdicts.emplace_back(label, verdict);
  }
  if (as_json) {
    for (const auto& [label, v] : verdicts) trends[label] = v;
    out << json{{"kind", guesswork::to_string(source)}, {"rows", rows}, {"trend", trends}}.dump(2) << "\n";
  } else {
    for (const auto& [label, v] : verdicts) out << "# trend " << label << " " << v << "\n";
  }
  return all_ok ? kExitOk : kExitTrendFailure;
}

// ------------------------------------------------------------------ census --

int cmd_census(const RunConfig& cfg, std::ostream& out) {
  constexpr std::uint64_t kScanLimit = 1000;
  const LetterDistribution p = distribution(cfg);
  const double eps = require_epsilon(cfg);
  if (cfg.k.empty()) throw Error(Errc::invalid_argument, "--k is required");
  const bool as_json = cfg.format.value_or(Format::csv) == Format::json;

  // Everything is computed before the first byte is written.
  std::vector<guesswork::TypicalSetCensus> censuses;
  std::vector<std::string> flags;
  for (auto k : cfg.k) {
    censuses.push_back(guesswork::typical_set_census(p, eps, k, cfg.limits));
    std::string flag;
    if (censuses.back().empty()) {
      const auto first = guesswork::smallest_nonempty_k(p, eps, kScanLimit, cfg.limits);
      flag = "empty_typical_set;smallest_nonempty_k=" + (first ? std::to_string(*first) : std::string("none"));
    }
    flags.push_back(flag);
  }

  json rows = json::array();
  if (!as_json) {
    out << "# epsilon=" << format_number(eps) << "\n";
    out << "k,types,cardinality,log_cardinality,prob_mass,max_type_count,union_bound_holds,flag\n";
  }
  for (std::size_t i = 0; i < cfg.k.size(); ++i) {
    const auto k = cfg.k[i];
    const auto& c = censuses[i];
    const auto& flag = flags[i];
    if (as_json) {
      json r;
      r["k"] = k;
      r["types"] = c.types.size();
      r["cardinality"] = c.cardinality.str();
      r["log_cardinality"] = number(c.log_cardinality);
      r["prob_mass"] = number(c.prob_mass);
      r["max_type_count"] = c.max_type_count.str();
      r["union_bound_holds"] = c.union_bound_holds;
      r["flag"] = flag;
      rows.push_back(r);
    } else {
      out << k << "," << c.types.size() << "," << c.cardinality.str() << "," << format_number(c.log_cardinality)
          << "," << format_number(c.prob_mass) << "," << c.max_type_count.str() << ","
          << (c.union_bound_holds ? "true" : "false") << "," << flag << "\n";
    }
  }
  if (as_json) out << json{{"epsilon", number(eps)}, {"rows", rows}}.dump(2) << "\n";
  return kExitOk;
}

}  // namespace guessctl
