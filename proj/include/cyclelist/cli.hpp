#pragma once

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cyclelist/constructive.hpp"
#include "cyclelist/experiment.hpp"
#include "cyclelist/gadget.hpp"
#include "cyclelist/io.hpp"
#include "cyclelist/solver.hpp"

namespace cyclelist::cli {

enum ExitCode : int { kOk = 0, kInvalidInput = 1, kInternal = 2 };

struct CliConfig {
  std::size_t n = 0, k = 0, c = 0;
  std::optional<std::size_t> s;
  std::optional<double> t;
  std::vector<std::size_t> n_values;
  std::vector<std::size_t> s_values;
  std::vector<double> t_values;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::string method = "exact";
  std::optional<double> d;
  unsigned jobs = 1;
  std::string format = "csv";
  std::string output;
  std::string scheme_path;
  std::string colour_method = "auto";
};

namespace detail {

inline SchemeFile load_scheme(const std::string& path) {
  if (path == "-") return read_scheme(std::cin);
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scheme file '" + path + "'");
  return read_scheme(in);
}

inline Method parse_method(const std::string& m) {
  return m == "constructive-first" ? Method::constructive_first : Method::exact;
}

inline GoodSchemeConfig config_for(const CliConfig& cfg, std::size_t c) {
  if (cfg.d) return GoodSchemeConfig{*cfg.d, false};
  return GoodSchemeConfig::strict_default(c);
}

inline EstimateOptions estimate_options(const CliConfig& cfg) {
  EstimateOptions opt;
  opt.method = parse_method(cfg.method);
  opt.jobs = cfg.jobs;
  if (cfg.d) opt.config = GoodSchemeConfig{*cfg.d, false};
  return opt;
}

// Writes either to the --output file or to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::invalid_argument("cannot open output file '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

inline void emit_rows(const CliConfig& cfg, const std::vector<SweepRow>& rows, std::ostream& out) {
  Sink sink(cfg.output, out);
  if (cfg.format == "json")
    write_json(sink.get(), rows);
  else
    write_csv(sink.get(), rows);
}

inline void require_palette_rule(const CliConfig& cfg) {
  if (cfg.s.has_value() == cfg.t.has_value()) throw std::invalid_argument("give exactly one of --s and --t");
}

inline int run_simulate(const CliConfig& cfg, std::ostream& out) {
  require_palette_rule(cfg);
  const CyclePower g(cfg.n, cfg.k);
  SweepRow row;
  row.n = cfg.n;
  row.k = cfg.k;
  row.c = cfg.c;
  row.s = cfg.s ? *cfg.s : palette_for(cfg.n, cfg.c, *cfg.t);
  row.t = cfg.t ? *cfg.t : scaling_for(cfg.n, cfg.c, row.s);
  row.estimate = estimate_p(g, {cfg.c, row.s}, cfg.trials, cfg.seed, estimate_options(cfg));
  row.prediction = predict(row.n, row.c, row.k, row.s, row.t);
  emit_rows(cfg, {row}, out);
  return kOk;
}

inline int run_sweep(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.s_values.empty() == cfg.t_values.empty()) throw std::invalid_argument("give exactly one of --s and --t");
  SweepRule rule{cfg.t_values, cfg.s_values};
  const auto rows = regime_sweep(cfg.c, cfg.k, cfg.n_values, rule, cfg.trials, cfg.seed,
                                 estimate_options(cfg), [&](const SweepRow& r) {
                                   err << "cell n=" << r.n << " s=" << r.s << " p_hat=" << r.estimate.p_hat << '\n';
                                 });
  emit_rows(cfg, rows, out);
  return kOk;
}

inline int run_poisson(const CliConfig& cfg, std::ostream& out) {
  require_palette_rule(cfg);
  const CyclePower g(cfg.n, cfg.k);
  const std::size_t s = cfg.s ? *cfg.s : palette_for(cfg.n, cfg.c, *cfg.t);
  const auto fit = sample_clique_counts(g, {cfg.c, s}, cfg.trials, cfg.seed, cfg.jobs);
  Sink sink(cfg.output, out);
  if (cfg.format == "json") {
    auto j = to_json(fit);
    j["n"] = cfg.n;
    j["k"] = cfg.k;
    j["c"] = cfg.c;
    j["s"] = s;
    j["master_seed"] = cfg.seed;
    sink.get() << j.dump(2) << '\n';
  } else {
    sink.get() << "n,k,c,s,trials,mu_finite,sample_mean,chi_square,df,p_value,histogram,master_seed\n";
    std::string hist;
    for (std::size_t x = 0; x < fit.histogram.size(); ++x)
      hist += (x ? ";" : "") + std::to_string(x) + ':' + std::to_string(fit.histogram[x]);
    sink.get() << cfg.n << ',' << cfg.k << ',' << cfg.c << ',' << s << ',' << fit.trials << ','
               << cyclelist::detail::general(fit.mu_finite) << ',' << cyclelist::detail::general(fit.sample_mean)
               << ',' << cyclelist::detail::general(fit.chi_square) << ',' << fit.degrees_of_freedom << ','
               << cyclelist::detail::general(fit.p_value) << ',' << hist << ',' << cfg.seed << '\n';
  }
  return kOk;
}

inline void require_verified(const CyclePower& g, const ColourScheme& scheme, const Colouring& col) {
  if (!verify_colouring(g, scheme, col)) throw ContractViolation("produced colouring failed verification");
}

inline int run_solve(const CliConfig& cfg, std::ostream& out) {
  const auto file = load_scheme(cfg.scheme_path);
  const auto g = file.graph();
  const auto outcome = decide_colourable(g, file.scheme);
  if (!outcome.colourable) {
    out << "NOT_COLOURABLE\n";
    return kOk;
  }
  require_verified(g, file.scheme, *outcome.witness);
  out << "COLOURABLE " << format_colouring(*outcome.witness) << '\n';
  return kOk;
}

inline int run_colour(const CliConfig& cfg, std::ostream& out) {
  const auto file = load_scheme(cfg.scheme_path);
  const auto g = file.graph();
  const auto& scheme = file.scheme;
  std::string method = cfg.colour_method;
  if (method == "auto") method = scheme.c() == g.k() + 1 ? "gadget" : "constructive";
  std::optional<Colouring> col;
  if (method == "gadget") {
    col = gadget_colouring(g, scheme);
  } else {
    if (scheme.c() == 1) throw std::invalid_argument("constructive colouring needs c >= 2; use `solve` for c = 1");
    col = constructive_colouring(g, scheme, config_for(cfg, scheme.c()));
  }
  if (!col) {
    out << "NO_CONSTRUCTIVE_COLOURING\n";
    return kOk;
  }
  require_verified(g, scheme, *col);
  out << "COLOURING " << format_colouring(*col) << '\n';
  return kOk;
}

inline int run_check_good(const CliConfig& cfg, std::ostream& out) {
  const auto file = load_scheme(cfg.scheme_path);
  const auto report = is_good_scheme(file.graph(), file.scheme, config_for(cfg, file.scheme.c()));
  Sink sink(cfg.output, out);
  sink.get() << to_json(report).dump(2) << '\n';
  return kOk;
}

inline int run_chi(const CliConfig& cfg, std::ostream& out) {
  const auto facts = chromatic_facts_check(CyclePower(cfg.n, cfg.k));
  out << "chi=" << facts.chi << " consistent=" << (facts.consistent ? "true" : "false") << '\n';
  return kOk;
}

}  // namespace detail

/// Parses `args` (without the program name) and dispatches. Data goes to
/// `out`, diagnostics and progress to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"List colouring of cycle powers under random colour schemes"};
  app.require_subcommand(1);
  CliConfig cfg;

  const std::vector<std::string> formats{"csv", "json"};
  const std::vector<std::string> methods{"exact", "constructive-first"};

  auto* simulate = app.add_subcommand("simulate", "Estimate the colourability probability");
  auto* sweep = app.add_subcommand("sweep", "Estimate over a grid of n and palette sizes");
  auto* poisson = app.add_subcommand("poisson", "Sample identical-list clique counts and fit Poisson");
  for (auto* sub : {simulate, poisson}) {
    sub->add_option("--n", cfg.n, "number of vertices")->required();
    sub->add_option("--s", cfg.s, "palette size");
    sub->add_option("--t", cfg.t, "scaling constant, s = round(t n^(1/c^2))");
  }
  sweep->add_option("--n", cfg.n_values, "vertex counts")->required()->delimiter(',');
  sweep->add_option("--s", cfg.s_values, "palette sizes")->delimiter(',');
  sweep->add_option("--t", cfg.t_values, "scaling constants")->delimiter(',');
  for (auto* sub : {simulate, sweep, poisson}) {
    sub->add_option("--k", cfg.k, "cycle power")->required();
    sub->add_option("--c", cfg.c, "list size")->required();
    sub->add_option("--trials", cfg.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "master seed")->required();
    sub->add_option("--jobs", cfg.jobs, "worker threads (0 = all cores)");
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember(formats));
    sub->add_option("--output", cfg.output, "output file (default standard output)");
  }
  for (auto* sub : {simulate, sweep}) {
    sub->add_option("--method", cfg.method, "decision method")->check(CLI::IsMember(methods));
    sub->add_option("--d", cfg.d, "segment exponent for the constructive route");
  }

  auto* solve = app.add_subcommand("solve", "Decide colourability of a scheme file");
  auto* colour = app.add_subcommand("colour", "Constructive or gadget colouring of a scheme file");
  auto* check = app.add_subcommand("check-good", "Good-scheme report (JSON) for a scheme file");
  for (auto* sub : {solve, colour, check})
    sub->add_option("scheme", cfg.scheme_path, "scheme file, or - for standard input")->required();
  colour->add_option("--method", cfg.colour_method, "colouring route")
      ->check(CLI::IsMember({"auto", "constructive", "gadget"}));
  for (auto* sub : {colour, check}) sub->add_option("--d", cfg.d, "segment exponent");
  check->add_option("--output", cfg.output, "output file (default standard output)");

  auto* chi = app.add_subcommand("chi", "Chromatic number of C_n^k against the closed form");
  chi->add_option("--n", cfg.n, "number of vertices")->required();
  chi->add_option("--k", cfg.k, "cycle power")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    if (simulate->parsed()) return detail::run_simulate(cfg, out);
    if (sweep->parsed()) return detail::run_sweep(cfg, out, err);
    if (poisson->parsed()) return detail::run_poisson(cfg, out);
    if (solve->parsed()) return detail::run_solve(cfg, out);
    if (colour->parsed()) return detail::run_colour(cfg, out);
    if (check->parsed()) return detail::run_check_good(cfg, out);
    if (chi->parsed()) return detail::run_chi(cfg, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInvalidInput;
}

}  // namespace cyclelist::cli
