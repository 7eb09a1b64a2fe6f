#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cyclelist/circulant.hpp"
#include "cyclelist/constructive.hpp"
#include "cyclelist/experiment.hpp"
#include "cyclelist/scheme.hpp"
#include "cyclelist/solver.hpp"

namespace cyclelist {

class SchemeParseError : public std::invalid_argument {
 public:
  SchemeParseError(std::size_t line, const std::string& what)
      : std::invalid_argument("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct SchemeFile {
  std::size_t k = 1;
  ColourScheme scheme;

  CyclePower graph() const { return CyclePower(scheme.size(), k); }
};

namespace detail {

inline std::vector<long long> parse_numbers(const std::string& text, std::size_t line) {
  std::istringstream in(text);
  std::vector<long long> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw SchemeParseError(line, "expected an integer, got '" + tok + "'");
    }
    if (used != tok.size()) throw SchemeParseError(line, "expected an integer, got '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

/// Plain-text scheme: a header line `n k c s`, then one line per vertex
/// holding its c colours separated by spaces. Blank lines after the last
/// list are ignored.
inline SchemeFile read_scheme(std::istream& in) {
  std::string text;
  std::size_t line = 0;
  std::vector<long long> header;
  while (header.empty() && std::getline(in, text)) {
    ++line;
    header = detail::parse_numbers(text, line);
  }
  if (header.empty()) throw SchemeParseError(line == 0 ? 1 : line, "missing header `n k c s`");
  if (header.size() != 4) throw SchemeParseError(line, "header must be `n k c s`");
  for (long long v : header)
    if (v < 1) throw SchemeParseError(line, "header values must be positive");
  const auto n = static_cast<std::size_t>(header[0]);
  const auto k = static_cast<std::size_t>(header[1]);
  const SchemeParams params{static_cast<std::size_t>(header[2]), static_cast<std::size_t>(header[3])};
  if (n < 3) throw SchemeParseError(line, "n must be at least 3");
  if (params.c > params.s) throw SchemeParseError(line, "c must not exceed s");

  std::vector<Colour> flat;
  flat.reserve(n * params.c);
  std::size_t vertex = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto values = detail::parse_numbers(text, line);
    if (values.empty() && vertex == n) continue;
    if (vertex == n) throw SchemeParseError(line, "more than n=" + std::to_string(n) + " lists");
    if (values.size() != params.c)
      throw SchemeParseError(line, "expected " + std::to_string(params.c) + " colours, got " +
                                       std::to_string(values.size()));
    std::vector<long long> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] < 1 || sorted[i] > static_cast<long long>(params.s))
        throw SchemeParseError(line, "colour " + std::to_string(sorted[i]) + " outside 1.." + std::to_string(params.s));
      if (i > 0 && sorted[i] == sorted[i - 1])
        throw SchemeParseError(line, "colour " + std::to_string(sorted[i]) + " repeated");
      flat.push_back(static_cast<Colour>(sorted[i]));
    }
    ++vertex;
  }
  if (vertex != n)
    throw SchemeParseError(line + 1, "expected " + std::to_string(n) + " lists, found " + std::to_string(vertex));
  return {k, ColourScheme(n, params, std::move(flat))};
}

inline void write_scheme(std::ostream& out, std::size_t k, const ColourScheme& scheme) {
  out << scheme.size() << ' ' << k << ' ' << scheme.c() << ' ' << scheme.s() << '\n';
  for (std::size_t v = 0; v < scheme.size(); ++v) {
    const auto l = scheme.list(static_cast<Vertex>(v));
    for (std::size_t i = 0; i < l.size(); ++i) out << (i ? " " : "") << l[i];
    out << '\n';
  }
}

inline std::string format_colouring(const Colouring& col) {
  std::string out;
  for (std::size_t i = 0; i < col.assignment.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(col.assignment[i]);
  }
  return out;
}

namespace detail {

inline std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

inline std::string general(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace detail

inline constexpr const char* kSweepCsvHeader =
    "n,k,c,s,t,trials,successes,p_hat,ci_low,ci_high,mu_finite,mu_limit,p_predicted,master_seed";

/// One CSV line (no newline). Prediction columns are empty outside c <= k.
inline std::string csv_row(const SweepRow& row) {
  using detail::fixed6;
  using detail::general;
  const auto& e = row.estimate;
  std::string out = std::to_string(row.n) + ',' + std::to_string(row.k) + ',' + std::to_string(row.c) + ',' +
                    std::to_string(row.s) + ',' + general(row.t) + ',' + std::to_string(e.trials) + ',' +
                    std::to_string(e.successes) + ',' + fixed6(e.p_hat) + ',' + fixed6(e.ci_low) + ',' +
                    fixed6(e.ci_high) + ',';
  if (row.prediction)
    out += general(row.prediction->mu_finite) + ',' + general(row.prediction->mu_limit) + ',' +
           fixed6(row.prediction->p_predicted);
  else
    out += ",,";
  out += ',' + std::to_string(e.master_seed);
  return out;
}

inline void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : rows) out << csv_row(r) << '\n';
}

inline nlohmann::ordered_json to_json(const SweepRow& row) {
  nlohmann::ordered_json j;
  j["n"] = row.n;
  j["k"] = row.k;
  j["c"] = row.c;
  j["s"] = row.s;
  j["t"] = row.t;
  j["trials"] = row.estimate.trials;
  j["successes"] = row.estimate.successes;
  j["p_hat"] = row.estimate.p_hat;
  j["ci_low"] = row.estimate.ci_low;
  j["ci_high"] = row.estimate.ci_high;
  if (row.prediction) {
    j["mu_finite"] = row.prediction->mu_finite;
    j["mu_limit"] = row.prediction->mu_limit;
    j["p_predicted"] = row.prediction->p_predicted;
  } else {
    j["mu_finite"] = nullptr;
    j["mu_limit"] = nullptr;
    j["p_predicted"] = nullptr;
  }
  j["master_seed"] = row.estimate.master_seed;
  return j;
}

inline void write_json(std::ostream& out, const std::vector<SweepRow>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) arr.push_back(to_json(r));
  out << arr.dump(2) << '\n';
}

inline nlohmann::ordered_json to_json(const GoodSchemeReport& r) {
  nlohmann::ordered_json j;
  j["is_good"] = r.is_good;
  j["condition1"] = {{"ok", r.condition1_ok}, {"identical_list_cliques", r.identical_cliques}};
  nlohmann::ordered_json c2;
  c2["ok"] = r.condition2_ok;
  c2["gap_limit"] = r.gap_limit;
  if (r.family) {
    c2["starts"] = r.family->starts;
    c2["max_gap"] = r.family->max_gap;
  } else {
    c2["starts"] = nullptr;
    c2["max_gap"] = nullptr;
  }
  j["condition2"] = c2;
  nlohmann::ordered_json c3;
  c3["ok"] = r.condition3_ok;
  if (r.condition3_violation)
    c3["violating_segment"] = *r.condition3_violation;
  else
    c3["violating_segment"] = nullptr;
  j["condition3"] = c3;
  return j;
}

inline nlohmann::ordered_json to_json(const PoissonFitResult& r) {
  nlohmann::ordered_json j;
  j["trials"] = r.trials;
  j["mu_finite"] = r.mu_finite;
  j["sample_mean"] = r.sample_mean;
  j["chi_square"] = r.chi_square;
  j["degrees_of_freedom"] = r.degrees_of_freedom;
  j["p_value"] = r.p_value;
  j["histogram"] = r.histogram;
  auto buckets = nlohmann::ordered_json::array();
  for (const auto& b : r.buckets) {
    nlohmann::ordered_json e;
    e["from"] = b.from;
    if (b.to)
      e["to"] = *b.to;
    else
      e["to"] = nullptr;
    e["expected"] = b.expected;
    e["observed"] = b.observed;
    buckets.push_back(e);
  }
  j["buckets"] = buckets;
  return j;
}

}  // namespace cyclelist
