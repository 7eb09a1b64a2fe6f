#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "cyclelist/circulant.hpp"
#include "cyclelist/constructive.hpp"
#include "cyclelist/gadget.hpp"
#include "cyclelist/scheme.hpp"
#include "cyclelist/solver.hpp"

namespace cyclelist {

inline double binomial(std::size_t n, std::size_t r) {
  if (r > n) return 0.0;
  r = std::min(r, n - r);
  double out = 1.0;
  for (std::size_t j = 1; j <= r; ++j) out = out * static_cast<double>(n - r + j) / static_cast<double>(j);
  return out;
}

/// Limiting mean C(k,c) t^(-c^2) (c!)^c of the identical-list clique count
/// when s ~ t n^(1/c^2).
inline double mu_limit(std::size_t c, std::size_t k, double t) {
  if (c < 1 || c > k) throw std::invalid_argument("mu_limit needs 1 <= c <= k");
  if (!(t > 0)) throw std::invalid_argument("mu_limit needs t > 0");
  double fact = 1.0;
  for (std::size_t j = 2; j <= c; ++j) fact *= static_cast<double>(j);
  const double cc = static_cast<double>(c);
  return binomial(k, c) * std::pow(t, -cc * cc) * std::pow(fact, cc);
}

/// Exact E[X] = n C(k,c) C(s,c)^(-c) for the identical-list clique count.
inline double mu_finite(std::size_t n, std::size_t c, std::size_t k, std::size_t s) {
  if (c < 1 || c > k) throw std::invalid_argument("mu_finite needs 1 <= c <= k");
  if (c > s) throw std::invalid_argument("mu_finite needs c <= s");
  if (n < 2 * k + 2) throw std::invalid_argument("mu_finite needs n >= 2k+2");
  const double lists = binomial(s, c);
  return static_cast<double>(n) * binomial(k, c) * std::exp(-static_cast<double>(c) * std::log(lists));
}

/// Palette size round(t n^(1/c^2)), never below c.
inline std::size_t palette_for(std::size_t n, std::size_t c, double t) {
  if (!(t > 0)) throw std::invalid_argument("scaling constant t must be positive");
  const double cc = static_cast<double>(c);
  const double s = std::round(t * std::pow(static_cast<double>(n), 1.0 / (cc * cc)));
  return std::max<std::size_t>(c, static_cast<std::size_t>(s));
}

/// t such that s = t n^(1/c^2).
inline double scaling_for(std::size_t n, std::size_t c, std::size_t s) {
  const double cc = static_cast<double>(c);
  return static_cast<double>(s) / std::pow(static_cast<double>(n), 1.0 / (cc * cc));
}

struct PoissonPrediction {
  double mu_limit = 0;
  double mu_finite = 0;
  double p_predicted = 1;
};

/// Poisson prediction for the c <= k regime; nothing outside it.
inline std::optional<PoissonPrediction> predict(std::size_t n, std::size_t c, std::size_t k, std::size_t s, double t) {
  if (c < 1 || c > k || c > s || n < 2 * k + 2 || !(t > 0)) return std::nullopt;
  PoissonPrediction p;
  p.mu_limit = mu_limit(c, k, t);
  p.mu_finite = mu_finite(n, c, k, s);
  p.p_predicted = std::exp(-p.mu_finite);
  return p;
}

struct Interval {
  double low = 0;
  double high = 1;
};

inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for a binomial proportion.
inline Interval wilson_interval(std::size_t successes, std::size_t trials, double z = kZ95) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1 + z2 / n;
  const double centre = (p + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  return {std::clamp(centre - half, 0.0, p), std::clamp(centre + half, p, 1.0)};
}

enum class Method { exact, constructive_first };

struct EstimateOptions {
  Method method = Method::exact;
  unsigned jobs = 1;  // 0 = hardware concurrency
  std::optional<GoodSchemeConfig> config;  // constructive route; default d_bound(c) + 1
};

struct EstimateResult {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double p_hat = 0;
  double ci_low = 0;
  double ci_high = 1;
  std::uint64_t master_seed = 0;
};

/// Runs body(i) for i in [0, count) on `jobs` threads. Callers write results
/// by index so the outcome never depends on scheduling.
inline void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(count, 1)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  for (unsigned w = 0; w < jobs; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next++; i < count && !failed; i = next++) body(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Decides one scheme by the requested method. Constructive successes are
/// returned without consulting the exact solver; everything else falls
/// back to it, so both methods give the same verdict.
inline bool decide_trial(const CyclePower& g, const ColourScheme& scheme, const EstimateOptions& opt) {
  if (opt.method == Method::constructive_first) {
    const std::size_t c = scheme.c();
    const std::size_t k = g.k();
    if (c >= 2 && c <= k && g.n() > 3 * k + 1) {
      const auto config = opt.config.value_or(GoodSchemeConfig::strict_default(c));
      if (constructive_colouring(g, scheme, config)) return true;
    } else if (c == k + 1 && scheme.s() >= k + 2) {
      if (gadget_colouring(g, scheme)) return true;
    }
  }
  return decide_colourable(g, scheme).colourable;
}

/// Monte Carlo estimate of the colourability probability; trial i uses
/// stream (master_seed, i).
inline EstimateResult estimate_p(const CyclePower& g, SchemeParams params, std::size_t trials,
                                 std::uint64_t master_seed, const EstimateOptions& opt = {}) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  params.validate();
  std::vector<std::uint8_t> ok(trials, 0);
  parallel_for(trials, opt.jobs, [&](std::size_t i) {
    const auto scheme = sample_scheme(g, params, {master_seed, i});
    ok[i] = decide_trial(g, scheme, opt) ? 1 : 0;
  });
  EstimateResult r;
  r.trials = trials;
  for (auto b : ok) r.successes += b;
  r.p_hat = static_cast<double>(r.successes) / static_cast<double>(trials);
  const auto ci = wilson_interval(r.successes, trials);
  r.ci_low = ci.low;
  r.ci_high = ci.high;
  r.master_seed = master_seed;
  return r;
}

struct PoissonBucket {
  std::size_t from = 0;  // smallest count in the bucket
  std::optional<std::size_t> to;  // largest count; open-ended tail if empty
  double expected = 0;
  std::size_t observed = 0;
};

struct PoissonFitResult {
  std::size_t trials = 0;
  double mu_finite = 0;
  double sample_mean = 0;
  std::vector<std::size_t> histogram;  // histogram[x] = trials with X = x
  std::vector<PoissonBucket> buckets;
  double chi_square = 0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 1;
};

inline constexpr double kPoolThreshold = 5.0;

/// Chi-square goodness of fit of `histogram` against Poisson(mu). Adjacent
/// values are pooled until each bucket expects at least `pool` counts; the
/// last bucket absorbs the upper tail.
inline PoissonFitResult poisson_fit(const std::vector<std::size_t>& histogram, double mu, double pool = kPoolThreshold) {
  PoissonFitResult r;
  r.mu_finite = mu;
  r.histogram = histogram;
  double sum = 0;
  for (std::size_t x = 0; x < histogram.size(); ++x) {
    r.trials += histogram[x];
    sum += static_cast<double>(x) * static_cast<double>(histogram[x]);
  }
  if (r.trials == 0) return r;
  r.sample_mean = sum / static_cast<double>(r.trials);
  const double trials = static_cast<double>(r.trials);

  const std::size_t last =
      std::max(histogram.size(), static_cast<std::size_t>(mu + 10 * std::sqrt(mu) + 10));
  auto pmf = [&](std::size_t x) {
    if (mu <= 0) return x == 0 ? 1.0 : 0.0;
    const double xd = static_cast<double>(x);
    return std::exp(-mu + xd * std::log(mu) - std::lgamma(xd + 1));
  };

  double covered = 0;
  PoissonBucket open;
  for (std::size_t x = 0; x <= last; ++x) {
    const double p = pmf(x);
    covered += p;
    open.expected += trials * p;
    open.observed += x < histogram.size() ? histogram[x] : 0;
    open.to = x;
    if (open.expected >= pool) {
      r.buckets.push_back(open);
      open = PoissonBucket{};
      open.from = x + 1;
    }
  }
  open.expected += trials * std::max(0.0, 1.0 - covered);
  open.to.reset();
  if (!r.buckets.empty() && open.expected < pool) {
    r.buckets.back().expected += open.expected;
    r.buckets.back().observed += open.observed;
    r.buckets.back().to.reset();
  } else {
    r.buckets.push_back(open);
  }
  if (r.buckets.size() < 2) return r;

  for (const auto& b : r.buckets) {
    const double diff = static_cast<double>(b.observed) - b.expected;
    r.chi_square += b.expected > 0 ? diff * diff / b.expected : (b.observed > 0 ? INFINITY : 0.0);
  }
  r.degrees_of_freedom = r.buckets.size() - 1;
  if (std::isinf(r.chi_square)) {
    r.p_value = 0;
  } else {
    const boost::math::chi_squared dist(static_cast<double>(r.degrees_of_freedom));
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.chi_square));
  }
  return r;
}

/// Samples the identical-list clique count X over `trials` schemes and fits
/// it against Poisson(mu_finite).
inline PoissonFitResult sample_clique_counts(const CyclePower& g, SchemeParams params, std::size_t trials,
                                             std::uint64_t master_seed, unsigned jobs = 1) {
  params.validate();
  if (params.c > g.k()) throw std::invalid_argument("clique counts need c <= k");
  const double mu = mu_finite(g.n(), params.c, g.k(), params.s);
  std::vector<std::size_t> counts(trials);
  parallel_for(trials, jobs, [&](std::size_t i) {
    counts[i] = count_identical_list_cliques(g, sample_scheme(g, params, {master_seed, i}));
  });
  std::vector<std::size_t> hist;
  for (std::size_t x : counts) {
    if (x >= hist.size()) hist.resize(x + 1, 0);
    ++hist[x];
  }
  return poisson_fit(hist, mu);
}

/// Either scaling constants t (s = round(t n^(1/c^2))) or fixed palette sizes.
struct SweepRule {
  std::vector<double> t_values;
  std::vector<std::size_t> s_values;
};

struct SweepRow {
  std::size_t n = 0, k = 0, c = 0, s = 0;
  double t = 0;
  EstimateResult estimate;
  std::optional<PoissonPrediction> prediction;
};

/// One row per (n, t) or (n, s) cell, ordered by n then by rule value as given.
inline std::vector<SweepRow> regime_sweep(std::size_t c, std::size_t k, const std::vector<std::size_t>& n_values,
                                          const SweepRule& rule, std::size_t trials, std::uint64_t master_seed,
                                          const EstimateOptions& opt = {},
                                          const std::function<void(const SweepRow&)>& progress = {}) {
  if (rule.t_values.empty() == rule.s_values.empty())
    throw std::invalid_argument("sweep needs exactly one of t values or s values");
  std::vector<SweepRow> rows;
  for (std::size_t n : n_values) {
    const CyclePower g(n, k);
    const std::size_t cells = rule.t_values.empty() ? rule.s_values.size() : rule.t_values.size();
    for (std::size_t j = 0; j < cells; ++j) {
      SweepRow row;
      row.n = n;
      row.k = k;
      row.c = c;
      if (rule.t_values.empty()) {
        row.s = rule.s_values[j];
        row.t = scaling_for(n, c, row.s);
      } else {
        row.t = rule.t_values[j];
        row.s = palette_for(n, c, row.t);
      }
      row.estimate = estimate_p(g, {c, row.s}, trials, master_seed, opt);
      row.prediction = predict(n, c, k, row.s, row.t);
      if (progress) progress(row);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace cyclelist
