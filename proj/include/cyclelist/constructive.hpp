#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclelist/circulant.hpp"
#include "cyclelist/matching.hpp"
#include "cyclelist/scheme.hpp"
#include "cyclelist/solver.hpp"

namespace cyclelist {

/// Segments handled by the constructive colouring have at most n^(1/d)
/// vertices.
struct GoodSchemeConfig {
  double d = 1.0;
  bool strict = false;

  /// Lower bound c^2 (c^2 + c - 1) / (c - 1) on d; undefined for c = 1.
  static double d_bound(std::size_t c) {
    if (c < 2) throw std::invalid_argument("the segment exponent bound needs c >= 2");
    const double cc = static_cast<double>(c);
    return cc * cc * (cc * cc + cc - 1) / (cc - 1);
  }

  /// The bound plus one, in strict mode.
  static GoodSchemeConfig strict_default(std::size_t c) { return {d_bound(c) + 1, true}; }

  void validate(std::size_t c) const {
    if (!(d > 0)) throw std::invalid_argument("segment exponent d must be positive");
    if (strict && c >= 2 && !(d > d_bound(c)))
      throw std::invalid_argument("strict mode needs d > " + std::to_string(d_bound(c)));
  }

  /// floor(n^(1/d)): the longest segment and the widest gap allowed.
  std::size_t max_segment(std::size_t n) const {
    // Nudge so exact powers (e.g. 10000^(1/2)) are not lost to rounding.
    return static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), 1.0 / d) + 1e-9));
  }
};

struct K1SetFamily {
  std::vector<Vertex> starts;  // ascending start vertices of the chosen (k+1)-sets
  std::size_t max_gap = 0;     // most vertices between two cyclically consecutive sets
};

struct GoodSchemeReport {
  bool condition1_ok = false;
  std::vector<Clique> identical_cliques;

  bool condition2_ok = false;
  std::optional<K1SetFamily> family;
  std::size_t gap_limit = 0;

  bool condition3_ok = false;
  std::optional<std::vector<Vertex>> condition3_violation;

  bool is_good = false;
};

inline void require_small_lists(const CyclePower& g, const ColourScheme& scheme) {
  if (scheme.c() > g.k())
    throw std::invalid_argument("good-scheme machinery needs c <= k (c=" + std::to_string(scheme.c()) +
                                ", k=" + std::to_string(g.k()) + ")");
}

/// True iff no (c+1)-clique has all member lists equal; violators go to `witnesses`.
inline bool check_condition1(const CyclePower& g, const ColourScheme& scheme, std::vector<Clique>* witnesses = nullptr) {
  require_small_lists(g, scheme);
  auto cliques = identical_list_cliques(g, scheme);
  const bool ok = cliques.empty();
  if (witnesses) *witnesses = std::move(cliques);
  return ok;
}

/// Whether the (k+1)-set starting at `start` has lists disjoint from the
/// lists of its k predecessors and k successors.
inline bool isolated_k1_set(const CyclePower& g, const ColourScheme& scheme, Vertex start) {
  const std::size_t k = g.k();
  const auto set = g.segment(start, k + 1);
  std::vector<Vertex> around;
  around.reserve(2 * k);
  for (std::size_t d = 1; d <= k; ++d) {
    around.push_back(g.wrap(start + g.n() - d));
    around.push_back(g.wrap(start + k + d));
  }
  return lists_disjoint(scheme, set, around);
}

/// Greedy left-to-right family of disjoint isolated (k+1)-sets. Returns
/// nothing if no isolated set exists or some gap exceeds floor(n^(1/d)).
inline std::optional<K1SetFamily> find_k1_set_family(const CyclePower& g, const ColourScheme& scheme,
                                                     const GoodSchemeConfig& config) {
  require_sized(g, scheme);
  const std::size_t n = g.n();
  const std::size_t k = g.k();
  if (n <= 3 * k + 1)
    throw std::invalid_argument("a (k+1)-set family needs n > 3k+1 (n=" + std::to_string(n) + ")");

  std::size_t first = n;
  for (std::size_t i = 0; i < n; ++i)
    if (isolated_k1_set(g, scheme, static_cast<Vertex>(i))) {
      first = i;
      break;
    }
  if (first == n) return std::nullopt;

  K1SetFamily family;
  family.starts.push_back(static_cast<Vertex>(first));
  std::size_t pos = first + k + 1;
  while (pos + k + 1 <= first + n) {
    if (isolated_k1_set(g, scheme, g.wrap(pos))) {
      family.starts.push_back(g.wrap(pos));
      pos += k + 1;
    } else {
      ++pos;
    }
  }
  std::sort(family.starts.begin(), family.starts.end());
  const auto& st = family.starts;
  for (std::size_t j = 0; j < st.size(); ++j) {
    const std::size_t from = st[j] + k + 1;
    const std::size_t to = j + 1 < st.size() ? st[j + 1] : st[0] + n;
    family.max_gap = std::max(family.max_gap, to - from);
  }
  if (family.max_gap > config.max_segment(n)) return std::nullopt;
  return family;
}

namespace detail {

// Left indices (outside `canonical`) from which no alternating path reaches
// an unmatched colour. Any such vertex extends `canonical` to a larger set
// with deficiency 1.
inline bool has_closed_extension(const ListBipartiteGraph& h, const Matching& m,
                                 const std::vector<std::size_t>& canonical) {
  const std::size_t nl = h.left_size();
  std::vector<Colour> matched;
  for (Colour c : m.colour_of)
    if (c != kUncoloured) matched.push_back(c);
  std::sort(matched.begin(), matched.end());

  std::vector<bool> escapes(nl, false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < nl; ++i) {
      if (escapes[i]) continue;
      for (Colour col : h.lists[i]) {
        bool ok = !std::binary_search(matched.begin(), matched.end(), col);
        for (std::size_t j = 0; j < nl && !ok; ++j) ok = escapes[j] && m.colour_of[j] == col;
        if (ok) {
          escapes[i] = true;
          changed = true;
          break;
        }
      }
    }
  }
  for (std::size_t i = 0; i < nl; ++i)
    if (!escapes[i] && !std::binary_search(canonical.begin(), canonical.end(), i)) return true;
  return false;
}

inline std::size_t hall_deficiency(const ListBipartiteGraph& h, const Matching& m) {
  return h.left_size() - m.size();
}

}  // namespace detail

/// Hall-type expansion on a segment: every subset X with |X| >= c+2 sees at
/// least |X| colours. Decided through a maximum matching instead of
/// enumerating subsets.
inline bool check_condition3(const CyclePower& g, const ColourScheme& scheme, std::span<const Vertex> segment) {
  require_sized(g, scheme);
  const auto h = ListBipartiteGraph::from_scheme(scheme, segment);
  const Matching m = max_matching(h);
  const std::size_t deficiency = detail::hall_deficiency(h, m);
  if (deficiency == 0) return true;
  if (deficiency >= 2) return false;
  const auto canonical = alternating_reach(h, m, m.unsaturated().front());
  // |canonical| = |N(canonical)| + 1 >= c + 1, with equality iff all its lists coincide.
  if (canonical.size() != scheme.c() + 1) return false;
  return !detail::has_closed_extension(h, m, canonical);
}

/// Colours a segment from its lists minus per-vertex forbidden colours.
/// Uses a maximum matching; if exactly one vertex stays unsaturated, two
/// non-adjacent members of its deficient set share a colour and the rest
/// is rematched. Returns one colour per segment vertex, or nothing when the
/// segment cannot be coloured this way.
inline std::optional<std::vector<Colour>> colour_segment(const CyclePower& g, const ColourScheme& scheme,
                                                         std::span<const Vertex> segment,
                                                         std::span<const std::vector<Colour>> forbidden = {}) {
  require_sized(g, scheme);
  if (!forbidden.empty() && forbidden.size() != segment.size())
    throw std::invalid_argument("forbidden sets must match the segment length");

  ListBipartiteGraph h;
  h.left.assign(segment.begin(), segment.end());
  for (std::size_t i = 0; i < segment.size(); ++i) {
    std::vector<Colour> allowed;
    for (Colour col : scheme.list(segment[i]))
      if (forbidden.empty() || std::find(forbidden[i].begin(), forbidden[i].end(), col) == forbidden[i].end())
        allowed.push_back(col);
    if (allowed.empty()) return std::nullopt;
    h.lists.push_back(std::move(allowed));
  }

  const Matching m = max_matching(h);
  const std::size_t deficiency = detail::hall_deficiency(h, m);
  if (deficiency == 0) return m.colour_of;
  if (deficiency >= 2) return std::nullopt;

  const auto deficient = alternating_reach(h, m, m.unsaturated().front());
  for (std::size_t a = 0; a < deficient.size(); ++a) {
    for (std::size_t b = a + 1; b < deficient.size(); ++b) {
      const std::size_t u = deficient[a];
      const std::size_t w = deficient[b];
      if (h.left[u] == h.left[w] || g.adjacent(h.left[u], h.left[w])) continue;
      for (Colour shared : h.lists[u]) {
        if (!std::binary_search(h.lists[w].begin(), h.lists[w].end(), shared)) continue;
        ListBipartiteGraph rest;
        std::vector<std::size_t> index;
        bool dead = false;
        for (std::size_t i = 0; i < h.left_size() && !dead; ++i) {
          if (i == u || i == w) continue;
          std::vector<Colour> l;
          for (Colour col : h.lists[i])
            if (col != shared) l.push_back(col);
          dead = l.empty();
          rest.left.push_back(h.left[i]);
          rest.lists.push_back(std::move(l));
          index.push_back(i);
        }
        if (dead) continue;
        const Matching mm = max_matching(rest);
        if (mm.size() != rest.left_size()) continue;
        std::vector<Colour> out(h.left_size(), kUncoloured);
        out[u] = out[w] = shared;
        for (std::size_t j = 0; j < index.size(); ++j) out[index[j]] = mm.colour_of[j];
        return out;
      }
    }
  }
  return std::nullopt;
}

namespace detail {

// Segments between consecutive chosen sets, in cycle order (empty runs skipped).
inline std::vector<std::vector<Vertex>> runs_between(const CyclePower& g, const K1SetFamily& family) {
  std::vector<std::vector<Vertex>> runs;
  const auto& st = family.starts;
  for (std::size_t j = 0; j < st.size(); ++j) {
    const std::size_t from = st[j] + g.k() + 1;
    const std::size_t to = j + 1 < st.size() ? st[j + 1] : st[0] + g.n();
    if (to > from) runs.push_back(g.segment(g.wrap(from), to - from));
  }
  return runs;
}

}  // namespace detail

/// Evaluates the three good-scheme conditions. Condition 3 is checked on
/// every chosen (k+1)-set and every run between consecutive sets; without a
/// family it is checked on a tiling of the cycle by maximal segments.
inline GoodSchemeReport is_good_scheme(const CyclePower& g, const ColourScheme& scheme, const GoodSchemeConfig& config) {
  require_small_lists(g, scheme);
  config.validate(scheme.c());
  GoodSchemeReport r;
  r.condition1_ok = check_condition1(g, scheme, &r.identical_cliques);
  r.gap_limit = config.max_segment(g.n());
  r.family = find_k1_set_family(g, scheme, config);
  r.condition2_ok = r.family.has_value();

  std::vector<std::vector<Vertex>> segments;
  if (r.family) {
    for (Vertex st : r.family->starts) segments.push_back(g.segment(st, g.k() + 1));
    for (auto& run : detail::runs_between(g, *r.family)) segments.push_back(std::move(run));
  } else {
    const std::size_t len = std::max<std::size_t>(1, r.gap_limit);
    for (std::size_t i = 0; i < g.n(); i += len)
      segments.push_back(g.segment(static_cast<Vertex>(i), std::min(len, g.n() - i)));
  }
  r.condition3_ok = true;
  for (const auto& seg : segments) {
    if (!check_condition3(g, scheme, seg)) {
      r.condition3_ok = false;
      r.condition3_violation = seg;
      break;
    }
  }
  r.is_good = r.condition1_ok && r.condition2_ok && r.condition3_ok;
  return r;
}

/// Colours a good scheme: each chosen (k+1)-set on its own, then each run
/// between sets with the neighbouring set colours forbidden. Returns
/// nothing for schemes that are not good, for c = 1, or if any step fails;
/// a returned colouring always passes verify_colouring.
inline std::optional<Colouring> constructive_colouring(const CyclePower& g, const ColourScheme& scheme,
                                                       const GoodSchemeConfig& config) {
  require_small_lists(g, scheme);
  if (scheme.c() < 2) return std::nullopt;
  const auto report = is_good_scheme(g, scheme, config);
  if (!report.is_good) return std::nullopt;

  Colouring col;
  col.assignment.assign(g.n(), kUncoloured);
  for (Vertex st : report.family->starts) {
    const auto set = g.segment(st, g.k() + 1);
    const auto colours = colour_segment(g, scheme, set);
    if (!colours) return std::nullopt;
    for (std::size_t i = 0; i < set.size(); ++i) col.assignment[set[i]] = (*colours)[i];
  }
  for (const auto& run : detail::runs_between(g, *report.family)) {
    std::vector<std::vector<Colour>> forbidden(run.size());
    for (std::size_t i = 0; i < run.size(); ++i)
      for (std::size_t d = 1; d <= g.k(); ++d)
        for (Vertex nb : {g.wrap(run[i] + d), g.wrap(run[i] + g.n() - d)})
          if (col.assignment[nb] != kUncoloured) forbidden[i].push_back(col.assignment[nb]);
    const auto colours = colour_segment(g, scheme, run, forbidden);
    if (!colours) return std::nullopt;
    for (std::size_t i = 0; i < run.size(); ++i) col.assignment[run[i]] = (*colours)[i];
  }
  if (!verify_colouring(g, scheme, col)) return std::nullopt;
  return col;
}

}  // namespace cyclelist
