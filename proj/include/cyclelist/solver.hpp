#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclelist/circulant.hpp"
#include "cyclelist/matching.hpp"
#include "cyclelist/scheme.hpp"

namespace cyclelist {

/// Colour per vertex; kUncoloured marks a vertex left open in partial colourings.
struct Colouring {
  std::vector<Colour> assignment;

  friend bool operator==(const Colouring&, const Colouring&) = default;
};

struct SolveOutcome {
  bool colourable = false;
  std::optional<Colouring> witness;
};

class InstanceTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Every vertex coloured from its own list and no edge monochromatic.
inline bool verify_colouring(const CyclePower& g, const ColourScheme& scheme, const Colouring& col) {
  if (scheme.size() != g.n() || col.assignment.size() != g.n()) return false;
  for (std::size_t v = 0; v < g.n(); ++v) {
    const Colour x = col.assignment[v];
    if (x == kUncoloured || !scheme.contains(static_cast<Vertex>(v), x)) return false;
    for (std::size_t d = 1; d <= g.k() && d < g.n(); ++d)
      if (col.assignment[g.wrap(v + d)] == x) return false;
  }
  return true;
}

namespace detail {

inline SolveOutcome solve_complete(const CyclePower& g, const ColourScheme& scheme) {
  std::vector<Vertex> all(g.n());
  std::iota(all.begin(), all.end(), Vertex{0});
  const auto h = ListBipartiteGraph::from_scheme(scheme, all);
  const Matching m = max_matching(h);
  if (m.size() != g.n()) return {false, std::nullopt};
  return {true, Colouring{m.colour_of}};
}

// Exact transfer-matrix decision for n >= 2k+2. Vertices 0..k-1 are fixed to
// each admissible combination in turn; a forward pass then tracks which
// colourings of the last k vertices are reachable. A state is the base-c
// number of list indices of vertices i-k+1..i, oldest digit most significant.
inline SolveOutcome solve_windowed(const CyclePower& g, const ColourScheme& scheme) {
  const std::size_t n = g.n();
  const std::size_t k = g.k();
  const std::size_t c = scheme.c();
  std::size_t states = 1;
  for (std::size_t j = 0; j < k; ++j) states *= c;
  const std::size_t high = states / c;  // c^(k-1)

  std::vector<std::uint8_t> reach(states), next(states);
  std::vector<std::uint32_t> live, next_live;
  live.reserve(states);
  next_live.reserve(states);
  constexpr std::uint32_t kUnset = 0xffffffffu;
  std::vector<std::uint32_t> pred((n - k) * states);
  std::vector<Colour> window(k);
  std::vector<Colour> prefix(k);

  auto decode = [&](std::size_t state, std::size_t last_vertex, std::vector<Colour>& out) {
    for (std::size_t j = k; j-- > 0;) {
      const std::size_t v = last_vertex + j + 1 - k;
      out[j] = scheme.list(static_cast<Vertex>(v))[state % c];
      state /= c;
    }
  };

  for (std::size_t start = 0; start < states; ++start) {
    decode(start, k - 1, prefix);
    bool proper = true;
    for (std::size_t a = 0; a < k && proper; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        if (prefix[a] == prefix[b]) {
          proper = false;
          break;
        }
    if (!proper) continue;

    std::fill(reach.begin(), reach.end(), 0);
    live.assign(1, static_cast<std::uint32_t>(start));
    reach[start] = 1;

    for (std::size_t i = k; i < n && !live.empty(); ++i) {
      const auto list = scheme.list(static_cast<Vertex>(i));
      // Vertices 0..i+k-n wrap around and are adjacent to i.
      const std::size_t wrap_hi = i + k >= n ? i + k - n + 1 : 0;
      std::uint32_t* layer = pred.data() + (i - k) * states;
      std::fill(layer, layer + states, kUnset);
      std::fill(next.begin(), next.end(), 0);
      next_live.clear();
      std::sort(live.begin(), live.end());
      for (std::uint32_t st : live) {
        decode(st, i - 1, window);
        for (std::size_t x = 0; x < c; ++x) {
          const Colour y = list[x];
          if (std::find(window.begin(), window.end(), y) != window.end()) continue;
          if (std::find(prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(wrap_hi), y) !=
              prefix.begin() + static_cast<std::ptrdiff_t>(wrap_hi))
            continue;
          const std::size_t ns = (st % high) * c + x;
          if (!next[ns]) {
            next[ns] = 1;
            layer[ns] = st;
            next_live.push_back(static_cast<std::uint32_t>(ns));
          }
        }
      }
      std::swap(live, next_live);
    }
    if (live.empty()) continue;

    Colouring col;
    col.assignment.assign(n, kUncoloured);
    std::size_t st = *std::min_element(live.begin(), live.end());
    for (std::size_t i = n; i-- > k;) {
      col.assignment[i] = scheme.list(static_cast<Vertex>(i))[st % c];
      st = pred[(i - k) * states + st];
    }
    for (std::size_t j = 0; j < k; ++j) col.assignment[j] = prefix[j];
    return {true, std::move(col)};
  }
  return {false, std::nullopt};
}

}  // namespace detail

/// Exact decision of L-colourability with a witness when one exists.
/// Complete graphs (n <= 2k+1) reduce to a system of distinct
/// representatives; otherwise a windowed dynamic program runs in
/// O(c^k * n * c^(k+1) * k).
inline SolveOutcome decide_colourable(const CyclePower& g, const ColourScheme& scheme) {
  require_sized(g, scheme);
  return g.is_complete() ? detail::solve_complete(g, scheme) : detail::solve_windowed(g, scheme);
}

inline constexpr double kBruteForceLimit = 1e8;

/// Exhaustive backtracking oracle. Rejects instances with c^n > 1e8.
inline SolveOutcome brute_force_colourable(const CyclePower& g, const ColourScheme& scheme) {
  require_sized(g, scheme);
  double work = 1;
  for (std::size_t i = 0; i < g.n(); ++i) {
    work *= static_cast<double>(scheme.c());
    if (work > kBruteForceLimit)
      throw InstanceTooLarge("brute force needs c^n <= 1e8 (n=" + std::to_string(g.n()) +
                             ", c=" + std::to_string(scheme.c()) + ")");
  }
  const std::size_t n = g.n();
  std::vector<std::size_t> choice(n, 0);
  Colouring col;
  col.assignment.assign(n, kUncoloured);

  std::size_t v = 0;
  while (true) {
    bool placed = false;
    while (choice[v] < scheme.c()) {
      const Colour x = scheme.list(static_cast<Vertex>(v))[choice[v]++];
      bool ok = true;
      for (std::size_t u = 0; u < v; ++u)
        if (col.assignment[u] == x && g.adjacent(static_cast<Vertex>(u), static_cast<Vertex>(v))) {
          ok = false;
          break;
        }
      if (ok) {
        col.assignment[v] = x;
        placed = true;
        break;
      }
    }
    if (placed) {
      if (v + 1 == n) return {true, std::move(col)};
      ++v;
      choice[v] = 0;
    } else {
      col.assignment[v] = kUncoloured;
      if (v == 0) return {false, std::nullopt};
      --v;
    }
  }
}

struct ChromaticFacts {
  std::size_t chi = 0;
  std::size_t predicted = 0;  // k+1 if (k+1) | n, else k+2
  bool consistent = false;
};

/// Computes the chromatic number of C_n^k with the exact solver and compares
/// it with the closed form, valid for n >= k(k+1).
inline ChromaticFacts chromatic_facts_check(const CyclePower& g) {
  const std::size_t k = g.k();
  if (g.n() < k * (k + 1))
    throw std::invalid_argument("chromatic facts need n >= k(k+1); got n=" + std::to_string(g.n()) +
                                ", k=" + std::to_string(k));
  ChromaticFacts facts;
  facts.predicted = g.n() % (k + 1) == 0 ? k + 1 : k + 2;
  for (std::size_t m = k + 1; m <= g.n(); ++m) {
    std::vector<Colour> full(m);
    std::iota(full.begin(), full.end(), Colour{1});
    const auto scheme = ColourScheme::uniform(g.n(), {m, m}, full);
    if (decide_colourable(g, scheme).colourable) {
      facts.chi = m;
      break;
    }
  }
  facts.consistent = facts.chi == facts.predicted;
  return facts;
}

}  // namespace cyclelist
