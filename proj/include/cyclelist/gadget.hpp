#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclelist/circulant.hpp"
#include "cyclelist/scheme.hpp"
#include "cyclelist/solver.hpp"

namespace cyclelist {

/// Coloured vertices use list colours and no edge between two coloured
/// vertices is monochromatic. Uncoloured vertices are ignored.
inline bool verify_partial_colouring(const CyclePower& g, const ColourScheme& scheme, const Colouring& col) {
  if (col.assignment.size() != g.n() || scheme.size() != g.n()) return false;
  for (std::size_t v = 0; v < g.n(); ++v) {
    const Colour x = col.assignment[v];
    if (x == kUncoloured) continue;
    if (!scheme.contains(static_cast<Vertex>(v), x)) return false;
    for (std::size_t d = 1; d <= g.k() && d < g.n(); ++d)
      if (col.assignment[g.wrap(v + d)] == x) return false;
  }
  return true;
}

namespace detail {

// Least colour of v's list not used by a coloured neighbour.
inline std::optional<Colour> least_free_colour(const CyclePower& g, const ColourScheme& scheme,
                                               const Colouring& col, Vertex v) {
  for (Colour x : scheme.list(v)) {
    bool used = false;
    for (std::size_t d = 1; d <= g.k() && d < g.n() && !used; ++d)
      used = col.assignment[g.wrap(v + d)] == x || col.assignment[g.wrap(v + g.n() - d)] == x;
    if (!used) return x;
  }
  return std::nullopt;
}

}  // namespace detail

/// Extends a proper partial colouring along `order`, giving each vertex the
/// least list colour not used by an already-coloured neighbour.
inline std::optional<Colouring> greedy_extend(const CyclePower& g, const ColourScheme& scheme, Colouring partial,
                                              std::span<const Vertex> order) {
  require_sized(g, scheme);
  if (!verify_partial_colouring(g, scheme, partial)) return std::nullopt;
  for (Vertex v : order) {
    if (v >= g.n()) throw std::invalid_argument("vertex out of range in greedy order");
    if (partial.assignment[v] != kUncoloured) continue;
    const auto x = detail::least_free_colour(g, scheme, partial, v);
    if (!x) return std::nullopt;
    partial.assignment[v] = *x;
  }
  return partial;
}

/// 2[(k+1)^2 + (k+1)] consecutive vertices.
constexpr std::size_t gadget_length(std::size_t k) { return 2 * (k + 1) * (k + 2); }

/// A gadget window: (k+1)-blocks F, A_1, B_1, ..., A_{k+1}, B_{k+1}, E.
/// Up to the relabelling, F, every B_i and E carry {1..k+1} and A_i carries
/// {1..k+2} - {i}. relabel[j] is the actual colour playing label j (1-based;
/// relabel[0] unused).
struct GadgetMatch {
  Vertex start = 0;
  std::vector<Colour> relabel;
};

namespace detail {

// Label-to-colour map if the window at `start` is a gadget, else nothing.
inline std::optional<std::vector<Colour>> match_gadget(const CyclePower& g, const ColourScheme& scheme, Vertex start) {
  const std::size_t k = g.k();
  const std::size_t b = k + 1;
  const std::size_t blocks = 2 * k + 4;

  std::vector<Colour> uni;
  for (std::size_t i = 0; i < blocks * b; ++i) {
    const auto l = scheme.list(g.wrap(start + i));
    uni.insert(uni.end(), l.begin(), l.end());
  }
  std::sort(uni.begin(), uni.end());
  uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
  if (uni.size() != k + 2) return std::nullopt;

  // Each list is uni minus one colour; record which one per block.
  std::vector<Colour> missing(blocks);
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    const Vertex head = g.wrap(start + blk * b);
    for (std::size_t i = 1; i < b; ++i)
      if (!scheme.same_list(head, g.wrap(start + blk * b + i))) return std::nullopt;
    const auto l = scheme.list(head);
    const auto gap = std::mismatch(l.begin(), l.end(), uni.begin());
    missing[blk] = gap.first == l.end() ? uni.back() : *gap.second;
  }

  const Colour top = missing[0];
  std::vector<Colour> relabel(k + 3, kUncoloured);
  relabel[k + 2] = top;
  for (std::size_t i = 1; i <= k + 1; ++i) {
    if (missing[2 * i] != top) return std::nullopt;
    relabel[i] = missing[2 * i - 1];
  }
  if (missing[blocks - 1] != top) return std::nullopt;
  std::vector<Colour> used(relabel.begin() + 1, relabel.end());
  std::sort(used.begin(), used.end());
  if (used != uni) return std::nullopt;
  return relabel;
}

}  // namespace detail

/// True iff the window at `start` carries the gadget lists literally, with
/// palette {1..k+2} and no relabelling.
inline bool matches_gadget_literal(const CyclePower& g, const ColourScheme& scheme, Vertex start) {
  if (scheme.c() != g.k() + 1 || g.n() < gadget_length(g.k())) return false;
  const auto relabel = detail::match_gadget(g, scheme, start);
  if (!relabel) return false;
  for (std::size_t j = 1; j < relabel->size(); ++j)
    if ((*relabel)[j] != j) return false;
  return true;
}

/// First gadget window (up to relabelling of its k+2 colours) scanning
/// start vertices 0..n-1.
inline std::optional<GadgetMatch> find_gadget(const CyclePower& g, const ColourScheme& scheme) {
  require_sized(g, scheme);
  if (scheme.c() != g.k() + 1 || g.n() < gadget_length(g.k())) return std::nullopt;
  for (std::size_t w = 0; w < g.n(); ++w)
    if (auto relabel = detail::match_gadget(g, scheme, static_cast<Vertex>(w)))
      return GadgetMatch{static_cast<Vertex>(w), std::move(*relabel)};
  return std::nullopt;
}

/// Colours C_n^k with lists of size c = k+1 from a gadget window: E gets
/// labels 1..k+1, the rest of the cycle through F is greedy, then pair i
/// shifts label k+2 into position i so that B_{k+1} ends on 1..k+1 again.
inline std::optional<Colouring> gadget_colouring(const CyclePower& g, const ColourScheme& scheme) {
  require_sized(g, scheme);
  const std::size_t k = g.k();
  if (scheme.c() != k + 1)
    throw std::invalid_argument("gadget colouring needs c = k+1 (c=" + std::to_string(scheme.c()) +
                                ", k=" + std::to_string(k) + ")");
  if (scheme.s() < k + 2) throw std::invalid_argument("gadget colouring needs s >= k+2");
  const auto gadget = find_gadget(g, scheme);
  if (!gadget) return std::nullopt;

  const std::size_t n = g.n();
  const std::size_t b = k + 1;
  const std::size_t len = gadget_length(k);
  const auto& label = gadget->relabel;
  auto at = [&](std::size_t offset) { return g.wrap(gadget->start + offset); };

  Colouring col;
  col.assignment.assign(n, kUncoloured);
  const std::size_t end_block = len - b;
  for (std::size_t p = 0; p < b; ++p) col.assignment[at(end_block + p)] = label[p + 1];

  // From just after E around the cycle to the end of F.
  std::vector<Vertex> order;
  for (std::size_t off = len; off < n + b; ++off) order.push_back(at(off));
  auto greedy = greedy_extend(g, scheme, std::move(col), order);
  if (!greedy) return std::nullopt;
  col = std::move(*greedy);

  for (std::size_t i = 1; i <= k + 1; ++i) {
    const std::size_t a0 = (2 * i - 1) * b;
    const std::size_t b0 = 2 * i * b;
    for (std::size_t p = 0; p + 1 < i; ++p) col.assignment[at(a0 + p)] = label[p + 1];
    col.assignment[at(a0 + i - 1)] = label[k + 2];
    for (std::size_t p = i; p < b; ++p) {
      const auto x = detail::least_free_colour(g, scheme, col, at(a0 + p));
      if (!x) return std::nullopt;
      col.assignment[at(a0 + p)] = *x;
    }
    for (std::size_t p = 0; p < i; ++p) col.assignment[at(b0 + p)] = label[p + 1];
    for (std::size_t p = i; p < b; ++p) col.assignment[at(b0 + p)] = col.assignment[at(a0 + p)];
  }
  if (!verify_colouring(g, scheme, col)) return std::nullopt;
  return col;
}

}  // namespace cyclelist
