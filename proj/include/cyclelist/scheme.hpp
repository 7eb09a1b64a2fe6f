#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclelist/circulant.hpp"
#include "cyclelist/rng.hpp"

namespace cyclelist {

/// Colours are 1-based palette indices; 0 is reserved for "uncoloured".
using Colour = std::uint32_t;
inline constexpr Colour kUncoloured = 0;

struct SchemeParams {
  std::size_t c = 1;  // list size
  std::size_t s = 1;  // palette size

  void validate() const {
    if (c < 1) throw std::invalid_argument("list size c must be at least 1");
    if (c > s)
      throw std::invalid_argument("list size c=" + std::to_string(c) + " exceeds palette size s=" +
                                  std::to_string(s));
  }
};

/// One sorted list of c distinct colours from {1..s} per vertex, stored
/// flat (vertex v owns entries [v*c, v*c + c)).
class ColourScheme {
 public:
  ColourScheme() = default;

  ColourScheme(std::size_t n, SchemeParams params, std::vector<Colour> flat)
      : n_(n), params_(params), flat_(std::move(flat)) {
    params_.validate();
    if (flat_.size() != n_ * params_.c)
      throw std::invalid_argument("scheme storage does not hold n*c colours");
    for (std::size_t v = 0; v < n_; ++v) {
      auto first = flat_.begin() + static_cast<std::ptrdiff_t>(v * params_.c);
      auto last = first + static_cast<std::ptrdiff_t>(params_.c);
      std::sort(first, last);
      if (std::adjacent_find(first, last) != last)
        throw std::invalid_argument("list of vertex " + std::to_string(v) + " repeats a colour");
      if (*first < 1 || *(last - 1) > params_.s)
        throw std::invalid_argument("list of vertex " + std::to_string(v) +
                                    " has a colour outside 1.." + std::to_string(params_.s));
    }
  }

  /// Builds a scheme from explicit per-vertex lists (any order).
  static ColourScheme from_lists(SchemeParams params, const std::vector<std::vector<Colour>>& lists) {
    params.validate();
    std::vector<Colour> flat;
    flat.reserve(lists.size() * params.c);
    for (std::size_t v = 0; v < lists.size(); ++v) {
      if (lists[v].size() != params.c)
        throw std::invalid_argument("list of vertex " + std::to_string(v) + " has " +
                                    std::to_string(lists[v].size()) + " colours, expected " +
                                    std::to_string(params.c));
      flat.insert(flat.end(), lists[v].begin(), lists[v].end());
    }
    return ColourScheme(lists.size(), params, std::move(flat));
  }

  /// Every vertex receives the same list.
  static ColourScheme uniform(std::size_t n, SchemeParams params, const std::vector<Colour>& list) {
    return from_lists(params, std::vector<std::vector<Colour>>(n, list));
  }

  std::size_t size() const noexcept { return n_; }
  const SchemeParams& params() const noexcept { return params_; }
  std::size_t c() const noexcept { return params_.c; }
  std::size_t s() const noexcept { return params_.s; }

  std::span<const Colour> list(Vertex v) const noexcept {
    return {flat_.data() + static_cast<std::size_t>(v) * params_.c, params_.c};
  }

  bool contains(Vertex v, Colour col) const noexcept {
    const auto l = list(v);
    return std::binary_search(l.begin(), l.end(), col);
  }

  bool same_list(Vertex u, Vertex v) const noexcept {
    const auto a = list(u);
    const auto b = list(v);
    return std::equal(a.begin(), a.end(), b.begin());
  }

  const std::vector<Colour>& flat() const noexcept { return flat_; }

  friend bool operator==(const ColourScheme& a, const ColourScheme& b) {
    return a.n_ == b.n_ && a.params_.c == b.params_.c && a.params_.s == b.params_.s && a.flat_ == b.flat_;
  }

 private:
  std::size_t n_ = 0;
  SchemeParams params_{};
  std::vector<Colour> flat_;
};

namespace detail {

// Uniform c-subset of {1..s}, written unsorted into out[0..c).
inline void sample_subset(Rng& rng, std::size_t c, std::size_t s, std::vector<Colour>& pool, Colour* out) {
  if (2 * c > s) {
    // Partial Fisher-Yates. The first c slots are a uniform ordered c-tuple
    // whatever permutation the pool currently holds, so it is never reset.
    for (std::size_t i = 0; i < c; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(s - i));
      std::swap(pool[i], pool[j]);
      out[i] = pool[i];
    }
    return;
  }
  for (std::size_t i = 0; i < c; ++i) {
    Colour draw;
    do {
      draw = static_cast<Colour>(rng.below(s) + 1);
    } while (std::find(out, out + i, draw) != out + i);
    out[i] = draw;
  }
}

}  // namespace detail

/// Independent uniform c-subsets of {1..s} for every vertex of g. The result
/// is a pure function of (g.n(), params, stream).
inline ColourScheme sample_scheme(const CyclePower& g, SchemeParams params, RngStream stream) {
  params.validate();
  Rng rng(stream);
  std::vector<Colour> pool(params.s);
  std::iota(pool.begin(), pool.end(), Colour{1});
  std::vector<Colour> flat(g.n() * params.c);
  for (std::size_t v = 0; v < g.n(); ++v) {
    Colour* out = flat.data() + v * params.c;
    detail::sample_subset(rng, params.c, params.s, pool, out);
    std::sort(out, out + params.c);
  }
  return ColourScheme(g.n(), params, std::move(flat));
}

inline void require_sized(const CyclePower& g, const ColourScheme& scheme) {
  if (scheme.size() != g.n())
    throw std::invalid_argument("scheme has " + std::to_string(scheme.size()) + " lists but the graph has " +
                                std::to_string(g.n()) + " vertices");
}

/// Calls fn(clique) for each (c+1)-clique whose members all drew the same list.
template <typename Fn>
void for_each_identical_list_clique(const CyclePower& g, const ColourScheme& scheme, Fn&& fn) {
  require_sized(g, scheme);
  const std::size_t size = scheme.c() + 1;
  if (!g.window_cliques_only(size)) {
    for (const Clique& cl : enumerate_cliques_generic(g, size)) {
      if (std::all_of(cl.begin() + 1, cl.end(), [&](Vertex v) { return scheme.same_list(cl[0], v); })) fn(cl);
    }
    return;
  }
  if (size > g.k() + 1) return;
  std::vector<Vertex> matches;
  matches.reserve(g.k());
  Clique clique(size);
  for (std::size_t v = 0; v < g.n(); ++v) {
    matches.clear();
    for (std::size_t d = 1; d <= g.k(); ++d) {
      const Vertex w = g.wrap(v + d);
      if (scheme.same_list(static_cast<Vertex>(v), w)) matches.push_back(w);
    }
    if (matches.size() < size - 1) continue;
    detail::for_each_combination(matches.size(), size - 1, [&](const std::vector<std::size_t>& idx) {
      clique[0] = static_cast<Vertex>(v);
      for (std::size_t j = 0; j < idx.size(); ++j) clique[j + 1] = matches[idx[j]];
      Clique sorted = clique;
      std::sort(sorted.begin(), sorted.end());
      fn(static_cast<const Clique&>(sorted));
    });
  }
}

/// Every (c+1)-clique whose member lists are all equal, sorted. Empty iff no
/// such obstruction exists.
inline std::vector<Clique> identical_list_cliques(const CyclePower& g, const ColourScheme& scheme) {
  std::vector<Clique> out;
  for_each_identical_list_clique(g, scheme, [&](const Clique& cl) { out.push_back(cl); });
  std::sort(out.begin(), out.end());
  return out;
}

/// Number of identical-list (c+1)-cliques without materialising them.
inline std::size_t count_identical_list_cliques(const CyclePower& g, const ColourScheme& scheme) {
  require_sized(g, scheme);
  const std::size_t size = scheme.c() + 1;
  if (!g.window_cliques_only(size)) return identical_list_cliques(g, scheme).size();
  if (size > g.k() + 1) return 0;
  std::size_t total = 0;
  for (std::size_t v = 0; v < g.n(); ++v) {
    std::size_t m = 0;
    for (std::size_t d = 1; d <= g.k(); ++d) m += scheme.same_list(static_cast<Vertex>(v), g.wrap(v + d));
    if (m < size - 1) continue;
    // C(m, size-1)
    std::size_t ways = 1;
    for (std::size_t j = 0; j < size - 1; ++j) ways = ways * (m - j) / (j + 1);
    total += ways;
  }
  return total;
}

/// True iff no colour appears both in a list of `a` and in a list of `b`.
inline bool lists_disjoint(const ColourScheme& scheme, std::span<const Vertex> a, std::span<const Vertex> b) {
  std::vector<Colour> seen;
  seen.reserve(a.size() * scheme.c());
  for (Vertex v : a) {
    const auto l = scheme.list(v);
    seen.insert(seen.end(), l.begin(), l.end());
  }
  std::sort(seen.begin(), seen.end());
  for (Vertex v : b)
    for (Colour col : scheme.list(v))
      if (std::binary_search(seen.begin(), seen.end(), col)) return false;
  return true;
}

}  // namespace cyclelist
