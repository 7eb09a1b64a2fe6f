#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclelist {

using Vertex = std::uint32_t;

/// Sorted vertex set whose members are pairwise adjacent.
using Clique = std::vector<Vertex>;

/// The k-th power of the n-cycle. Adjacency is computed arithmetically;
/// nothing proportional to n is stored.
class CyclePower {
 public:
  CyclePower(std::size_t n, std::size_t k) : n_(n), k_(k) {
    if (n < 3) throw std::invalid_argument("cycle power needs n >= 3, got " + std::to_string(n));
    if (k < 1) throw std::invalid_argument("cycle power needs k >= 1");
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }

  /// n <= 2k+1: every pair of vertices is adjacent.
  bool is_complete() const noexcept { return n_ <= 2 * k_ + 1; }

  std::size_t distance(Vertex u, Vertex v) const noexcept {
    const std::size_t d = u >= v ? u - v : v - u;
    return std::min(d, n_ - d);
  }

  bool adjacent(Vertex u, Vertex v) const noexcept {
    const std::size_t d = distance(u, v);
    return d >= 1 && d <= k_;
  }

  std::size_t degree() const noexcept { return std::min(2 * k_, n_ - 1); }

  Vertex wrap(std::size_t i) const noexcept { return static_cast<Vertex>(i % n_); }

  /// start, start+1, ..., start+length-1 (mod n) in cycle order.
  std::vector<Vertex> segment(Vertex start, std::size_t length) const {
    if (length > n_) throw std::invalid_argument("segment longer than the cycle");
    if (start >= n_) throw std::invalid_argument("segment start out of range");
    std::vector<Vertex> out;
    out.reserve(length);
    for (std::size_t i = 0; i < length; ++i) out.push_back(wrap(start + i));
    return out;
  }

  /// Whether every clique of `size` vertices lies inside a window of k+1
  /// consecutive vertices and so has a unique leftmost vertex. Holds for
  /// edges once n >= 2k+1 and for larger cliques once n >= 3k+1; below
  /// that, cliques spread around the cycle exist (e.g. {0,2,4} in C_6^2).
  bool window_cliques_only(std::size_t size) const noexcept {
    if (size <= 2) return n_ >= 2 * k_ + 1;
    return n_ >= 3 * k_ + 1;
  }

 private:
  std::size_t n_;
  std::size_t k_;
};

namespace detail {

// Calls fn(indices) for every increasing `size`-subset of [0, pool).
template <typename Fn>
void for_each_combination(std::size_t pool, std::size_t size, Fn&& fn) {
  if (size > pool) return;
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  while (true) {
    fn(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = size;
    while (i > 0 && idx[i - 1] == pool - size + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Every clique of exactly `size` vertices, found by checking all vertex
/// subsets. Exponential; used for complete and small graphs.
inline std::vector<Clique> enumerate_cliques_generic(const CyclePower& g, std::size_t size) {
  std::vector<Clique> out;
  if (size > g.n()) return out;
  detail::for_each_combination(g.n(), size, [&](const std::vector<std::size_t>& idx) {
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = a + 1; b < idx.size(); ++b)
        if (!g.adjacent(static_cast<Vertex>(idx[a]), static_cast<Vertex>(idx[b]))) return;
    out.emplace_back(idx.begin(), idx.end());
  });
  return out;
}

/// Calls fn(clique) for each clique of `size` vertices with leftmost vertex
/// v: v plus size-1 of its k right neighbours. Requires window_cliques_only.
template <typename Fn>
void for_each_window_clique(const CyclePower& g, std::size_t size, Fn&& fn) {
  if (size < 1 || size > g.k() + 1) return;
  Clique clique(size);
  for (std::size_t v = 0; v < g.n(); ++v) {
    detail::for_each_combination(g.k(), size - 1, [&](const std::vector<std::size_t>& idx) {
      clique[0] = static_cast<Vertex>(v);
      for (std::size_t j = 0; j < idx.size(); ++j) clique[j + 1] = g.wrap(v + idx[j] + 1);
      Clique sorted = clique;
      std::sort(sorted.begin(), sorted.end());
      fn(static_cast<const Clique&>(sorted));
    });
  }
}

/// All cliques with exactly `size` vertices, each once, sorted
/// lexicographically. For window-only graphs the count is n * C(k, size-1).
inline std::vector<Clique> enumerate_cliques(const CyclePower& g, std::size_t size) {
  if (size < 2) throw std::invalid_argument("clique size must be at least 2");
  if (!g.window_cliques_only(size)) return enumerate_cliques_generic(g, size);
  std::vector<Clique> out;
  for_each_window_clique(g, size, [&](const Clique& c) { out.push_back(c); });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cyclelist
