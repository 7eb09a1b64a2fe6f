#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "cyclelist/scheme.hpp"

namespace cyclelist {

/// Bipartite graph between a set of vertices (left) and the colours in their
/// lists (right); (v, col) is an edge iff col is in v's list.
struct ListBipartiteGraph {
  std::vector<Vertex> left;
  std::vector<std::vector<Colour>> lists;  // sorted, one per left vertex

  static ListBipartiteGraph from_scheme(const ColourScheme& scheme, std::span<const Vertex> vertices) {
    ListBipartiteGraph h;
    h.left.assign(vertices.begin(), vertices.end());
    h.lists.reserve(vertices.size());
    for (Vertex v : vertices) {
      const auto l = scheme.list(v);
      h.lists.emplace_back(l.begin(), l.end());
    }
    return h;
  }

  std::size_t left_size() const noexcept { return left.size(); }

  /// Distinct colours on the right side, ascending.
  std::vector<Colour> colours() const {
    std::vector<Colour> out;
    for (const auto& l : lists) out.insert(out.end(), l.begin(), l.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

/// colour_of[i] is the colour matched to left index i, or kUncoloured.
struct Matching {
  std::vector<Colour> colour_of;

  std::size_t size() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(colour_of.begin(), colour_of.end(), [](Colour c) { return c != kUncoloured; }));
  }

  std::vector<std::size_t> unsaturated() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < colour_of.size(); ++i)
      if (colour_of[i] == kUncoloured) out.push_back(i);
    return out;
  }
};

/// Maximum-cardinality matching by Hopcroft-Karp. Deterministic: left
/// vertices and list colours are visited in stored order.
inline Matching max_matching(const ListBipartiteGraph& h) {
  const std::size_t nl = h.left_size();
  const std::vector<Colour> palette = h.colours();
  const std::size_t nr = palette.size();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::vector<std::vector<std::size_t>> adj(nl);
  for (std::size_t i = 0; i < nl; ++i)
    for (Colour col : h.lists[i])
      adj[i].push_back(static_cast<std::size_t>(std::lower_bound(palette.begin(), palette.end(), col) -
                                                palette.begin()));

  std::vector<std::size_t> mate_l(nl, kNone), mate_r(nr, kNone), dist(nl);
  std::vector<std::size_t> it(nl);

  auto bfs = [&]() {
    std::queue<std::size_t> q;
    bool found = false;
    for (std::size_t i = 0; i < nl; ++i) {
      if (mate_l[i] == kNone) {
        dist[i] = 0;
        q.push(i);
      } else {
        dist[i] = kNone;
      }
    }
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t r : adj[u]) {
        const std::size_t w = mate_r[r];
        if (w == kNone) {
          found = true;
        } else if (dist[w] == kNone) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };

  // Iterative layered DFS (segments are short, but avoid recursion anyway).
  auto dfs = [&](std::size_t root) {
    std::vector<std::size_t> stack{root};
    std::vector<std::size_t> via;  // right vertex used to leave stack[i]
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      bool advanced = false;
      while (it[u] < adj[u].size()) {
        const std::size_t r = adj[u][it[u]++];
        const std::size_t w = mate_r[r];
        if (w == kNone) {
          via.push_back(r);
          for (std::size_t j = stack.size(); j-- > 0;) {
            mate_l[stack[j]] = via[j];
            mate_r[via[j]] = stack[j];
          }
          return true;
        }
        if (dist[w] == dist[u] + 1) {
          via.push_back(r);
          stack.push_back(w);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        dist[u] = kNone;
        stack.pop_back();
        if (!via.empty()) via.pop_back();
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (std::size_t i = 0; i < nl; ++i)
      if (mate_l[i] == kNone) dfs(i);
  }

  Matching m;
  m.colour_of.assign(nl, kUncoloured);
  for (std::size_t i = 0; i < nl; ++i)
    if (mate_l[i] != kNone) m.colour_of[i] = palette[mate_l[i]];
  return m;
}

/// Left indices reachable from `root` by alternating paths (any edge out of a
/// left vertex, matched edge back). When root is unsaturated in a maximum
/// matching this set X has |X| - |N(X)| = 1.
inline std::vector<std::size_t> alternating_reach(const ListBipartiteGraph& h, const Matching& m, std::size_t root) {
  std::vector<bool> seen(h.left_size(), false);
  std::vector<std::size_t> order{root};
  seen[root] = true;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (Colour col : h.lists[order[head]]) {
      for (std::size_t j = 0; j < h.left_size(); ++j) {
        if (!seen[j] && m.colour_of[j] == col) {
          seen[j] = true;
          order.push_back(j);
        }
      }
    }
  }
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace cyclelist
