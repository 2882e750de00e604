#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

namespace sonet::detail {

// Tarjan's algorithm. Returns component ids per vertex; components are
// numbered in reverse topological order of the condensation.
inline std::vector<std::size_t> scc_ids(const std::vector<std::vector<std::size_t>>& adj,
                                        std::size_t* count = nullptr) {
  const std::size_t n = adj.size();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next = 0, comps = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = next++;
    stack.push_back(v);
    on_stack[v] = true;
    for (auto w : adj[v]) {
      if (index[w] == unset) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = comps;
      } while (w != v);
      ++comps;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] == unset) visit(v);
  if (count) *count = comps;
  return comp;
}

// Vertices lying on some directed cycle (a component of size > 1 or a self-loop).
inline std::vector<bool> on_cycle(const std::vector<std::vector<std::size_t>>& adj) {
  std::size_t count = 0;
  const auto comp = scc_ids(adj, &count);
  std::vector<std::size_t> size(count, 0);
  for (auto c : comp) ++size[c];
  std::vector<bool> out(adj.size(), false);
  for (std::size_t v = 0; v < adj.size(); ++v) {
    out[v] = size[comp[v]] > 1 || std::find(adj[v].begin(), adj[v].end(), v) != adj[v].end();
  }
  return out;
}

}  // namespace sonet::detail
