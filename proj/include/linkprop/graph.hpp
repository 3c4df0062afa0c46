#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace linkprop {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge canonical(Edge e) {
  if (e.u > e.v) std::swap(e.u, e.v);
  return e;
}

/// Packed key for an undirected pair, independent of orientation.
inline std::uint64_t pair_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

inline std::uint64_t pair_key(const Edge& e) { return pair_key(e.u, e.v); }

/// Ingestion carrier: edge rows as read, plus optional per-row creation
/// timestamps (either every row has one or none does).
struct EdgeList {
  std::vector<Edge> edges;
  std::vector<std::int64_t> timestamps;

  bool has_timestamps() const { return !timestamps.empty(); }
  std::size_t size() const { return edges.size(); }

  void push_back(NodeId u, NodeId v) { edges.push_back({u, v}); }
  void push_back(NodeId u, NodeId v, std::int64_t t) {
    edges.push_back({u, v});
    timestamps.push_back(t);
  }
};

struct BuildStats {
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

/// Immutable undirected simple graph in compressed adjacency form.
///
/// Neighbor lists are sorted ascending and every edge appears in both
/// endpoint lists. Construction drops self-loops and collapses duplicate
/// rows (including reversed duplicates); the counts are reported through
/// BuildStats. Instances never mutate after construction, so concurrent
/// read access is safe.
class Graph {
 public:
  Graph() = default;

  static Graph from_edges(std::size_t num_nodes, std::span<const Edge> edges,
                          BuildStats* stats = nullptr) {
    std::vector<Edge> kept;
    kept.reserve(edges.size());
    BuildStats local;
    for (std::size_t row = 0; row < edges.size(); ++row) {
      const Edge& e = edges[row];
      if (e.u >= num_nodes || e.v >= num_nodes)
        throw std::invalid_argument(
            "edge endpoint out of range at row " + std::to_string(row) + ": (" +
            std::to_string(e.u) + ", " + std::to_string(e.v) + ") with " +
            std::to_string(num_nodes) + " nodes");
      if (e.u == e.v) {
        ++local.self_loops_dropped;
        continue;
      }
      kept.push_back(canonical(e));
    }
    std::sort(kept.begin(), kept.end());
    const auto last = std::unique(kept.begin(), kept.end());
    local.duplicates_dropped =
        static_cast<std::size_t>(std::distance(last, kept.end()));
    kept.erase(last, kept.end());
    if (stats) *stats = local;

    Graph g;
    g.num_edges_ = kept.size();
    g.offsets_.assign(num_nodes + 1, 0);
    for (const Edge& e : kept) {
      ++g.offsets_[e.u + 1];
      ++g.offsets_[e.v + 1];
    }
    for (std::size_t i = 1; i <= num_nodes; ++i) g.offsets_[i] += g.offsets_[i - 1];
    g.adjacency_.resize(2 * kept.size());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    // Edges are sorted lexicographically, so each adjacency list fills in
    // ascending order: smaller neighbors arrive first, larger ones after.
    for (const Edge& e : kept) {
      g.adjacency_[cursor[e.u]++] = e.v;
      g.adjacency_[cursor[e.v]++] = e.u;
    }
    return g;
  }

  static Graph from_edges(std::size_t num_nodes, const EdgeList& list,
                          BuildStats* stats = nullptr) {
    return from_edges(num_nodes, std::span<const Edge>(list.edges), stats);
  }

  std::size_t num_nodes() const { return offsets_.size() - 1; }
  std::size_t num_edges() const { return num_edges_; }

  std::size_t degree(NodeId u) const {
    assert(u + 1 < offsets_.size());
    return offsets_[u + 1] - offsets_[u];
  }

  std::span<const NodeId> neighbors(NodeId u) const {
    assert(u + 1 < offsets_.size());
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
  }

  bool has_edge(NodeId u, NodeId v) const {
    if (u == v) return false;
    if (degree(u) > degree(v)) std::swap(u, v);
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  /// All edges as (u < v) pairs in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges_);
    for (NodeId u = 0; u < num_nodes(); ++u)
      for (NodeId v : neighbors(u))
        if (u < v) out.push_back({u, v});
    return out;
  }

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adjacency_;
  std::size_t num_edges_ = 0;
};

/// Size of the sorted-list intersection of the two neighbor lists.
inline std::size_t common_neighbors(const Graph& g, NodeId u, NodeId v) {
  const auto a = g.neighbors(u);
  const auto b = g.neighbors(v);
  std::size_t count = 0, i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

/// Calls visit(x) for every common neighbor x of u and v, ascending.
template <class Visit>
inline void for_each_common_neighbor(const Graph& g, NodeId u, NodeId v,
                                     Visit&& visit) {
  const auto a = g.neighbors(u);
  const auto b = g.neighbors(v);
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      visit(a[i]);
      ++i;
      ++j;
    }
  }
}

/// New graph whose edge set is the union of g's edges and `extra`.
/// The input graph is unmodified; overlaps contribute nothing.
inline Graph augment(const Graph& g, std::span<const Edge> extra) {
  std::vector<Edge> all = g.edges();
  all.insert(all.end(), extra.begin(), extra.end());
  return Graph::from_edges(g.num_nodes(), all);
}

}  // namespace linkprop
