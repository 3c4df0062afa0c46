#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "linkprop/graph.hpp"
#include "linkprop/rng.hpp"

namespace linkprop {

struct SbmConfig {
  std::vector<std::size_t> block_sizes;
  double p_in = 0.0;
  double p_out = 0.0;
  std::uint64_t seed = 0;
};

struct SbmSample {
  Graph graph;
  std::vector<std::uint32_t> blocks;
};

/// Two-or-more-block stochastic block model: each within-block pair is an
/// edge independently with probability p_in, each between-block pair with
/// p_out. Fixing the seed fixes the sample bit-exactly.
inline SbmSample generate_sbm(const SbmConfig& cfg) {
  if (cfg.block_sizes.empty())
    throw std::invalid_argument("sbm: at least one block required");
  if (!(0.0 <= cfg.p_out && cfg.p_out <= cfg.p_in && cfg.p_in <= 1.0))
    throw std::invalid_argument("sbm: need 0 <= p_out <= p_in <= 1");

  const std::size_t n =
      std::accumulate(cfg.block_sizes.begin(), cfg.block_sizes.end(),
                      std::size_t{0});
  std::vector<std::uint32_t> blocks(n);
  std::size_t next = 0;
  for (std::size_t b = 0; b < cfg.block_sizes.size(); ++b)
    for (std::size_t i = 0; i < cfg.block_sizes[b]; ++i)
      blocks[next++] = static_cast<std::uint32_t>(b);

  Rng rng(cfg.seed);
  EdgeList edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const double p = blocks[u] == blocks[v] ? cfg.p_in : cfg.p_out;
      if (rng.bernoulli(p)) edges.push_back(u, v);
    }
  }
  return {Graph::from_edges(n, edges), std::move(blocks)};
}

struct JinConfig {
  std::size_t num_nodes = 0;
  double triangle_rate = 0.0;       // expected triangle-closing attempts per step
  double meet_rate = 0.0;           // uniform meetings per node per step
  double delete_rate = 0.0;         // per-node edge-loss probability per step
  std::size_t degree_threshold = 1; // minimum degree before deletion applies
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
};

/// Growing social network with triadic closure and decay. Each step runs,
/// in order:
///   (a) triangle closing: expected_count(triangle_rate) attempts; an attempt
///       picks a uniform node of degree >= 2, then a uniform pair of its
///       distinct neighbors, and adds that edge if absent;
///   (b) uniform meeting: expected_count(meet_rate * n) attempts; an attempt
///       adds a uniform non-adjacent node pair;
///   (c) deletion: every node with degree >= degree_threshold independently
///       loses, with probability delete_rate, one incident edge chosen
///       uniformly among its incident edges.
///
/// The returned list holds the surviving edges with the step index of their
/// latest creation, sorted by (timestamp, u, v). Re-created edges carry the
/// re-creation step.
inline EdgeList generate_jin(const JinConfig& cfg) {
  if (cfg.triangle_rate < 0 || cfg.meet_rate < 0 || cfg.delete_rate < 0)
    throw std::invalid_argument("jin: rates must be nonnegative");
  if (cfg.degree_threshold < 1)
    throw std::invalid_argument("jin: degree threshold must be >= 1");

  const std::size_t n = cfg.num_nodes;
  Rng rng(cfg.seed);

  std::vector<std::vector<NodeId>> adjacency(n);
  std::unordered_map<std::uint64_t, std::int64_t> created_at;

  // Nodes of degree >= 2, maintained for O(1) uniform picks.
  std::vector<NodeId> closable;
  std::vector<std::int64_t> closable_pos(n, -1);
  auto mark_closable = [&](NodeId u) {
    if (adjacency[u].size() == 2 && closable_pos[u] < 0) {
      closable_pos[u] = static_cast<std::int64_t>(closable.size());
      closable.push_back(u);
    }
  };
  auto unmark_closable = [&](NodeId u) {
    if (adjacency[u].size() < 2 && closable_pos[u] >= 0) {
      const auto pos = static_cast<std::size_t>(closable_pos[u]);
      closable[pos] = closable.back();
      closable_pos[closable[pos]] = static_cast<std::int64_t>(pos);
      closable.pop_back();
      closable_pos[u] = -1;
    }
  };

  auto add_edge = [&](NodeId u, NodeId v, std::int64_t step) {
    created_at[pair_key(u, v)] = step;
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
    mark_closable(u);
    mark_closable(v);
  };
  auto remove_edge = [&](NodeId u, std::size_t slot) {
    const NodeId v = adjacency[u][slot];
    adjacency[u][slot] = adjacency[u].back();
    adjacency[u].pop_back();
    auto& other = adjacency[v];
    const auto it = std::find(other.begin(), other.end(), u);
    *it = other.back();
    other.pop_back();
    created_at.erase(pair_key(u, v));
    unmark_closable(u);
    unmark_closable(v);
  };
  auto has_edge = [&](NodeId u, NodeId v) {
    return created_at.count(pair_key(u, v)) != 0;
  };

  for (std::size_t step = 0; step < cfg.iterations; ++step) {
    const std::int64_t now = static_cast<std::int64_t>(step);

    const std::size_t closures = expected_count(rng, cfg.triangle_rate);
    for (std::size_t a = 0; a < closures; ++a) {
      if (closable.empty()) continue;
      const NodeId w = closable[rng.below(closable.size())];
      const std::size_t deg = adjacency[w].size();
      std::size_t i = rng.below(deg);
      std::size_t j = rng.below(deg - 1);
      if (j >= i) ++j;
      const NodeId u = adjacency[w][i];
      const NodeId v = adjacency[w][j];
      if (!has_edge(u, v)) add_edge(u, v, now);
    }

    const std::size_t meetings =
        expected_count(rng, cfg.meet_rate * static_cast<double>(n));
    for (std::size_t a = 0; a < meetings && n >= 2; ++a) {
      for (int attempt = 0; attempt < 10000; ++attempt) {
        const NodeId u = static_cast<NodeId>(rng.below(n));
        const NodeId v = static_cast<NodeId>(rng.below(n));
        if (u == v || has_edge(u, v)) continue;
        add_edge(u, v, now);
        break;
      }
    }

    if (cfg.delete_rate > 0.0) {
      for (NodeId u = 0; u < n; ++u) {
        if (adjacency[u].size() < cfg.degree_threshold) continue;
        if (!rng.bernoulli(cfg.delete_rate)) continue;
        remove_edge(u, rng.below(adjacency[u].size()));
      }
    }
  }

  struct Row {
    std::int64_t t;
    NodeId u, v;
  };
  std::vector<Row> rows;
  rows.reserve(created_at.size());
  for (const auto& [key, t] : created_at)
    rows.push_back({t, static_cast<NodeId>(key >> 32),
                    static_cast<NodeId>(key & 0xffffffffu)});
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });
  EdgeList out;
  out.edges.reserve(rows.size());
  out.timestamps.reserve(rows.size());
  for (const Row& r : rows) out.push_back(r.u, r.v, r.t);
  return out;
}

}  // namespace linkprop
