#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "linkprop/graph.hpp"
#include "linkprop/rng.hpp"

namespace linkprop {

enum class SplitKind { Temporal, Random, Sbm };

inline std::string to_string(SplitKind kind) {
  switch (kind) {
    case SplitKind::Temporal: return "temporal";
    case SplitKind::Random: return "random";
    case SplitKind::Sbm: return "sbm";
  }
  return "unknown";
}

inline SplitKind split_kind_from_string(std::string_view name) {
  if (name == "temporal") return SplitKind::Temporal;
  if (name == "random") return SplitKind::Random;
  if (name == "sbm") return SplitKind::Sbm;
  throw std::invalid_argument("unknown split kind: " + std::string(name));
}

/// Train/validation/test positive edges plus sampled negatives. The five
/// sets are pairwise disjoint; negatives match the positives in count and
/// avoid every positive edge. All edges are stored canonical (u < v).
struct EdgeSplit {
  SplitKind kind = SplitKind::Random;
  std::size_t num_nodes = 0;
  std::vector<Edge> train_pos, valid_pos, test_pos;
  std::vector<Edge> valid_neg, test_neg;

  std::size_t total_positive_edges() const {
    return train_pos.size() + valid_pos.size() + test_pos.size();
  }
};

struct SplitFractions {
  double train = 0.8, valid = 0.1, test = 0.1;
};

/// Throws unless the split satisfies its invariants. Negative-count equality
/// is only enforced once negatives are attached.
inline void check_split(const EdgeSplit& s, bool require_negatives) {
  std::unordered_set<std::uint64_t> seen;
  auto sweep = [&](std::span<const Edge> part, const char* name) {
    for (const Edge& e : part) {
      if (e.u >= s.num_nodes || e.v >= s.num_nodes || e.u >= e.v)
        throw std::logic_error(std::string("split: malformed edge in ") + name);
      if (!seen.insert(pair_key(e)).second)
        throw std::logic_error(std::string("split: sets not disjoint at ") +
                               name);
    }
  };
  sweep(s.train_pos, "train_pos");
  sweep(s.valid_pos, "valid_pos");
  sweep(s.test_pos, "test_pos");
  sweep(s.valid_neg, "valid_neg");
  sweep(s.test_neg, "test_neg");
  if (require_negatives) {
    if (s.valid_neg.size() != s.valid_pos.size() ||
        s.test_neg.size() != s.test_pos.size())
      throw std::logic_error("split: negative counts must match positives");
  }
}

namespace detail {

inline void check_fractions(const SplitFractions& f) {
  if (f.train < 0 || f.valid < 0 || f.test < 0 ||
      std::abs(f.train + f.valid + f.test - 1.0) > 1e-9)
    throw std::invalid_argument("split fractions must be nonnegative and sum to 1");
}

// Deduplicates rows by unordered pair, keeping the first occurrence.
// Returns the indices of kept rows in input order.
inline std::vector<std::size_t> dedup_rows(const EdgeList& list,
                                           std::size_t num_nodes,
                                           std::size_t* dropped = nullptr) {
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::size_t> kept;
  kept.reserve(list.size());
  std::size_t drop_count = 0;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const Edge& e = list.edges[i];
    if (e.u >= num_nodes || e.v >= num_nodes)
      throw std::invalid_argument("split: edge endpoint out of range at row " +
                                  std::to_string(i));
    if (e.u == e.v) {
      ++drop_count;
      continue;
    }
    if (seen.insert(pair_key(e)).second)
      kept.push_back(i);
    else
      ++drop_count;
  }
  if (dropped) *dropped = drop_count;
  return kept;
}

// Leftover edges from flooring the validation/test counts go to train.
inline void partition_counts(std::size_t m, const SplitFractions& f,
                             std::size_t& n_train, std::size_t& n_valid,
                             std::size_t& n_test) {
  n_valid = static_cast<std::size_t>(std::floor(f.valid * static_cast<double>(m)));
  n_test = static_cast<std::size_t>(std::floor(f.test * static_cast<double>(m)));
  n_train = m - n_valid - n_test;
}

inline EdgeSplit split_by_order(std::size_t num_nodes,
                                const std::vector<Edge>& ordered,
                                const SplitFractions& f, SplitKind kind) {
  std::size_t n_train = 0, n_valid = 0, n_test = 0;
  partition_counts(ordered.size(), f, n_train, n_valid, n_test);
  EdgeSplit s;
  s.kind = kind;
  s.num_nodes = num_nodes;
  s.train_pos.assign(ordered.begin(), ordered.begin() + n_train);
  s.valid_pos.assign(ordered.begin() + n_train,
                     ordered.begin() + n_train + n_valid);
  s.test_pos.assign(ordered.begin() + n_train + n_valid, ordered.end());
  check_split(s, false);
  return s;
}

}  // namespace detail

/// Splits edges by creation time: the earliest train fraction, then
/// validation, then test. Equal timestamps keep input order. Duplicate rows
/// collapse to their first occurrence. Every row must carry a timestamp.
inline EdgeSplit temporal_split(std::size_t num_nodes, const EdgeList& list,
                                const SplitFractions& fractions,
                                std::size_t* duplicates_dropped = nullptr) {
  detail::check_fractions(fractions);
  if (list.timestamps.size() != list.edges.size())
    throw std::invalid_argument("temporal split requires a timestamp on every edge");
  auto kept = detail::dedup_rows(list, num_nodes, duplicates_dropped);
  std::stable_sort(kept.begin(), kept.end(), [&](std::size_t a, std::size_t b) {
    return list.timestamps[a] < list.timestamps[b];
  });
  std::vector<Edge> ordered;
  ordered.reserve(kept.size());
  for (std::size_t i : kept) ordered.push_back(canonical(list.edges[i]));
  return detail::split_by_order(num_nodes, ordered, fractions,
                                SplitKind::Temporal);
}

/// Uniformly shuffles the (deduplicated) edges under the seed, then
/// partitions like the temporal split.
inline EdgeSplit random_split(std::size_t num_nodes, const EdgeList& list,
                              const SplitFractions& fractions,
                              std::uint64_t seed,
                              std::size_t* duplicates_dropped = nullptr) {
  detail::check_fractions(fractions);
  auto kept = detail::dedup_rows(list, num_nodes, duplicates_dropped);
  std::vector<Edge> ordered;
  ordered.reserve(kept.size());
  for (std::size_t i : kept) ordered.push_back(canonical(list.edges[i]));
  Rng rng(seed);
  rng.shuffle(ordered);
  return detail::split_by_order(num_nodes, ordered, fractions,
                                SplitKind::Random);
}

/// Uniform sample, without replacement, of `count` node pairs that are not
/// edges of g and not in `forbidden`. Rejection-samples against a hash set
/// with a budget of 100 * count draws, then falls back to enumerating the
/// complement for graphs with at most 2000 nodes.
inline std::vector<Edge> sample_negatives(const Graph& g,
                                          std::span<const Edge> forbidden,
                                          std::size_t count,
                                          std::uint64_t seed) {
  const std::size_t n = g.num_nodes();
  std::unordered_set<std::uint64_t> excluded;
  for (const Edge& e : forbidden)
    if (e.u != e.v) excluded.insert(pair_key(e));
  std::size_t extra = 0;
  for (std::uint64_t key : excluded)
    if (!g.has_edge(static_cast<NodeId>(key >> 32),
                    static_cast<NodeId>(key & 0xffffffffu)))
      ++extra;
  const std::size_t total_pairs = n * (n - 1) / 2;
  const std::size_t unavailable = g.num_edges() + extra;
  if (count > total_pairs - unavailable)
    throw std::invalid_argument(
        "negative sampling infeasible: requested " + std::to_string(count) +
        " of " + std::to_string(total_pairs - unavailable) + " free pairs");

  Rng rng(seed);
  std::vector<Edge> out;
  out.reserve(count);
  std::unordered_set<std::uint64_t> drawn;
  const std::size_t budget = 100 * count;
  for (std::size_t draws = 0; out.size() < count && draws < budget; ++draws) {
    const NodeId u = static_cast<NodeId>(rng.below(n));
    const NodeId v = static_cast<NodeId>(rng.below(n));
    if (u == v) continue;
    const std::uint64_t key = pair_key(u, v);
    if (excluded.count(key) || drawn.count(key) || g.has_edge(u, v)) continue;
    drawn.insert(key);
    out.push_back(canonical({u, v}));
  }
  if (out.size() < count) {
    if (n > 2000)
      throw std::runtime_error("negative sampling budget exhausted on a large graph");
    std::vector<Edge> pool;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v) {
        const std::uint64_t key = pair_key(u, v);
        if (excluded.count(key) || drawn.count(key) || g.has_edge(u, v))
          continue;
        pool.push_back({u, v});
      }
    const std::size_t need = count - out.size();
    rng.partial_shuffle(pool, need);
    out.insert(out.end(), pool.begin(), pool.begin() + need);
  }
  return out;
}

/// Samples |valid_pos| + |test_pos| negatives disjoint from every positive
/// edge and assigns them to valid_neg / test_neg.
inline void attach_negatives(EdgeSplit& s, std::uint64_t seed) {
  std::vector<Edge> all_pos;
  all_pos.reserve(s.total_positive_edges());
  all_pos.insert(all_pos.end(), s.train_pos.begin(), s.train_pos.end());
  all_pos.insert(all_pos.end(), s.valid_pos.begin(), s.valid_pos.end());
  all_pos.insert(all_pos.end(), s.test_pos.begin(), s.test_pos.end());
  const Graph everything = Graph::from_edges(s.num_nodes, all_pos);
  auto negs = sample_negatives(everything, {}, s.valid_pos.size() + s.test_pos.size(), seed);
  s.valid_neg.assign(negs.begin(), negs.begin() + s.valid_pos.size());
  s.test_neg.assign(negs.begin() + s.valid_pos.size(), negs.end());
  check_split(s, true);
}

/// Evaluation-set sizes that keep an f.train/f.valid/f.test split when the
/// observed graph is the train part: floor(m * f.valid / f.train) and
/// floor(m * f.test / f.train).
inline std::pair<std::size_t, std::size_t> eval_counts_for_fractions(
    std::size_t num_train_edges, const SplitFractions& f) {
  detail::check_fractions(f);
  if (f.train <= 0)
    throw std::invalid_argument("train fraction must be positive");
  const double m = static_cast<double>(num_train_edges);
  return {static_cast<std::size_t>(std::floor(m * f.valid / f.train)),
          static_cast<std::size_t>(std::floor(m * f.test / f.train))};
}

/// Evaluation split for a block-model sample: the whole sample is the
/// training graph, positives are uniform absent within-block pairs and
/// negatives uniform absent between-block pairs.
inline EdgeSplit sbm_eval_edges(const Graph& g,
                                std::span<const std::uint32_t> blocks,
                                std::size_t valid_count, std::size_t test_count,
                                std::uint64_t seed) {
  if (blocks.size() != g.num_nodes())
    throw std::invalid_argument("sbm eval: block assignment size mismatch");
  const std::size_t n = g.num_nodes();
  std::vector<Edge> within, between;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) {
      if (g.has_edge(u, v)) continue;
      (blocks[u] == blocks[v] ? within : between).push_back({u, v});
    }
  const std::size_t want = valid_count + test_count;
  if (within.size() < want)
    throw std::invalid_argument(
        "sbm eval: need " + std::to_string(want) +
        " absent within-block pairs, have " + std::to_string(within.size()));
  if (between.size() < want)
    throw std::invalid_argument(
        "sbm eval: need " + std::to_string(want) +
        " absent between-block pairs, have " + std::to_string(between.size()));

  Rng rng(seed);
  rng.partial_shuffle(within, want);
  rng.partial_shuffle(between, want);

  EdgeSplit s;
  s.kind = SplitKind::Sbm;
  s.num_nodes = n;
  s.train_pos = g.edges();
  s.valid_pos.assign(within.begin(), within.begin() + valid_count);
  s.test_pos.assign(within.begin() + valid_count, within.begin() + want);
  s.valid_neg.assign(between.begin(), between.begin() + valid_count);
  s.test_neg.assign(between.begin() + valid_count, between.begin() + want);
  check_split(s, true);
  return s;
}

/// Graph used at ranking time: the training edges, plus the positive
/// validation edges when include_valid is set (temporally split data).
inline Graph inference_graph(const Graph& g_train, const EdgeSplit& s,
                             bool include_valid) {
  if (!include_valid || s.valid_pos.empty()) return g_train;
  return augment(g_train, s.valid_pos);
}

}  // namespace linkprop
