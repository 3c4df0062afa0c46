#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "linkprop/graph.hpp"
#include "linkprop/scorers.hpp"

namespace linkprop {

struct ProposalEntry {
  NodeId u = 0;
  NodeId v = 0;
  double score = 0.0;
};

/// Candidate edges for augmentation, strictly ordered by score descending
/// with ties broken lexicographically on (u, v). Entries are (u < v) pairs,
/// never edges of the graph the set was built against, never duplicated.
/// Entries may coincide with held-out test edges; that is intentional.
struct ProposalSet {
  std::vector<ProposalEntry> entries;
  std::string provenance;
  std::optional<std::size_t> target_size_hint;
};

/// Total order used everywhere a proposal set is ranked or truncated.
inline bool proposal_order(const ProposalEntry& a, const ProposalEntry& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.u != b.u) return a.u < b.u;
  return a.v < b.v;
}

/// Checks the ProposalSet invariants against the graph it was built for.
inline void validate_proposal(const ProposalSet& p, const Graph& g) {
  for (std::size_t i = 0; i < p.entries.size(); ++i) {
    const ProposalEntry& e = p.entries[i];
    if (e.u >= e.v)
      throw std::logic_error("proposal entry not in canonical (u < v) form");
    if (g.has_edge(e.u, e.v))
      throw std::logic_error("proposal entry duplicates an existing edge (" +
                             std::to_string(e.u) + ", " + std::to_string(e.v) +
                             ")");
    if (i > 0 && !proposal_order(p.entries[i - 1], e))
      throw std::logic_error("proposal entries out of order at index " +
                             std::to_string(i));
  }
}

/// All unordered non-edge pairs (u < v) with at least one common neighbor,
/// in lexicographic order. Materialized; throws past `max_pairs`.
inline std::vector<Edge> enumerate_starting_set(
    const Graph& g, std::size_t max_pairs = 50'000'000) {
  const std::size_t n = g.num_nodes();
  std::vector<Edge> result;
  std::vector<bool> seen(n, false);
  std::vector<NodeId> found;
  for (NodeId u = 0; u < n; ++u) {
    found.clear();
    for (NodeId w : g.neighbors(u)) {
      for (NodeId v : g.neighbors(w)) {
        if (v <= u || seen[v]) continue;
        seen[v] = true;
        found.push_back(v);
      }
    }
    std::sort(found.begin(), found.end());
    for (NodeId v : found) {
      seen[v] = false;
      if (!g.has_edge(u, v)) {
        result.push_back({u, v});
        if (result.size() > max_pairs)
          throw std::length_error("starting set exceeds cap of " +
                                  std::to_string(max_pairs) + " pairs");
      }
    }
  }
  return result;
}

/// The k entries of `start` with the largest scores under `sc`, sorted.
/// k larger than the starting set clamps with a warning flag; selection is
/// partial (nth_element) but agrees with a full sort under proposal_order.
inline ProposalSet filter_top_k(const Graph& g, std::span<const Edge> start,
                                const Scorer& sc, std::size_t k,
                                bool* clamped = nullptr) {
  if (clamped) *clamped = false;
  if (k > start.size()) {
    k = start.size();
    if (clamped) *clamped = true;
  }
  std::vector<ProposalEntry> scored(start.size());
  for (std::size_t i = 0; i < start.size(); ++i) {
    const Edge e = canonical(start[i]);
    scored[i] = {e.u, e.v, sc.score(g, e.u, e.v)};
  }
  if (k < scored.size())
    std::nth_element(scored.begin(), scored.begin() + k, scored.end(),
                     proposal_order);
  scored.resize(k);
  std::sort(scored.begin(), scored.end(), proposal_order);

  ProposalSet p{std::move(scored), to_string(sc.kind()), k};
  validate_proposal(p, g);
  return p;
}

/// Places every `must` edge ahead of all other candidates, then truncates
/// to k. Must-edges keep their relative order under their original scores,
/// shifted by a constant so the lowest clears the best candidate score.
/// With more must-edges than slots, only the top k of them survive and
/// `truncated_must` reports it.
inline ProposalSet force_include(const ProposalSet& p,
                                 std::span<const Edge> must, std::size_t k,
                                 const Scorer& sc, const Graph& g,
                                 bool* truncated_must = nullptr) {
  if (truncated_must) *truncated_must = false;

  std::vector<ProposalEntry> forced;
  std::unordered_set<std::uint64_t> forced_keys;
  forced.reserve(must.size());
  for (const Edge& raw : must) {
    const Edge e = canonical(raw);
    if (g.has_edge(e.u, e.v))
      throw std::invalid_argument("forced edge (" + std::to_string(e.u) + ", " +
                                  std::to_string(e.v) +
                                  ") already present in the graph");
    if (!forced_keys.insert(pair_key(e)).second) continue;
    forced.push_back({e.u, e.v, sc.score(g, e.u, e.v)});
  }
  std::sort(forced.begin(), forced.end(), proposal_order);

  std::vector<ProposalEntry> candidates;
  candidates.reserve(p.entries.size());
  for (const ProposalEntry& e : p.entries)
    if (!forced_keys.count(pair_key(e.u, e.v))) candidates.push_back(e);

  if (forced.size() > k) {
    forced.resize(k);
    if (truncated_must) *truncated_must = true;
  }

  if (!forced.empty() && !candidates.empty()) {
    const double best_candidate = candidates.front().score;
    const double lowest_forced = forced.back().score;
    const double shift = best_candidate - lowest_forced + 1.0;
    for (ProposalEntry& e : forced) e.score += shift;
  }

  const std::size_t fill = std::min(k - forced.size(), candidates.size());
  std::vector<ProposalEntry> merged = std::move(forced);
  merged.insert(merged.end(), candidates.begin(), candidates.begin() + fill);
  std::sort(merged.begin(), merged.end(), proposal_order);

  ProposalSet out{std::move(merged), p.provenance + "+forced", k};
  validate_proposal(out, g);
  return out;
}

enum class GridScale { Large, Small };

/// Search grid for the proposal target size, anchored at the count of
/// positive validation + test edges. The large scale spans +-20000 in steps
/// of 10000, the small scale +-3000 in steps of 1000; resolved values are
/// clamped to [0, start_size], deduplicated, and sorted ascending.
struct TargetSizeGrid {
  std::size_t kbar = 0;
  std::vector<long long> offsets;
  std::vector<std::size_t> resolved;
};

inline TargetSizeGrid target_size_grid(std::size_t kbar, GridScale scale,
                                       std::size_t start_size) {
  TargetSizeGrid grid;
  grid.kbar = kbar;
  const long long step = scale == GridScale::Large ? 10000 : 1000;
  const int reach = scale == GridScale::Large ? 2 : 3;
  for (int i = -reach; i <= reach; ++i)
    grid.offsets.push_back(static_cast<long long>(i) * step);
  for (long long offset : grid.offsets) {
    long long k = static_cast<long long>(kbar) + offset;
    k = std::clamp(k, 0LL, static_cast<long long>(start_size));
    grid.resolved.push_back(static_cast<std::size_t>(k));
  }
  std::sort(grid.resolved.begin(), grid.resolved.end());
  grid.resolved.erase(std::unique(grid.resolved.begin(), grid.resolved.end()),
                      grid.resolved.end());
  return grid;
}

/// Grid from explicit sizes, clamped to the starting-set size.
inline TargetSizeGrid explicit_grid(std::vector<std::size_t> sizes,
                                    std::size_t start_size,
                                    std::size_t kbar = 0) {
  TargetSizeGrid grid;
  grid.kbar = kbar;
  for (std::size_t& k : sizes) k = std::min(k, start_size);
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  grid.resolved = std::move(sizes);
  return grid;
}

/// New graph with the first k proposal edges added; k past the proposal
/// length is an error. The input graph is unmodified.
inline Graph augment(const Graph& g, const ProposalSet& p, std::size_t k) {
  if (k > p.entries.size())
    throw std::invalid_argument("augment: k = " + std::to_string(k) +
                                " exceeds proposal size " +
                                std::to_string(p.entries.size()));
  std::vector<Edge> extra;
  extra.reserve(k);
  for (std::size_t i = 0; i < k; ++i)
    extra.push_back({p.entries[i].u, p.entries[i].v});
  return augment(g, extra);
}

}  // namespace linkprop
