#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "linkprop/eval.hpp"
#include "linkprop/graph.hpp"
#include "linkprop/rng.hpp"
#include "linkprop/scorers.hpp"
#include "linkprop/splits.hpp"

namespace linkprop {

/// One controlled-quality measurement: a proposal set with a known mix of
/// positive test edges and uniform junk, and the ranking score it yields.
struct QualityPoint {
  double raw_ratio = 0.0;       // negatives / positives in the proposal
  double relative_ratio = 0.0;  // raw ratio over the dataset ground-truth ratio
  std::size_t positives_kept = 0;
  std::size_t negatives_injected = 0;
  EvalResult hits;
};

/// Negative-to-positive pair ratio of the dataset itself:
/// (C(n,2) - m) / m with m counting every positive edge (train, validation
/// and test together).
inline double ground_truth_ratio(std::size_t num_nodes,
                                 std::size_t total_positive_edges) {
  if (total_positive_edges == 0)
    throw std::invalid_argument("ground-truth ratio needs a nonempty edge set");
  const double pairs =
      static_cast<double>(num_nodes) * static_cast<double>(num_nodes - 1) / 2.0;
  const double m = static_cast<double>(total_positive_edges);
  return (pairs - m) / m;
}

namespace detail {

inline std::vector<Edge> quality_forbidden(const EdgeSplit& split) {
  std::vector<Edge> forbidden;
  forbidden.reserve(split.valid_pos.size() + split.test_pos.size());
  forbidden.insert(forbidden.end(), split.valid_pos.begin(), split.valid_pos.end());
  forbidden.insert(forbidden.end(), split.test_pos.begin(), split.test_pos.end());
  return forbidden;
}

inline QualityPoint quality_point(const Graph& g_train, const EdgeSplit& split,
                                  const Scorer& rank,
                                  std::span<const Edge> proposal_edges,
                                  std::size_t positives_kept,
                                  std::size_t negatives_injected,
                                  double gt_ratio, std::size_t hits_k) {
  QualityPoint point;
  point.positives_kept = positives_kept;
  point.negatives_injected = negatives_injected;
  point.raw_ratio = positives_kept == 0
                        ? std::numeric_limits<double>::infinity()
                        : static_cast<double>(negatives_injected) /
                              static_cast<double>(positives_kept);
  point.relative_ratio = point.raw_ratio / gt_ratio;
  const Graph augmented = augment(g_train, proposal_edges);
  point.hits = rank_on_graph(augmented, split, rank, hits_k);
  return point;
}

}  // namespace detail

/// Quality setting 1: start from the perfect proposal set (all positive test
/// edges) and grow it with uniform negatives drawn outside the positive
/// edges. Draws are nested: the point for a larger count reuses every
/// negative of the smaller ones.
inline std::vector<QualityPoint> quality_grow(const Graph& g_train,
                                              const EdgeSplit& split,
                                              const Scorer& rank,
                                              std::span<const std::size_t> neg_counts,
                                              std::uint64_t seed,
                                              std::size_t hits_k = 10) {
  std::size_t max_count = 0;
  for (std::size_t c : neg_counts) max_count = std::max(max_count, c);
  const auto forbidden = detail::quality_forbidden(split);
  const auto negatives = sample_negatives(
      g_train, forbidden, max_count, Rng(seed).derive("quality-grow").seed());
  const double gt_ratio =
      ground_truth_ratio(split.num_nodes, split.total_positive_edges());

  std::vector<QualityPoint> points;
  points.reserve(neg_counts.size());
  std::vector<Edge> proposal(split.test_pos.begin(), split.test_pos.end());
  for (std::size_t c : neg_counts) {
    proposal.resize(split.test_pos.size());
    proposal.insert(proposal.end(), negatives.begin(), negatives.begin() + c);
    points.push_back(detail::quality_point(g_train, split, rank, proposal,
                                           split.test_pos.size(), c, gt_ratio,
                                           hits_k));
  }
  return points;
}

/// Quality setting 2: the proposal keeps the size of the positive test set
/// while positives are incrementally replaced by uniform negatives. For a
/// fraction f, floor(f * |test_pos|) uniformly chosen positives stay and
/// negatives fill the rest; both the kept set and the fill are nested
/// across levels.
inline std::vector<QualityPoint> quality_fixed(const Graph& g_train,
                                               const EdgeSplit& split,
                                               const Scorer& rank,
                                               std::span<const double> pos_fractions,
                                               std::uint64_t seed,
                                               std::size_t hits_k = 10) {
  for (double f : pos_fractions)
    if (!(f >= 0.0 && f <= 1.0))
      throw std::invalid_argument("positive fractions must lie in [0, 1]");
  const std::size_t total = split.test_pos.size();

  std::vector<Edge> kept_order(split.test_pos.begin(), split.test_pos.end());
  Rng keep_rng = Rng(seed).derive("quality-keep");
  keep_rng.shuffle(kept_order);

  std::size_t max_fill = 0;
  for (double f : pos_fractions) {
    const auto kept = static_cast<std::size_t>(
        std::floor(f * static_cast<double>(total)));
    max_fill = std::max(max_fill, total - kept);
  }
  const auto forbidden = detail::quality_forbidden(split);
  const auto negatives = sample_negatives(
      g_train, forbidden, max_fill, Rng(seed).derive("quality-fill").seed());
  const double gt_ratio =
      ground_truth_ratio(split.num_nodes, split.total_positive_edges());

  std::vector<QualityPoint> points;
  points.reserve(pos_fractions.size());
  std::vector<Edge> proposal;
  for (double f : pos_fractions) {
    const auto kept = static_cast<std::size_t>(
        std::floor(f * static_cast<double>(total)));
    proposal.assign(kept_order.begin(), kept_order.begin() + kept);
    proposal.insert(proposal.end(), negatives.begin(),
                    negatives.begin() + (total - kept));
    points.push_back(detail::quality_point(g_train, split, rank, proposal, kept,
                                           total - kept, gt_ratio, hits_k));
  }
  return points;
}

}  // namespace linkprop
