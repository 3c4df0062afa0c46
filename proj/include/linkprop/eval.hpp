#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "linkprop/graph.hpp"
#include "linkprop/proposal.hpp"
#include "linkprop/scorers.hpp"
#include "linkprop/splits.hpp"

namespace linkprop {

/// Fraction of positive scores strictly above the K-th highest negative
/// score. Ties with the threshold do not count. Fewer than K negatives
/// yields 1.0; an empty positive set is an error.
inline double hits_at_k(std::span<const double> pos, std::span<const double> neg,
                        std::size_t k) {
  if (k == 0) throw std::invalid_argument("hits@K requires K >= 1");
  if (pos.empty()) throw std::invalid_argument("hits@K requires positive scores");
  if (neg.size() < k) return 1.0;
  std::vector<double> order(neg.begin(), neg.end());
  std::nth_element(order.begin(), order.begin() + (k - 1), order.end(),
                   std::greater<>());
  const double threshold = order[k - 1];
  std::size_t above = 0;
  for (double s : pos)
    if (s > threshold) ++above;
  return static_cast<double>(above) / static_cast<double>(pos.size());
}

struct PipelineOptions {
  std::size_t hits_k = 10;
  bool include_valid_at_inference = false;
  bool force_valid_in_proposal = false;
  std::size_t starting_set_cap = 50'000'000;
};

struct RunSnapshot {
  std::string filter_kind;
  std::string rank_kind;
  std::size_t proposal_size = 0;
  std::size_t hits_k = 10;
  bool include_valid = false;
  bool force_valid = false;
};

struct EvalResult {
  std::string metric;
  double value = 0.0;
  std::vector<double> pos_scores;
  std::vector<double> neg_scores;
  RunSnapshot config;
};

/// Scores the test pairs of `split` with `rank` on `graph` and evaluates
/// Hits@K. The score arrays are retained for post-hoc re-thresholding.
inline EvalResult rank_on_graph(const Graph& graph, const EdgeSplit& split,
                                const Scorer& rank, std::size_t hits_k) {
  EvalResult r;
  r.metric = "Hits@" + std::to_string(hits_k);
  r.pos_scores = rank.batch_score(graph, split.test_pos);
  r.neg_scores = rank.batch_score(graph, split.test_neg);
  r.value = hits_at_k(r.pos_scores, r.neg_scores, hits_k);
  r.config.rank_kind = to_string(rank.kind());
  r.config.hits_k = hits_k;
  return r;
}

/// The full pipeline: enumerate the starting set, keep the k top-scoring
/// candidates under `filter`, optionally force the positive validation edges
/// in, add the proposal to the training graph, apply the
/// validation-at-inference rule, rank the test pairs, and evaluate Hits@K.
/// k = 0 reduces to ranking on the unaugmented graph.
inline EvalResult filter_and_rank(const Graph& g_train, const EdgeSplit& split,
                                  const Scorer& filter, const Scorer& rank,
                                  std::size_t k,
                                  const PipelineOptions& opt = {}) {
  const auto start = enumerate_starting_set(g_train, opt.starting_set_cap);
  ProposalSet proposal = filter_top_k(g_train, start, filter, k);
  if (opt.force_valid_in_proposal && !split.valid_pos.empty())
    proposal = force_include(proposal, split.valid_pos, k, filter, g_train);
  Graph staged = augment(g_train, proposal, proposal.entries.size());
  const Graph inference =
      inference_graph(staged, split, opt.include_valid_at_inference);
  EvalResult r = rank_on_graph(inference, split, rank, opt.hits_k);
  r.config.filter_kind = to_string(filter.kind());
  r.config.proposal_size = proposal.entries.size();
  r.config.include_valid = opt.include_valid_at_inference;
  r.config.force_valid = opt.force_valid_in_proposal;
  return r;
}

struct CurvePoint {
  std::size_t k = 0;
  double valid_score = 0.0;
  double test_score = 0.0;
};

struct SearchResult {
  std::size_t best_k = 0;
  double valid_at_best = 0.0;
  double test_at_best = 0.0;
  std::vector<CurvePoint> curve;
};

/// Evaluates the pipeline at every grid size. Model selection follows the
/// validation score: the proposal is scored against the validation edges on
/// the train graph plus proposal only (validation edges are never part of
/// that graph, and never forced into that proposal). The reported test score
/// applies the force-include and validation-at-inference options. Ties in
/// the validation argmax resolve to the smaller size.
inline SearchResult target_size_search(const Graph& g_train,
                                       const EdgeSplit& split,
                                       const Scorer& filter, const Scorer& rank,
                                       const TargetSizeGrid& grid,
                                       const PipelineOptions& opt = {}) {
  if (grid.resolved.empty())
    throw std::invalid_argument("target size search requires a nonempty grid");
  const auto start = enumerate_starting_set(g_train, opt.starting_set_cap);

  SearchResult result;
  bool first = true;
  for (std::size_t k : grid.resolved) {
    ProposalSet proposal = filter_top_k(g_train, start, filter, k);

    const Graph valid_graph =
        augment(g_train, proposal, proposal.entries.size());
    const auto valid_pos_scores = rank.batch_score(valid_graph, split.valid_pos);
    const auto valid_neg_scores = rank.batch_score(valid_graph, split.valid_neg);
    const double valid_score =
        hits_at_k(valid_pos_scores, valid_neg_scores, opt.hits_k);

    if (opt.force_valid_in_proposal && !split.valid_pos.empty())
      proposal = force_include(proposal, split.valid_pos, k, filter, g_train);
    Graph staged = augment(g_train, proposal, proposal.entries.size());
    const Graph test_graph =
        inference_graph(staged, split, opt.include_valid_at_inference);
    const auto test_pos_scores = rank.batch_score(test_graph, split.test_pos);
    const auto test_neg_scores = rank.batch_score(test_graph, split.test_neg);
    const double test_score =
        hits_at_k(test_pos_scores, test_neg_scores, opt.hits_k);

    result.curve.push_back({k, valid_score, test_score});
    if (first || valid_score > result.valid_at_best) {
      first = false;
      result.best_k = k;
      result.valid_at_best = valid_score;
      result.test_at_best = test_score;
    }
  }
  return result;
}

}  // namespace linkprop
