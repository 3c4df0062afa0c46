#pragma once

#include <cassert>
#include <cmath>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "linkprop/features.hpp"
#include "linkprop/graph.hpp"

namespace linkprop {

enum class ScorerKind { CommonNeighbors, AdamicAdar, CosCommon };

inline std::string to_string(ScorerKind kind) {
  switch (kind) {
    case ScorerKind::CommonNeighbors: return "common-neighbors";
    case ScorerKind::AdamicAdar: return "adamic-adar";
    case ScorerKind::CosCommon: return "cos-common";
  }
  return "unknown";
}

inline ScorerKind scorer_kind_from_string(std::string_view name) {
  if (name == "common" || name == "common-neighbors")
    return ScorerKind::CommonNeighbors;
  if (name == "adamic-adar" || name == "aa") return ScorerKind::AdamicAdar;
  if (name == "cos-common") return ScorerKind::CosCommon;
  throw std::invalid_argument("unknown scorer kind: " + std::string(name));
}

/// Node-pair scoring function over a graph. Used both for filtering (picking
/// proposal edges out of the starting set) and ranking (final predictions).
///
/// Scores are symmetric in (u, v) and always finite:
///   common-neighbors  |N(u) and N(v)| as an exact count
///   adamic-adar       sum over common neighbors x of 1 / ln(deg(x))
///   cos-common        sum over common x of cos(h_u, h_x) * cos(h_x, h_v)
///
/// Adamic-Adar uses the natural logarithm. A common neighbor of two distinct
/// nodes has degree at least 2, so every term is finite. cos-common needs a
/// feature matrix; rows with zero norm contribute nothing.
class Scorer {
 public:
  explicit Scorer(ScorerKind kind,
                  std::shared_ptr<const FeatureMatrix> features = nullptr)
      : kind_(kind), features_(std::move(features)) {
    if (kind_ == ScorerKind::CosCommon && !features_)
      throw std::invalid_argument("cos-common scorer requires a feature matrix");
  }

  ScorerKind kind() const { return kind_; }
  const FeatureMatrix* features() const { return features_.get(); }

  double score(const Graph& g, NodeId u, NodeId v) const {
    assert(u < g.num_nodes() && v < g.num_nodes());
    assert(u != v);
    switch (kind_) {
      case ScorerKind::CommonNeighbors:
        return static_cast<double>(common_neighbors(g, u, v));
      case ScorerKind::AdamicAdar: {
        double total = 0.0;
        for_each_common_neighbor(g, u, v, [&](NodeId x) {
          assert(g.degree(x) >= 2);
          total += 1.0 / std::log(static_cast<double>(g.degree(x)));
        });
        return total;
      }
      case ScorerKind::CosCommon: {
        const FeatureMatrix& f = *features_;
        double total = 0.0;
        for_each_common_neighbor(g, u, v, [&](NodeId x) {
          total += f.cosine(u, x) * f.cosine(x, v);
        });
        return total;
      }
    }
    return 0.0;
  }

  /// Elementwise score over `pairs`, order preserving. With num_threads > 1
  /// the pairs are scored in fixed index chunks on worker threads; each slot
  /// is written exactly once, so the result is bit-identical to the
  /// sequential evaluation.
  std::vector<double> batch_score(const Graph& g, std::span<const Edge> pairs,
                                  unsigned num_threads = 1) const {
    std::vector<double> out(pairs.size());
    if (num_threads <= 1 || pairs.size() < 2 * num_threads) {
      for (std::size_t i = 0; i < pairs.size(); ++i)
        out[i] = score(g, pairs[i].u, pairs[i].v);
      return out;
    }
    std::vector<std::thread> workers;
    workers.reserve(num_threads);
    const std::size_t chunk = (pairs.size() + num_threads - 1) / num_threads;
    for (unsigned t = 0; t < num_threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(pairs.size(), begin + chunk);
      if (begin >= end) break;
      workers.emplace_back([&, begin, end] {
        for (std::size_t i = begin; i < end; ++i)
          out[i] = score(g, pairs[i].u, pairs[i].v);
      });
    }
    for (auto& w : workers) w.join();
    return out;
  }

 private:
  ScorerKind kind_;
  std::shared_ptr<const FeatureMatrix> features_;
};

}  // namespace linkprop
