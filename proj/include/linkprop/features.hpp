#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "linkprop/graph.hpp"

namespace linkprop {

/// Dense per-node real feature vectors, row-major. Row norms are cached for
/// cosine computations. All entries must be finite.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;

  FeatureMatrix(std::size_t num_nodes, std::size_t dim,
                std::vector<double> values)
      : num_nodes_(num_nodes), dim_(dim), values_(std::move(values)) {
    if (values_.size() != num_nodes_ * dim_)
      throw std::invalid_argument(
          "feature matrix size mismatch: " + std::to_string(values_.size()) +
          " values for " + std::to_string(num_nodes_) + " x " +
          std::to_string(dim_));
    for (double x : values_)
      if (!std::isfinite(x))
        throw std::invalid_argument("feature matrix contains non-finite entry");
    norms_.resize(num_nodes_);
    for (std::size_t i = 0; i < num_nodes_; ++i) {
      double sq = 0.0;
      for (std::size_t j = 0; j < dim_; ++j) {
        const double x = values_[i * dim_ + j];
        sq += x * x;
      }
      norms_[i] = std::sqrt(sq);
    }
  }

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t dim() const { return dim_; }

  std::span<const double> row(NodeId u) const {
    return {values_.data() + static_cast<std::size_t>(u) * dim_, dim_};
  }

  double norm(NodeId u) const { return norms_[u]; }

  /// Cosine similarity of two rows; defined as 0 when either row has zero
  /// norm, so degenerate features never produce a non-finite score.
  double cosine(NodeId a, NodeId b) const {
    const double na = norms_[a];
    const double nb = norms_[b];
    if (na == 0.0 || nb == 0.0) return 0.0;
    const auto ra = row(a);
    const auto rb = row(b);
    double dot = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) dot += ra[j] * rb[j];
    return dot / (na * nb);
  }

 private:
  std::size_t num_nodes_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> values_;
  std::vector<double> norms_;
};

}  // namespace linkprop
