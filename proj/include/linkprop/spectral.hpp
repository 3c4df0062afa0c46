#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "linkprop/features.hpp"
#include "linkprop/graph.hpp"
#include "linkprop/proposal.hpp"
#include "linkprop/splits.hpp"

namespace linkprop {

/// Labels nodes by connected component (0-based, in order of first BFS root).
inline std::vector<std::uint32_t> connected_components(const Graph& g,
                                                       std::size_t* count = nullptr) {
  const std::size_t n = g.num_nodes();
  std::vector<std::uint32_t> label(n, UINT32_MAX);
  std::vector<NodeId> queue;
  std::uint32_t next = 0;
  for (NodeId root = 0; root < n; ++root) {
    if (label[root] != UINT32_MAX) continue;
    label[root] = next;
    queue.assign(1, root);
    while (!queue.empty()) {
      const NodeId u = queue.back();
      queue.pop_back();
      for (NodeId v : g.neighbors(u)) {
        if (label[v] != UINT32_MAX) continue;
        label[v] = next;
        queue.push_back(v);
      }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

/// Full eigendecomposition of the combinatorial Laplacian L = D - A.
///
/// Eigenvalues are ascending; eigenvector columns are orthonormal and sign
/// normalized so the first entry above 1e-12 in magnitude is positive. The
/// zero eigenvalue has multiplicity equal to the number of connected
/// components; the factorization checks this against a BFS labeling within
/// a tolerance of 1e-8 * n and stores the labels.
///
/// Dense at desk scale: the decomposition is cubic in n and is intended for
/// graphs up to a few thousand nodes.
struct LaplacianFactor {
  std::size_t num_nodes = 0;
  std::size_t num_components = 0;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  std::vector<std::uint32_t> component_ids;
};

inline LaplacianFactor factor_laplacian(const Graph& g) {
  const std::size_t n = g.num_nodes();
  if (n == 0) throw std::invalid_argument("cannot factor an empty graph");
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (NodeId u = 0; u < n; ++u) {
    lap(u, u) = static_cast<double>(g.degree(u));
    for (NodeId v : g.neighbors(u)) lap(u, v) = -1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("laplacian eigendecomposition failed");

  LaplacianFactor f;
  f.num_nodes = n;
  f.eigenvalues = solver.eigenvalues();
  f.eigenvectors = solver.eigenvectors();
  f.component_ids = connected_components(g, &f.num_components);

  const double tol = 1e-8 * static_cast<double>(n);
  const std::size_t c = f.num_components;
  if (std::abs(f.eigenvalues[c - 1]) > tol ||
      (c < n && f.eigenvalues[c] <= tol))
    throw std::runtime_error(
        "zero-eigenvalue multiplicity does not match component count");

  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = f.eigenvectors(i, j);
      if (std::abs(x) > 1e-12) {
        if (x < 0) f.eigenvectors.col(j) = -f.eigenvectors.col(j);
        break;
      }
    }
  }
  return f;
}

/// Moore-Penrose pseudoinverse of the Laplacian, assembled from the
/// nonzero-eigenvalue pairs of the factorization.
inline Eigen::MatrixXd laplacian_pseudoinverse(const LaplacianFactor& f) {
  const std::size_t n = f.num_nodes;
  Eigen::VectorXd inverted = Eigen::VectorXd::Zero(n);
  for (std::size_t i = f.num_components; i < n; ++i)
    inverted[i] = 1.0 / f.eigenvalues[i];
  return f.eigenvectors * inverted.asDiagonal() * f.eigenvectors.transpose();
}

/// Per-node features from the eigenvectors of the `dim` smallest Laplacian
/// eigenvalues, ascending.
inline FeatureMatrix spectral_embedding(const Graph& g, std::size_t dim) {
  if (dim > g.num_nodes())
    throw std::invalid_argument("spectral embedding dimension exceeds node count");
  const LaplacianFactor f = factor_laplacian(g);
  std::vector<double> values(g.num_nodes() * dim);
  for (std::size_t u = 0; u < g.num_nodes(); ++u)
    for (std::size_t j = 0; j < dim; ++j)
      values[u * dim + j] = f.eigenvectors(u, j);
  return FeatureMatrix(g.num_nodes(), dim, std::move(values));
}

/// Effective resistance between u and v when every edge is a unit resistor:
/// M_uu + M_vv - 2 M_uv with M the Laplacian pseudoinverse. Infinite across
/// components. Rayleigh monotonicity applies to this quantity: adding edges
/// never increases it.
inline double effective_resistance(const LaplacianFactor& f, NodeId u,
                                   NodeId v) {
  if (f.component_ids[u] != f.component_ids[v])
    return std::numeric_limits<double>::infinity();
  if (u == v) return 0.0;
  double quad = 0.0;
  for (std::size_t i = f.num_components; i < f.num_nodes; ++i) {
    const double diff = f.eigenvectors(u, i) - f.eigenvectors(v, i);
    quad += diff * diff / f.eigenvalues[i];
  }
  return quad;
}

/// Expected round-trip steps of a random walk between u and v:
/// 2m * (M_uu + M_vv - 2 M_uv) with m the edge count of the graph that was
/// factored. Infinite across components. Note the 2m factor: unlike the
/// resistance itself, the commute time of pairs far from an added edge can
/// rise slightly, because m grows while their resistance barely moves.
inline double commute_time(const LaplacianFactor& f, std::size_t num_edges,
                           NodeId u, NodeId v) {
  return 2.0 * static_cast<double>(num_edges) * effective_resistance(f, u, v);
}

struct CommutePoint {
  std::size_t size = 0;
  double pct_change_pos = 0.0;
  double pct_change_neg = 0.0;
  std::size_t excluded_pairs = 0;
};

/// Percentage change, against the unaugmented baseline, of the average
/// commute time over test positives and test negatives as the proposal
/// prefix grows. Pairs that are cross-component in the baseline graph are
/// excluded throughout and counted; augmentation only adds edges, so every
/// retained pair stays connected at every size.
inline std::vector<CommutePoint> commute_change_curve(
    const Graph& g, const EdgeSplit& split, const ProposalSet& p,
    std::span<const std::size_t> sizes) {
  for (std::size_t k : sizes)
    if (k > p.entries.size())
      throw std::invalid_argument("commute curve size exceeds proposal length");

  const LaplacianFactor base = factor_laplacian(g);
  std::vector<Edge> pos, neg;
  std::size_t excluded = 0;
  for (const Edge& e : split.test_pos) {
    if (base.component_ids[e.u] == base.component_ids[e.v])
      pos.push_back(e);
    else
      ++excluded;
  }
  for (const Edge& e : split.test_neg) {
    if (base.component_ids[e.u] == base.component_ids[e.v])
      neg.push_back(e);
    else
      ++excluded;
  }
  if (pos.empty() || neg.empty())
    throw std::runtime_error(
        "commute curve: no same-component evaluation pairs at baseline");

  auto average = [](const LaplacianFactor& f, std::size_t m,
                    std::span<const Edge> pairs) {
    double total = 0.0;
    for (const Edge& e : pairs) total += commute_time(f, m, e.u, e.v);
    return total / static_cast<double>(pairs.size());
  };
  const double base_pos = average(base, g.num_edges(), pos);
  const double base_neg = average(base, g.num_edges(), neg);

  std::vector<CommutePoint> curve;
  curve.reserve(sizes.size());
  for (std::size_t k : sizes) {
    CommutePoint point;
    point.size = k;
    point.excluded_pairs = excluded;
    if (k > 0) {
      const Graph aug = augment(g, p, k);
      const LaplacianFactor f = factor_laplacian(aug);
      point.pct_change_pos =
          100.0 * (average(f, aug.num_edges(), pos) - base_pos) / base_pos;
      point.pct_change_neg =
          100.0 * (average(f, aug.num_edges(), neg) - base_neg) / base_neg;
    }
    curve.push_back(point);
  }
  return curve;
}

}  // namespace linkprop
