#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

#include "linkprop/generators.hpp"
#include "linkprop/graph.hpp"
#include "linkprop/rng.hpp"
#include "linkprop/spectral.hpp"
#include "linkprop/splits.hpp"

using namespace linkprop;

namespace {

Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  EdgeList edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) edges.push_back(u, v);
  return Graph::from_edges(n, edges);
}

Eigen::MatrixXd laplacian_of(const Graph& g) {
  const std::size_t n = g.num_nodes();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (NodeId u = 0; u < n; ++u) {
    lap(u, u) = static_cast<double>(g.degree(u));
    for (NodeId v : g.neighbors(u)) lap(u, v) = -1.0;
  }
  return lap;
}

}  // namespace

TEST_CASE("path P3 has Laplacian spectrum {0, 1, 3}") {
  const Graph g = Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}});
  const LaplacianFactor f = factor_laplacian(g);
  REQUIRE(f.eigenvalues[0] == Catch::Approx(0.0).margin(1e-9));
  REQUIRE(f.eigenvalues[1] == Catch::Approx(1.0).margin(1e-9));
  REQUIRE(f.eigenvalues[2] == Catch::Approx(3.0).margin(1e-9));
  REQUIRE(f.num_components == 1);
}

TEST_CASE("embedding dimension one of a connected graph is constant") {
  const Graph g = random_graph(20, 0.4, 3);
  REQUIRE(connected_components(g).back() == 0);
  const FeatureMatrix embedding = spectral_embedding(g, 1);
  const double expected = 1.0 / std::sqrt(20.0);
  for (NodeId u = 0; u < 20; ++u)
    REQUIRE(embedding.row(u)[0] == Catch::Approx(expected).margin(1e-9));
}

TEST_CASE("two disjoint triangles: nullspace spans the component indicators") {
  const Graph g = Graph::from_edges(
      6, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  const LaplacianFactor f = factor_laplacian(g);
  REQUIRE(f.num_components == 2);
  REQUIRE(std::abs(f.eigenvalues[0]) < 1e-9);
  REQUIRE(std::abs(f.eigenvalues[1]) < 1e-9);
  // Any basis of the nullspace is constant within each component.
  const FeatureMatrix embedding = spectral_embedding(g, 2);
  for (std::size_t j = 0; j < 2; ++j) {
    for (NodeId u : {1, 2})
      REQUIRE(embedding.row(u)[j] ==
              Catch::Approx(embedding.row(0)[j]).margin(1e-9));
    for (NodeId u : {4, 5})
      REQUIRE(embedding.row(u)[j] ==
              Catch::Approx(embedding.row(3)[j]).margin(1e-9));
  }
}

TEST_CASE("embedding rejects dimensions above the node count") {
  const Graph g = Graph::from_edges(3, std::vector<Edge>{{0, 1}});
  REQUIRE_THROWS_AS(spectral_embedding(g, 4), std::invalid_argument);
}

TEST_CASE("two-node commute time is exactly 2") {
  const Graph g = Graph::from_edges(2, std::vector<Edge>{{0, 1}});
  const LaplacianFactor f = factor_laplacian(g);
  REQUIRE(commute_time(f, g.num_edges(), 0, 1) ==
          Catch::Approx(2.0).margin(1e-9));
}

TEST_CASE("triangle commute time is exactly 4") {
  const Graph g =
      Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}});
  const LaplacianFactor f = factor_laplacian(g);
  for (auto [u, v] : {std::pair<NodeId, NodeId>{0, 1}, {1, 2}, {0, 2}})
    REQUIRE(commute_time(f, g.num_edges(), u, v) ==
            Catch::Approx(4.0).margin(1e-9));
}

TEST_CASE("commute time of a node with itself is zero") {
  const Graph g = random_graph(15, 0.3, 5);
  const LaplacianFactor f = factor_laplacian(g);
  for (NodeId u = 0; u < 15; ++u)
    REQUIRE(commute_time(f, g.num_edges(), u, u) == 0.0);
}

TEST_CASE("commute time across components is infinite") {
  const Graph g = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}});
  const LaplacianFactor f = factor_laplacian(g);
  REQUIRE(std::isinf(commute_time(f, g.num_edges(), 0, 2)));
}

TEST_CASE("commute time is symmetric and positive off the diagonal") {
  const Graph g = random_graph(30, 0.15, 8);
  const LaplacianFactor f = factor_laplacian(g);
  for (NodeId u = 0; u < 30; ++u)
    for (NodeId v = u + 1; v < 30; ++v) {
      const double fwd = commute_time(f, g.num_edges(), u, v);
      REQUIRE(fwd == commute_time(f, g.num_edges(), v, u));
      if (!std::isinf(fwd)) REQUIRE(fwd > 0.0);
    }
}

TEST_CASE("pseudoinverse identities hold, including disconnected graphs") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const std::size_t n = 10 + 17 * seed;
    const double p = seed % 2 == 0 ? 0.05 : 0.2;  // sparse cases disconnect
    const Graph g = random_graph(n, p, seed);
    if (g.num_edges() == 0) continue;
    const LaplacianFactor f = factor_laplacian(g);
    const Eigen::MatrixXd lap = laplacian_of(g);
    const Eigen::MatrixXd pinv = laplacian_pseudoinverse(f);
    REQUIRE((pinv * lap * pinv - pinv).cwiseAbs().maxCoeff() < 1e-6);
    REQUIRE((lap * pinv * lap - lap).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("eigenvectors are orthonormal") {
  const Graph g = random_graph(40, 0.2, 12);
  const LaplacianFactor f = factor_laplacian(g);
  const Eigen::MatrixXd gram =
      f.eigenvectors.transpose() * f.eigenvectors -
      Eigen::MatrixXd::Identity(40, 40);
  REQUIRE(gram.cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("adding an edge never increases same-component commute times") {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = random_graph(25, 0.15, 1000 + trial);
    std::vector<Edge> absent;
    for (NodeId u = 0; u < 25; ++u)
      for (NodeId v = u + 1; v < 25; ++v)
        if (!g.has_edge(u, v)) absent.push_back({u, v});
    if (absent.empty()) continue;
    const Edge added = absent[rng.below(absent.size())];
    const Graph bigger = augment(g, std::vector<Edge>{added});

    const LaplacianFactor before = factor_laplacian(g);
    const LaplacianFactor after = factor_laplacian(bigger);
    for (NodeId u = 0; u < 25; ++u)
      for (NodeId v = u + 1; v < 25; ++v) {
        const double old_r = effective_resistance(before, u, v);
        if (std::isinf(old_r)) continue;
        REQUIRE(effective_resistance(after, u, v) <= old_r + 1e-9);
      }
    // The endpoints of the new edge strictly benefit even in commute time,
    // where the 2m factor works against the drop in resistance.
    const double direct_before =
        commute_time(before, g.num_edges(), added.u, added.v);
    const double direct_after =
        commute_time(after, bigger.num_edges(), added.u, added.v);
    if (!std::isinf(direct_before)) REQUIRE(direct_after < direct_before);
  }
}

TEST_CASE("commute curve at size zero reports zero change") {
  const SbmSample sample = generate_sbm({{20, 20}, 0.4, 0.05, 3});
  const EdgeSplit split =
      sbm_eval_edges(sample.graph, sample.blocks, 10, 10, 4);
  ProposalSet p;
  for (const Edge& e : split.test_pos)
    p.entries.push_back({e.u, e.v, 1.0 / (1.0 + p.entries.size())});
  const std::vector<std::size_t> sizes{0};
  const auto curve = commute_change_curve(sample.graph, split, p, sizes);
  REQUIRE(curve.size() == 1);
  REQUIRE(curve[0].size == 0);
  REQUIRE(curve[0].pct_change_pos == 0.0);
  REQUIRE(curve[0].pct_change_neg == 0.0);
}

TEST_CASE("commute curve rejects sizes beyond the proposal") {
  const SbmSample sample = generate_sbm({{10, 10}, 0.5, 0.1, 5});
  const EdgeSplit split = sbm_eval_edges(sample.graph, sample.blocks, 3, 3, 6);
  ProposalSet p;
  p.entries.push_back({split.test_pos[0].u, split.test_pos[0].v, 1.0});
  const std::vector<std::size_t> sizes{5};
  REQUIRE_THROWS_AS(commute_change_curve(sample.graph, split, p, sizes),
                    std::invalid_argument);
}

TEST_CASE("augmenting with the positive test edges lowers their commute time") {
  const SbmSample sample = generate_sbm({{25, 25}, 0.35, 0.03, 9});
  const EdgeSplit split =
      sbm_eval_edges(sample.graph, sample.blocks, 12, 12, 10);
  ProposalSet p;
  double score = static_cast<double>(split.test_pos.size());
  for (const Edge& e : split.test_pos) p.entries.push_back({e.u, e.v, score--});
  const std::vector<std::size_t> sizes{0, p.entries.size()};
  const auto curve = commute_change_curve(sample.graph, split, p, sizes);
  REQUIRE(curve.back().pct_change_pos < 0.0);
  REQUIRE(curve.back().pct_change_pos < curve.back().pct_change_neg);
}
