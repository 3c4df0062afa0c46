#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "linkprop/generators.hpp"
#include "linkprop/graph.hpp"
#include "linkprop/proposal.hpp"
#include "linkprop/rng.hpp"
#include "linkprop/scorers.hpp"

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

// O(n^2) oracle: every non-edge pair with a common neighbor, lexicographic.
std::vector<Edge> starting_set_oracle(const Graph& g) {
  std::vector<Edge> out;
  for (NodeId u = 0; u < g.num_nodes(); ++u)
    for (NodeId v = u + 1; v < g.num_nodes(); ++v)
      if (!g.has_edge(u, v) && common_neighbors(g, u, v) >= 1)
        out.push_back({u, v});
  return out;
}

}  // namespace

TEST_CASE("starting set of a path is its endpoints") {
  const Graph g = Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}});
  REQUIRE(enumerate_starting_set(g) == std::vector<Edge>{{0, 2}});
}

TEST_CASE("starting set of a triangle is empty") {
  const Graph g =
      Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}});
  REQUIRE(enumerate_starting_set(g).empty());
}

TEST_CASE("starting set matches the quadratic oracle on an sbm sample") {
  const SbmSample sample = generate_sbm({{50, 50}, 0.3, 1.0 / 30.0, 7});
  REQUIRE(enumerate_starting_set(sample.graph) ==
          starting_set_oracle(sample.graph));
}

TEST_CASE("starting set respects the materialization cap") {
  const Graph g = random_graph(40, 0.3, 3);
  REQUIRE_THROWS_AS(enumerate_starting_set(g, 10), std::length_error);
}

TEST_CASE("filter_top_k with k = 0 is empty") {
  const Graph g = random_graph(30, 0.2, 5);
  const auto start = enumerate_starting_set(g);
  const Scorer cn(ScorerKind::CommonNeighbors);
  REQUIRE(filter_top_k(g, start, cn, 0).entries.empty());
}

TEST_CASE("filter_top_k with k = |start| keeps everything, sorted") {
  const Graph g = random_graph(30, 0.2, 5);
  const auto start = enumerate_starting_set(g);
  const Scorer cn(ScorerKind::CommonNeighbors);
  const ProposalSet p = filter_top_k(g, start, cn, start.size());
  REQUIRE(p.entries.size() == start.size());
  REQUIRE(std::is_sorted(p.entries.begin(), p.entries.end(), proposal_order));
}

TEST_CASE("filter_top_k clamps oversized k with a warning flag") {
  const Graph g = Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}});
  const auto start = enumerate_starting_set(g);
  const Scorer cn(ScorerKind::CommonNeighbors);
  bool clamped = false;
  const ProposalSet p = filter_top_k(g, start, cn, 100, &clamped);
  REQUIRE(clamped);
  REQUIRE(p.entries.size() == start.size());
}

TEST_CASE("partial selection agrees with the full-sort oracle") {
  const SbmSample sample = generate_sbm({{50, 50}, 0.3, 1.0 / 30.0, 11});
  const Graph& g = sample.graph;
  const auto start = enumerate_starting_set(g);
  const Scorer cn(ScorerKind::CommonNeighbors);

  std::vector<ProposalEntry> all(start.size());
  for (std::size_t i = 0; i < start.size(); ++i)
    all[i] = {start[i].u, start[i].v, cn.score(g, start[i].u, start[i].v)};
  std::sort(all.begin(), all.end(), proposal_order);
  all.resize(200);

  const ProposalSet p = filter_top_k(g, start, cn, 200);
  REQUIRE(p.entries.size() == 200);
  for (std::size_t i = 0; i < 200; ++i) {
    REQUIRE(p.entries[i].u == all[i].u);
    REQUIRE(p.entries[i].v == all[i].v);
    REQUIRE(p.entries[i].score == all[i].score);
  }
}

TEST_CASE("filter_top_k prefixes are monotone in k") {
  const Graph g = random_graph(40, 0.15, 23);
  const auto start = enumerate_starting_set(g);
  const Scorer aa(ScorerKind::AdamicAdar);
  const ProposalSet big = filter_top_k(g, start, aa, std::min<std::size_t>(60, start.size()));
  for (std::size_t k = 0; k < big.entries.size(); k += 7) {
    const ProposalSet small = filter_top_k(g, start, aa, k);
    for (std::size_t i = 0; i < k; ++i) {
      REQUIRE(small.entries[i].u == big.entries[i].u);
      REQUIRE(small.entries[i].v == big.entries[i].v);
    }
  }
}

TEST_CASE("proposal entries never intersect the training edges") {
  const Graph g = random_graph(40, 0.2, 31);
  const auto start = enumerate_starting_set(g);
  const Scorer cn(ScorerKind::CommonNeighbors);
  const ProposalSet p = filter_top_k(g, start, cn, start.size());
  for (const ProposalEntry& e : p.entries) REQUIRE_FALSE(g.has_edge(e.u, e.v));
}

TEST_CASE("proposals may contain held-out test edges") {
  // Build a graph, remove an edge that still shares a neighbor, and check
  // the removed (test) edge is eligible for the proposal.
  const Graph g = Graph::from_edges(
      3, std::vector<Edge>{{0, 1}, {1, 2}});  // removed edge: (0, 2)
  const auto start = enumerate_starting_set(g);
  REQUIRE(std::find(start.begin(), start.end(), Edge{0, 2}) != start.end());
  const ProposalSet p =
      filter_top_k(g, start, Scorer(ScorerKind::CommonNeighbors), 1);
  REQUIRE(p.entries[0].u == 0);
  REQUIRE(p.entries[0].v == 2);
}

TEST_CASE("force_include with no forced edges matches filter_top_k") {
  const Graph g = random_graph(30, 0.2, 41);
  const auto start = enumerate_starting_set(g);
  const Scorer cn(ScorerKind::CommonNeighbors);
  const ProposalSet base = filter_top_k(g, start, cn, 10);
  const ProposalSet same = force_include(base, {}, 10, cn, g);
  REQUIRE(same.entries.size() == base.entries.size());
  for (std::size_t i = 0; i < base.entries.size(); ++i)
    REQUIRE(same.entries[i].score == base.entries[i].score);
}

TEST_CASE("force_include with k = |must| keeps exactly the forced set") {
  const Graph g = random_graph(30, 0.15, 43);
  const auto start = enumerate_starting_set(g);
  const Scorer cn(ScorerKind::CommonNeighbors);
  const ProposalSet base = filter_top_k(g, start, cn, 8);
  REQUIRE(start.size() >= 12);
  const std::vector<Edge> must(start.end() - 4, start.end());
  const ProposalSet forced = force_include(base, must, 4, cn, g);
  REQUIRE(forced.entries.size() == 4);
  std::set<std::uint64_t> expect;
  for (const Edge& e : must) expect.insert(pair_key(e));
  for (const ProposalEntry& e : forced.entries)
    REQUIRE(expect.count(pair_key(e.u, e.v)) == 1);
}

TEST_CASE("force_include fills remaining slots with top candidates") {
  // 10 candidates, 5 forced edges, k = 8: all 5 forced plus the top 3
  // candidates, with every forced edge scored above every candidate.
  const Graph g = random_graph(30, 0.15, 47);
  const auto start = enumerate_starting_set(g);
  REQUIRE(start.size() >= 15);
  const Scorer cn(ScorerKind::CommonNeighbors);
  const std::vector<Edge> candidates(start.begin(), start.begin() + 10);
  const std::vector<Edge> must(start.begin() + 10, start.begin() + 15);
  const ProposalSet base = filter_top_k(g, candidates, cn, 10);
  const ProposalSet merged = force_include(base, must, 8, cn, g);
  REQUIRE(merged.entries.size() == 8);

  std::set<std::uint64_t> must_keys;
  for (const Edge& e : must) must_keys.insert(pair_key(e));
  for (std::size_t i = 0; i < 5; ++i)
    REQUIRE(must_keys.count(pair_key(merged.entries[i].u, merged.entries[i].v)) == 1);
  for (std::size_t i = 5; i < 8; ++i) {
    REQUIRE(merged.entries[i].u == base.entries[i - 5].u);
    REQUIRE(merged.entries[i].v == base.entries[i - 5].v);
    REQUIRE(merged.entries[4].score > merged.entries[i].score);
  }
}

TEST_CASE("force_include truncates an oversized must set by original score") {
  const Graph g = random_graph(30, 0.2, 53);
  const auto start = enumerate_starting_set(g);
  REQUIRE(start.size() >= 6);
  const Scorer cn(ScorerKind::CommonNeighbors);
  const std::vector<Edge> must(start.begin(), start.begin() + 6);
  const ProposalSet base = filter_top_k(g, start, cn, 0);
  bool truncated = false;
  const ProposalSet forced = force_include(base, must, 3, cn, g, &truncated);
  REQUIRE(truncated);
  REQUIRE(forced.entries.size() == 3);

  std::vector<ProposalEntry> ranked;
  for (const Edge& e : must) ranked.push_back({e.u, e.v, cn.score(g, e.u, e.v)});
  std::sort(ranked.begin(), ranked.end(), proposal_order);
  for (std::size_t i = 0; i < 3; ++i) {
    REQUIRE(forced.entries[i].u == ranked[i].u);
    REQUIRE(forced.entries[i].v == ranked[i].v);
  }
}

TEST_CASE("force_include rejects forced edges already in the graph") {
  const Graph g = Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}});
  const Scorer cn(ScorerKind::CommonNeighbors);
  const ProposalSet base = filter_top_k(g, enumerate_starting_set(g), cn, 1);
  const std::vector<Edge> must{{0, 1}};
  REQUIRE_THROWS_AS(force_include(base, must, 2, cn, g), std::invalid_argument);
}

TEST_CASE("large grid offsets and spacing") {
  const TargetSizeGrid grid = target_size_grid(50000, GridScale::Large, 1000000);
  REQUIRE(grid.resolved ==
          std::vector<std::size_t>{30000, 40000, 50000, 60000, 70000});
}

TEST_CASE("small grid clamps at zero and deduplicates") {
  const TargetSizeGrid grid = target_size_grid(2000, GridScale::Small, 1000000);
  REQUIRE(grid.resolved ==
          std::vector<std::size_t>{0, 1000, 2000, 3000, 4000, 5000});
}

TEST_CASE("small grid around zero") {
  const TargetSizeGrid grid = target_size_grid(0, GridScale::Small, 1000000);
  REQUIRE(grid.resolved == std::vector<std::size_t>{0, 1000, 2000, 3000});
}

TEST_CASE("grid resolution clamps to the starting-set size") {
  const TargetSizeGrid grid = target_size_grid(50000, GridScale::Large, 55000);
  REQUIRE(grid.resolved ==
          std::vector<std::size_t>{30000, 40000, 50000, 55000});
}
