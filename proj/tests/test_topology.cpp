#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

#include "asymdlms/topology.hpp"

using namespace asymdlms;

namespace {

// Full independent replica of the probability builder: its own generator
// constants, its own BFS. Agreeing bit-for-bit with the library pins the
// documented draw order and retry policy.
constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

std::uint64_t ref_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

struct RefStream {
  std::uint64_t state;
  double unit() {
    state += kGamma;
    return (static_cast<double>(ref_mix(state) >> 11) + 0.5) * 0x1.0p-53;
  }
};

RefStream ref_topology_stream(std::uint64_t seed, std::uint64_t attempt) {
  std::uint64_t k = ref_mix(seed + kGamma);
  for (std::uint64_t w : {std::uint64_t{1}, attempt, std::uint64_t{0}, std::uint64_t{0}})
    k = ref_mix(k ^ (w + kGamma));
  return RefStream{k};
}

bool ref_connected(const std::vector<std::uint8_t>& adj, int n_nodes) {
  std::vector<bool> seen(n_nodes, false);
  std::queue<int> queue;
  queue.push(0);
  seen[0] = true;
  int reached = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop();
    for (int v = 0; v < n_nodes; ++v)
      if (v != u && adj[static_cast<std::size_t>(u) * n_nodes + v] && !seen[v]) {
        seen[v] = true;
        ++reached;
        queue.push(v);
      }
  }
  return reached == n_nodes;
}

std::vector<std::uint8_t> ref_probability_graph(int n_nodes, double p, std::uint64_t seed) {
  for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
    RefStream stream = ref_topology_stream(seed, attempt);
    std::vector<std::uint8_t> adj(static_cast<std::size_t>(n_nodes) * n_nodes, 0);
    for (int i = 0; i < n_nodes; ++i) adj[static_cast<std::size_t>(i) * n_nodes + i] = 1;
    for (int l = 0; l < n_nodes; ++l)
      for (int n = l + 1; n < n_nodes; ++n)
        if (stream.unit() < p) {
          adj[static_cast<std::size_t>(l) * n_nodes + n] = 1;
          adj[static_cast<std::size_t>(n) * n_nodes + l] = 1;
        }
    if (ref_connected(adj, n_nodes)) return adj;
  }
  return {};
}

}  // namespace

TEST_SUITE("topology") {

TEST_CASE("probability graph matches the independent replica") {
  for (std::uint64_t seed : {1ull, 17ull, 20240117ull}) {
    const NetworkTopology t = build_probability_graph(20, 0.2, seed);
    const std::vector<std::uint8_t> expected = ref_probability_graph(20, 0.2, seed);
    REQUIRE(!expected.empty());
    CHECK(t.adjacency == expected);
  }
}

TEST_CASE("probability graph structure") {
  const NetworkTopology t = build_probability_graph(30, 0.5, 99);
  REQUIRE(t.node_count == 30);
  CHECK(t.connected());
  CHECK(t.coordinates.empty());
  for (int n = 0; n < 30; ++n) CHECK(t.edge(n, n));
  for (int l = 0; l < 30; ++l)
    for (int n = 0; n < 30; ++n) CHECK(t.edge(l, n) == t.edge(n, l));
  // 435 candidate pairs at p = 0.5: expect 217.5 edges, sd about 10.4.
  CHECK(t.edge_count() > 175);
  CHECK(t.edge_count() < 260);

  const NetworkTopology again = build_probability_graph(30, 0.5, 99);
  CHECK(again.adjacency == t.adjacency);
}

TEST_CASE("radius graph edges follow the distance predicate") {
  const double radius = 0.3;
  const NetworkTopology t = build_radius_graph(20, radius, 4242);
  REQUIRE(t.node_count == 20);
  REQUIRE(t.coordinates.size() == 40);
  CHECK(t.connected());
  for (double c : t.coordinates) {
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
  }
  for (int l = 0; l < 20; ++l)
    for (int n = l + 1; n < 20; ++n) {
      const double dx = t.coordinates[2 * l] - t.coordinates[2 * n];
      const double dy = t.coordinates[2 * l + 1] - t.coordinates[2 * n + 1];
      CHECK(t.edge(l, n) == (dx * dx + dy * dy <= radius * radius));
    }

  const NetworkTopology scaled = build_radius_graph(20, 0.6, 4242, 1000, 2.0);
  bool outside_unit = false;
  for (double c : scaled.coordinates) {
    CHECK(c >= 0.0);
    CHECK(c <= 2.0);
    if (c > 1.0) outside_unit = true;
  }
  CHECK(outside_unit);
}

TEST_CASE("retry budget exhaustion throws") {
  CHECK_THROWS_AS(build_probability_graph(5, 0.0, 1, 10), std::runtime_error);
  CHECK_THROWS_AS(build_radius_graph(20, 1e-6, 1, 10), std::runtime_error);
  CHECK_THROWS_AS(build_probability_graph(1, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_probability_graph(5, 1.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_radius_graph(5, -0.1, 1), std::invalid_argument);
}

TEST_CASE("uniform combination weights") {
  const NetworkTopology t = build_probability_graph(12, 0.3, 5);
  const CombinationMatrix c = uniform_combination(t);
  REQUIRE(c.node_count == 12);
  for (int n = 0; n < 12; ++n) {
    double column = 0.0;
    for (int l = 0; l < 12; ++l) {
      if (t.edge(l, n)) {
        CHECK(c.at(l, n) == 1.0 / t.degree(n));
      } else {
        CHECK(c.at(l, n) == 0.0);
      }
      column += c.at(l, n);
    }
    CHECK(column == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("edge list export format") {
  const NetworkTopology complete = build_probability_graph(3, 1.0, 1);
  CHECK(export_edge_list(complete) == "N 3\n0 1\n0 2\n1 2\n");

  const NetworkTopology placed = build_radius_graph(4, 2.0, 8);
  const std::string text = export_edge_list(placed);
  CHECK(text.rfind("N 4\n", 0) == 0);
  CHECK(text.find("coord 0 ") != std::string::npos);
  CHECK(text.find("coord 3 ") != std::string::npos);
}

TEST_CASE("connectivity detection") {
  NetworkTopology split;
  split.node_count = 4;
  split.adjacency = {1, 1, 0, 0,
                     1, 1, 0, 0,
                     0, 0, 1, 1,
                     0, 0, 1, 1};
  CHECK(!split.connected());
  CHECK(split.degree(0) == 2);
  CHECK(split.neighbors(0) == std::vector<int>{0, 1});

  NetworkTopology joined = split;
  joined.adjacency[1 * 4 + 2] = 1;
  joined.adjacency[2 * 4 + 1] = 1;
  CHECK(joined.connected());
}

}  // TEST_SUITE
