#include "asymdlms/topology.hpp"

#include <cstdio>
#include <stdexcept>

#include "asymdlms/rng.hpp"

namespace asymdlms {

int NetworkTopology::degree(int n) const {
  int d = 0;
  for (int l = 0; l < node_count; ++l) d += edge(l, n) ? 1 : 0;
  return d;
}

std::vector<int> NetworkTopology::neighbors(int n) const {
  std::vector<int> out;
  for (int l = 0; l < node_count; ++l)
    if (edge(l, n)) out.push_back(l);
  return out;
}

bool NetworkTopology::connected() const {
  if (node_count == 0) return false;
  std::vector<std::uint8_t> seen(node_count, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < node_count; ++v) {
      if (v != u && edge(u, v) && !seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == node_count;
}

int NetworkTopology::edge_count() const {
  int c = 0;
  for (int l = 0; l < node_count; ++l)
    for (int n = l + 1; n < node_count; ++n) c += edge(l, n) ? 1 : 0;
  return c;
}

namespace {

NetworkTopology blank_topology(int node_count) {
  NetworkTopology t;
  t.node_count = node_count;
  t.adjacency.assign(static_cast<std::size_t>(node_count) * node_count, 0);
  for (int n = 0; n < node_count; ++n)
    t.adjacency[static_cast<std::size_t>(n) * node_count + n] = 1;
  return t;
}

void set_edge(NetworkTopology& t, int l, int n) {
  t.adjacency[static_cast<std::size_t>(l) * t.node_count + n] = 1;
  t.adjacency[static_cast<std::size_t>(n) * t.node_count + l] = 1;
}

}  // namespace

NetworkTopology build_probability_graph(int node_count, double edge_probability,
                                        std::uint64_t seed, int retry_budget) {
  if (node_count < 2) throw std::invalid_argument("node_count must be at least 2");
  if (!(edge_probability >= 0.0 && edge_probability <= 1.0))
    throw std::invalid_argument("edge_probability must lie in [0, 1]");
  if (retry_budget < 1) throw std::invalid_argument("retry_budget must be positive");

  // Draw order per attempt: pairs (l, n) with l < n in row-major order, one
  // uniform each, edge present iff u < p. Tests replay this independently.
  for (int attempt = 0; attempt < retry_budget; ++attempt) {
    RngStream stream = RngStream::derive(seed, Draw::topology, attempt);
    NetworkTopology t = blank_topology(node_count);
    for (int l = 0; l < node_count; ++l)
      for (int n = l + 1; n < node_count; ++n)
        if (stream.next_unit() < edge_probability) set_edge(t, l, n);
    if (t.connected()) return t;
  }
  throw std::runtime_error("probability graph not connected within retry budget; "
                           "edge probability too small for this node count");
}

NetworkTopology build_radius_graph(int node_count, double radius, std::uint64_t seed,
                                   int retry_budget, double domain_size) {
  if (node_count < 2) throw std::invalid_argument("node_count must be at least 2");
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (retry_budget < 1) throw std::invalid_argument("retry_budget must be positive");
  if (!(domain_size > 0.0)) throw std::invalid_argument("domain_size must be positive");

  // Draw order per attempt: per node, x then y uniform over the square.
  for (int attempt = 0; attempt < retry_budget; ++attempt) {
    RngStream stream = RngStream::derive(seed, Draw::placement, attempt);
    NetworkTopology t = blank_topology(node_count);
    t.coordinates.resize(static_cast<std::size_t>(node_count) * 2);
    for (int n = 0; n < node_count; ++n) {
      t.coordinates[2 * static_cast<std::size_t>(n)] = stream.next_unit() * domain_size;
      t.coordinates[2 * static_cast<std::size_t>(n) + 1] = stream.next_unit() * domain_size;
    }
    const double r2 = radius * radius;
    for (int l = 0; l < node_count; ++l) {
      for (int n = l + 1; n < node_count; ++n) {
        const double dx = t.coordinates[2 * static_cast<std::size_t>(l)] -
                          t.coordinates[2 * static_cast<std::size_t>(n)];
        const double dy = t.coordinates[2 * static_cast<std::size_t>(l) + 1] -
                          t.coordinates[2 * static_cast<std::size_t>(n) + 1];
        if (dx * dx + dy * dy <= r2) set_edge(t, l, n);
      }
    }
    if (t.connected()) return t;
  }
  throw std::runtime_error("radius graph not connected within retry budget; "
                           "radius too small for this node count");
}

CombinationMatrix uniform_combination(const NetworkTopology& topology) {
  CombinationMatrix c;
  c.node_count = topology.node_count;
  c.weights.assign(static_cast<std::size_t>(c.node_count) * c.node_count, 0.0);
  for (int n = 0; n < c.node_count; ++n) {
    const double w = 1.0 / topology.degree(n);
    for (int l = 0; l < c.node_count; ++l)
      if (topology.edge(l, n))
        c.weights[static_cast<std::size_t>(l) * c.node_count + n] = w;
  }
  return c;
}

std::string export_edge_list(const NetworkTopology& topology) {
  std::string out;
  char line[96];
  std::snprintf(line, sizeof(line), "N %d\n", topology.node_count);
  out += line;
  for (int l = 0; l < topology.node_count; ++l)
    for (int n = l + 1; n < topology.node_count; ++n)
      if (topology.edge(l, n)) {
        std::snprintf(line, sizeof(line), "%d %d\n", l, n);
        out += line;
      }
  if (!topology.coordinates.empty()) {
    for (int n = 0; n < topology.node_count; ++n) {
      std::snprintf(line, sizeof(line), "coord %d %.17g %.17g\n", n,
                    topology.coordinates[2 * static_cast<std::size_t>(n)],
                    topology.coordinates[2 * static_cast<std::size_t>(n) + 1]);
      out += line;
    }
  }
  return out;
}

}  // namespace asymdlms
