#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace asymdlms {

// Undirected agent network. The adjacency diagonal is always true: every
// node belongs to its own neighborhood.
struct NetworkTopology {
  int node_count = 0;
  std::vector<std::uint8_t> adjacency;  // node_count * node_count, row-major
  std::vector<double> coordinates;      // x0 y0 x1 y1 ... when nodes were placed, else empty

  bool edge(int l, int n) const {
    return adjacency[static_cast<std::size_t>(l) * node_count + n] != 0;
  }
  int degree(int n) const;                  // |N_n|, self included
  std::vector<int> neighbors(int n) const;  // ascending, self included
  bool connected() const;
  int edge_count() const;  // undirected edges, self loops not counted
};

// Combination weights c contain entry (l, n) at weights[l * node_count + n];
// column n holds the averaging weights node n applies to its neighborhood.
struct CombinationMatrix {
  int node_count = 0;
  std::vector<double> weights;

  double at(int l, int n) const {
    return weights[static_cast<std::size_t>(l) * node_count + n];
  }
};

inline constexpr int kDefaultTopologyRetries = 1000;

NetworkTopology build_probability_graph(int node_count, double edge_probability,
                                        std::uint64_t seed,
                                        int retry_budget = kDefaultTopologyRetries);

NetworkTopology build_radius_graph(int node_count, double radius, std::uint64_t seed,
                                   int retry_budget = kDefaultTopologyRetries,
                                   double domain_size = 1.0);

CombinationMatrix uniform_combination(const NetworkTopology& topology);

// Plain-text edge list: header "N <count>", one "l n" line per undirected
// edge with l < n, then "coord n x y" lines when coordinates exist.
std::string export_edge_list(const NetworkTopology& topology);

}  // namespace asymdlms
