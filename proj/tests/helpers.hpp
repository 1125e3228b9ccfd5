#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "rsf/forest.hpp"
#include "rsf/graph.hpp"
#include "rsf/rng.hpp"

namespace testutil {

using rsf::Edge;
using rsf::Graph;
using rsf::NodeId;
using rsf::Signal;

inline Graph path_graph(std::size_t n, double w = 1.0) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, w});
    return Graph(n, edges);
}

inline Graph cycle_graph(std::size_t n, double w = 1.0) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, w});
    edges.push_back({0, n - 1, w});
    return Graph(n, edges);
}

inline Graph star_graph(std::size_t n, double w = 1.0) {
    std::vector<Edge> edges;
    for (std::size_t i = 1; i < n; ++i) edges.push_back({0, i, w});
    return Graph(n, edges);
}

inline Graph complete_graph(std::size_t n, double w = 1.0) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j, w});
    return Graph(n, edges);
}

// Fixed 5-node irregular weighted graph used across the statistical tests.
inline Graph weighted_irregular_graph() {
    std::vector<Edge> edges{{0, 1, 0.7}, {0, 2, 1.9}, {1, 2, 0.4},
                            {1, 3, 2.3}, {2, 4, 1.1}, {3, 4, 0.6}};
    return Graph(5, edges);
}

// Fixed 10-node connected weighted graph (two loose clusters and a bridge).
inline Graph ten_node_graph() {
    std::vector<Edge> edges{{0, 1, 1.0}, {0, 2, 0.5}, {1, 2, 1.5}, {1, 3, 0.8},
                            {2, 3, 1.2}, {3, 4, 0.4}, {4, 5, 1.0}, {4, 6, 2.0},
                            {5, 6, 0.9}, {5, 7, 1.3}, {6, 8, 0.7}, {7, 8, 1.1},
                            {7, 9, 0.6}, {8, 9, 1.4}};
    return Graph(10, edges);
}

// Uniformly random connected-ish graph for property tests: a random
// spanning-path backbone plus extra random edges.
inline Graph random_graph(std::size_t n, std::size_t extra_edges, rsf::RngStream rng) {
    std::vector<NodeId> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i > 1; --i)
        std::swap(order[i - 1], order[rng.uniform_below(i)]);
    std::map<std::pair<NodeId, NodeId>, double> edge_set;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const NodeId a = std::min(order[i], order[i + 1]);
        const NodeId b = std::max(order[i], order[i + 1]);
        edge_set[{a, b}] = 0.25 + rng.uniform();
    }
    std::size_t attempts = 0;
    while (edge_set.size() < n - 1 + extra_edges && attempts < 50 * (extra_edges + 1)) {
        ++attempts;
        const NodeId a = rng.uniform_below(n);
        const NodeId b = rng.uniform_below(n);
        if (a == b) continue;
        edge_set[{std::min(a, b), std::max(a, b)}] = 0.25 + rng.uniform();
    }
    std::vector<Edge> edges;
    for (const auto& [key, w] : edge_set) edges.push_back({key.first, key.second, w});
    return Graph(n, edges);
}

inline Signal random_signal(std::size_t n, rsf::RngStream rng, double scale = 2.0) {
    Signal y(n);
    for (double& v : y) v = scale * (rng.uniform() - 0.5);
    return y;
}

// Identity of a rooted forest: the parent array determines the edge set,
// the orientation and the roots.
inline std::string forest_key(const rsf::RootedForest& f) {
    std::string key;
    for (NodeId p : f.parent_of) {
        key += p == rsf::kNoNode ? std::string("r") : std::to_string(p);
        key += ',';
    }
    return key;
}

inline double max_abs_diff(const Signal& a, const Signal& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace testutil
