#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rsf {

using NodeId = std::size_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

// A real-valued signal over the nodes of a graph, one entry per node.
using Signal = std::vector<double>;

struct Edge {
    NodeId u;
    NodeId v;
    double w;
};

// Immutable undirected weighted graph in CSR form. Neighbor lists are
// sorted by neighbor id; each undirected edge is stored in both endpoint
// lists with the same weight. No self-loops, no parallel edges, strictly
// positive weights. Safe to share across threads once built.
class Graph {
public:
    Graph(std::size_t n, std::span<const Edge> edges);

    std::size_t node_count() const { return n_; }
    std::size_t edge_count() const { return m_; } // undirected edges, counted once

    double degree(NodeId i) const { return degree_[i]; }
    const std::vector<double>& degrees() const { return degree_; }

    std::span<const NodeId> neighbors(NodeId i) const {
        return {neighbor_.data() + offset_[i], offset_[i + 1] - offset_[i]};
    }
    std::span<const double> weights(NodeId i) const {
        return {weight_.data() + offset_[i], offset_[i + 1] - offset_[i]};
    }

    // Edges as (u, v, w) with u < v, ordered lexicographically.
    std::vector<Edge> edges() const;

    bool has_edge(NodeId u, NodeId v) const;

private:
    std::size_t n_ = 0;
    std::size_t m_ = 0;
    std::vector<std::size_t> offset_;  // n+1 entries
    std::vector<NodeId> neighbor_;     // 2m entries
    std::vector<double> weight_;       // 2m entries
    std::vector<double> degree_;       // weighted degree per node
};

Graph build_graph(std::size_t n, std::span<const Edge> edges);

// Weighted degree vector d_i = sum_j W_ij, summed in neighbor-id order.
std::vector<double> degree_vector(const Graph& g);

// y_i = d_i z_i - sum_j W_ij z_j, i.e. (D - W) z.
Signal laplacian_apply(const Graph& g, const Signal& z);

// Text format: first line "n m", then m lines "i j w" with i < j,
// space-separated ASCII, LF endings. Weights round-trip bit-exactly.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);
void write_graph_file(const std::string& path, const Graph& g);

} // namespace rsf
