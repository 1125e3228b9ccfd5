#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rsf/graph.hpp"
#include "rsf/rng.hpp"

namespace rsf {

// Per-node absorption rates q_i > 0. The uniform constructor covers the
// scalar-q smoothing kernel q(qI+L)^-1; the vector form covers (Q+L)^-1 Q.
class QVector {
public:
    QVector(std::size_t n, double q);
    explicit QVector(std::vector<double> q);

    std::size_t size() const { return q_.size(); }
    double operator[](std::size_t i) const { return q_[i]; }
    const std::vector<double>& values() const { return q_; }

private:
    std::vector<double> q_;
};

// One sampled rooted spanning forest. parent_of[i] == kNoNode exactly when
// i is a root; following parent_of from any node reaches root_of[i] without
// revisiting a node. Trees are numbered by ascending root id.
struct RootedForest {
    std::vector<NodeId> root_of;
    std::vector<NodeId> parent_of;
    std::vector<std::size_t> tree_id;
    std::vector<NodeId> roots; // roots[k] is the root of tree k, ascending
    std::uint64_t walk_steps = 0; // random-walk transitions consumed by the sampler

    std::size_t node_count() const { return root_of.size(); }
    std::size_t tree_count() const { return roots.size(); }
    bool is_root(NodeId i) const { return parent_of[i] == kNoNode; }

    // Partition of the nodes by tree, in tree order. Built on demand.
    std::vector<std::vector<NodeId>> tree_members() const;
};

// Sample a rooted spanning forest: conceptually augment the graph with an
// absorbing node connected to each i with weight q_i, run Wilson's
// RandomTreeWithRoot toward the absorbing node via loop-erased random walks,
// and drop the absorbing edges. From node i the walk is absorbed with
// probability q_i/(d_i+q_i) (making i a root) and otherwise moves to
// neighbor j with probability W_ij/(d_i+q_i). Loop erasure uses an in-walk
// next-pointer table, so memory stays O(n) regardless of walk length.
RootedForest sample_forest(const Graph& g, const QVector& q, RngStream rng);

// Empirical distribution of root_of[i] over n_samples independent forests;
// sample k draws from rng.derive(k). Converges to row i of K.
std::vector<double> root_histogram(const Graph& g, const QVector& q, NodeId i,
                                   std::uint64_t n_samples, RngStream rng);

// Debug dump, one line per node: "node parent_or_dash root tree_id".
void write_forest(std::ostream& out, const RootedForest& f);

} // namespace rsf
