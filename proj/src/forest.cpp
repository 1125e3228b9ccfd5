#include "rsf/forest.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace rsf {

QVector::QVector(std::size_t n, double q) {
    if (!(q > 0.0) || !std::isfinite(q))
        throw std::invalid_argument("QVector: q must be positive and finite");
    q_.assign(n, q);
}

QVector::QVector(std::vector<double> q) : q_(std::move(q)) {
    for (double v : q_)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("QVector: all entries must be positive and finite");
}

std::vector<std::vector<NodeId>> RootedForest::tree_members() const {
    std::vector<std::vector<NodeId>> members(roots.size());
    for (NodeId i = 0; i < root_of.size(); ++i) members[tree_id[i]].push_back(i);
    return members;
}

RootedForest sample_forest(const Graph& g, const QVector& q, RngStream rng) {
    const std::size_t n = g.node_count();
    if (q.size() != n)
        throw std::invalid_argument("sample_forest: q length does not match graph");

    // next[i] is the current walk successor of i; kNoNode marks absorption
    // (i.e. the successor is the augmented node, so i becomes a root).
    // Overwriting next[] on revisits performs the loop erasure.
    RootedForest f;
    f.parent_of.assign(n, kNoNode);
    std::vector<NodeId>& next = f.parent_of;
    std::vector<char> in_forest(n, 0);
    std::uint64_t steps = 0;

    for (NodeId start = 0; start < n; ++start) {
        if (in_forest[start]) continue;
        NodeId u = start;
        while (!in_forest[u]) {
            ++steps;
            const double d = g.degree(u);
            const double qu = q[u];
            if (rng.uniform() < qu / (d + qu)) {
                next[u] = kNoNode;
                break;
            }
            // Neighbor by cumulative-weight inversion over the sorted list.
            auto nb = g.neighbors(u);
            auto ws = g.weights(u);
            const double target = rng.uniform() * d;
            double acc = 0.0;
            NodeId v = nb.back();
            for (std::size_t k = 0; k < nb.size(); ++k) {
                acc += ws[k];
                if (target < acc) {
                    v = nb[k];
                    break;
                }
            }
            next[u] = v;
            u = v;
        }
        // Commit the loop-erased path.
        u = start;
        while (!in_forest[u]) {
            in_forest[u] = 1;
            const NodeId v = next[u];
            if (v == kNoNode) break;
            u = v;
        }
    }
    f.walk_steps = steps;

    // Roots in ascending id order; tree k is the tree rooted at roots[k].
    std::vector<std::size_t> rank(n);
    for (NodeId i = 0; i < n; ++i) {
        if (next[i] == kNoNode) {
            rank[i] = f.roots.size();
            f.roots.push_back(i);
        }
    }

    // Resolve root_of by path following; each node is visited O(1) times
    // amortized because resolved prefixes terminate later walks.
    f.root_of.assign(n, kNoNode);
    f.tree_id.assign(n, 0);
    std::vector<NodeId> path;
    for (NodeId i = 0; i < n; ++i) {
        if (f.root_of[i] != kNoNode) continue;
        path.clear();
        NodeId u = i;
        while (f.root_of[u] == kNoNode && next[u] != kNoNode) {
            path.push_back(u);
            u = next[u];
        }
        const NodeId root = (next[u] == kNoNode) ? u : f.root_of[u];
        const std::size_t tid = rank[root];
        f.root_of[u] = root;
        f.tree_id[u] = tid;
        for (NodeId p : path) {
            f.root_of[p] = root;
            f.tree_id[p] = tid;
        }
    }
    return f;
}

std::vector<double> root_histogram(const Graph& g, const QVector& q, NodeId i,
                                   std::uint64_t n_samples, RngStream rng) {
    if (i >= g.node_count())
        throw std::invalid_argument("root_histogram: node out of range");
    if (n_samples == 0)
        throw std::invalid_argument("root_histogram: need at least one sample");
    std::vector<double> freq(g.node_count(), 0.0);
    for (std::uint64_t k = 0; k < n_samples; ++k) {
        RootedForest f = sample_forest(g, q, rng.derive(k));
        freq[f.root_of[i]] += 1.0;
    }
    for (double& v : freq) v /= static_cast<double>(n_samples);
    return freq;
}

void write_forest(std::ostream& out, const RootedForest& f) {
    for (NodeId i = 0; i < f.node_count(); ++i) {
        out << i << ' ';
        if (f.parent_of[i] == kNoNode)
            out << '-';
        else
            out << f.parent_of[i];
        out << ' ' << f.root_of[i] << ' ' << f.tree_id[i] << '\n';
    }
}

} // namespace rsf
