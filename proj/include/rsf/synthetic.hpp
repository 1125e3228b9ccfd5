#pragma once

#include <cstddef>
#include <vector>

#include "rsf/graph.hpp"
#include "rsf/rng.hpp"

namespace rsf {

// Partial labeling of n nodes into k classes: column l of Y marks the nodes
// a priori known to belong to class l, at most one mark per node. Stored as
// a per-node class index with -1 for unlabeled.
class LabelMatrix {
public:
    LabelMatrix(std::size_t n, std::size_t k);

    std::size_t node_count() const { return class_of_.size(); }
    std::size_t class_count() const { return k_; }

    void set_label(NodeId i, std::size_t cls);
    int label(NodeId i) const { return class_of_[i]; } // -1 when unlabeled
    bool is_labeled(NodeId i) const { return class_of_[i] >= 0; }
    std::size_t labeled_count() const;

    // Column l as a 0/1 signal.
    Signal column(std::size_t l) const;

private:
    std::size_t k_;
    std::vector<int> class_of_;
};

// Unweighted 4-connected rows x cols grid, node ids row-major.
Graph grid_graph(std::size_t rows, std::size_t cols);

struct SbmSample {
    Graph graph;
    std::vector<int> classes; // ground-truth block per node
};

// Stochastic block model with k equal-size contiguous blocks; every
// unordered pair is an independent Bernoulli draw (p_in within a block,
// p_out across). n must be divisible by k. Isolated nodes are kept.
SbmSample sbm_graph(std::size_t n, std::size_t k, double p_in, double p_out,
                    RngStream rng);

// y = x + eps with eps i.i.d. normal(0, gamma^2).
Signal add_gaussian_noise(const Signal& x, double gamma, RngStream rng);

// Choose m nodes uniformly without replacement in each ground-truth class.
LabelMatrix sample_labels(const std::vector<int>& classes, std::size_t m,
                          RngStream rng);

// Deterministic piecewise-smooth grayscale test scene in [0, 255], used as
// the default denoising input: gradient background, soft disk, dark box.
Signal make_test_image(std::size_t rows, std::size_t cols);

} // namespace rsf
