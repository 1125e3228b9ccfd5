#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rsf/forest.hpp"
#include "rsf/graph.hpp"
#include "rsf/rng.hpp"

namespace rsf {

// Which per-forest estimate of Ky to use. RootValue copies the signal at
// the tree root (x-tilde); TreeMean averages the signal over the whole
// tree (x-bar), its Rao-Blackwellised refinement.
enum class Estimator { RootValue, TreeMean };

Estimator estimator_from_name(const std::string& name); // "tilde" | "bar"
const char* estimator_name(Estimator e);

// x[i] = y[root of i's tree].
Signal estimate_root_value(const RootedForest& f, const Signal& y);

// x[i] = q-weighted mean of y over i's tree, the conditional expectation of
// the root value given the tree partition: within a tree the root falls on
// j with probability q_j / sum of q over the tree. For uniform q this is
// the plain tree average. One pass over nodes, O(n). Exact on constant
// signals for every forest.
Signal estimate_tree_mean(const RootedForest& f, const Signal& y, const QVector& q);

Signal estimate(Estimator which, const RootedForest& f, const Signal& y,
                const QVector& q);

// Streaming per-node mean and variance over forest estimates (Welford
// update; Chan's formula for merges). Merging chunk accumulators in a
// fixed order reproduces the sequential result to within floating
// reassociation, independent of thread count.
class EstimateAccumulator {
public:
    explicit EstimateAccumulator(std::size_t n);

    void add(const Signal& sample);
    void merge(const EstimateAccumulator& other);

    std::uint64_t count() const { return count_; }
    std::size_t size() const { return mean_.size(); }
    const std::vector<double>& mean() const { return mean_; }

    // Unbiased per-node empirical variance (N-1 divisor); zero when N < 2.
    std::vector<double> variance() const;
    double variance_sum() const;

private:
    std::uint64_t count_ = 0;
    std::vector<double> mean_;
    std::vector<double> m2_; // running sum of squared deviations
};

EstimateAccumulator merge(const EstimateAccumulator& a, const EstimateAccumulator& b);

struct SmoothDiagnostics {
    std::uint64_t forests = 0;
    std::uint64_t walk_steps = 0;
    double wall_ms = 0.0;
};

struct SmoothResult {
    Signal mean;
    std::vector<double> variance;
    SmoothDiagnostics diagnostics;
};

// Monte-Carlo smoothing: average the chosen estimator over n_forests
// independent forests. Forest k draws from rng.derive(k), so the sample
// set is independent of scheduling; accumulation is chunked and chunks are
// merged in order, making the output identical for any thread count.
SmoothResult smooth(const Graph& g, const QVector& q, const Signal& y,
                    std::uint64_t n_forests, Estimator which, RngStream rng,
                    std::size_t threads = 0);

// Same sampling scheme, shared forests across several input signals.
// Returns one accumulator per signal; used by the SSL pipeline where every
// class column is estimated from the same forest realizations. The optional
// observer sees every sampled forest and may run on any worker thread
// concurrently, so it must synchronize its own state.
std::vector<EstimateAccumulator> smooth_many(
    const Graph& g, const QVector& q, const std::vector<Signal>& ys,
    std::uint64_t n_forests, Estimator which, RngStream rng, std::size_t threads = 0,
    SmoothDiagnostics* diagnostics = nullptr,
    const std::function<void(const RootedForest&)>& observer = {});

} // namespace rsf
