#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsf/estimators.hpp"
#include "rsf/forest.hpp"
#include "rsf/graph.hpp"
#include "rsf/rng.hpp"
#include "rsf/synthetic.hpp"

namespace rsf {

// Fixed tags for deriving named substreams from the run seed, so each part
// of an experiment (sampling, noise, graph draws, label draws) is
// independently reproducible.
namespace streams {
inline constexpr std::uint64_t kSampling = 1;
inline constexpr std::uint64_t kNoise = 2;
inline constexpr std::uint64_t kSbm = 3;
inline constexpr std::uint64_t kLabels = 4;
} // namespace streams

// ---------------------------------------------------------------------------
// Denoising experiment (grid-graph Tikhonov smoothing, PSNR vs q).

struct DenoiseParams {
    std::vector<double> q_grid;
    double gamma = 25.5;          // noise standard deviation
    std::uint64_t n_forests = 20; // N per estimate
    std::size_t realizations = 100;
    double max_value = 255.0;     // PSNR dynamic range of the clean image
};

struct DenoiseReport {
    DenoiseParams params;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> psnr_noisy;                // [realization], q-independent
    std::vector<std::vector<double>> psnr_exact;   // [q][realization]
    std::vector<std::vector<double>> psnr_tilde;   // [q][realization]
    std::vector<std::vector<double>> psnr_bar;     // [q][realization]
    double mean_psnr_noisy = 0.0;
    std::vector<double> mean_psnr_exact;           // [q]
    std::vector<double> mean_psnr_tilde;           // [q]
    std::vector<double> mean_psnr_bar;             // [q]
};

// For each noise realization r: y = clean + eps_r; for each q: the exact
// solve of (qI+L)x = qy plus both Monte-Carlo estimates averaged over
// n_forests forests (shared between the two estimators). PSNR is measured
// against the clean image. Realizations run in parallel; output is
// independent of the thread count.
DenoiseReport denoise_experiment(const Signal& clean, std::size_t rows, std::size_t cols,
                                 const DenoiseParams& params, RngStream rng,
                                 std::size_t threads = 0);

// ---------------------------------------------------------------------------
// Semi-supervised node classification.

enum class SslMethod { Exact, RootValue, TreeMean };

SslMethod ssl_method_from_name(const std::string& name); // "exact" | "tilde" | "bar"
const char* ssl_method_name(SslMethod m);

struct SslClassification {
    std::vector<int> assignment;  // class per node; -1 = unlabeled verdict
    std::size_t isolated_nodes = 0; // zero-degree nodes (flagged when sigma != 1)
    // Monte-Carlo methods: average fraction of nodes whose tree contains no
    // labeled node, so no label information reached them.
    double label_free_fraction = 0.0;
};

// Per-class scores f_l = D^{1-sigma} K D^{sigma-1} y_l with K = (Q+L)^-1 Q,
// Q = (mu/2) D; node i takes argmax_l f_l(i), ties to the lowest class.
// sigma must be one of {0, 1/2, 1}. Zero-degree nodes make D^{sigma-1}
// undefined for sigma != 1: they are assigned -1 and counted. The exact
// method solves per class with conjugate gradients; tilde/bar estimate
// K D^{sigma-1} y_l from n_forests shared forest samples.
SslClassification ssl_classify(const Graph& g, const LabelMatrix& labels, double mu,
                               double sigma, SslMethod method, std::uint64_t n_forests,
                               RngStream rng, std::size_t threads = 0);

struct SslExperimentParams {
    std::size_t n = 3000;
    std::size_t k = 2;
    double p_in = 2e-2;
    double p_out = 3e-3;
    std::vector<std::size_t> m_grid;
    std::uint64_t n_forests = 500;
    double mu = 1.0;
    double sigma = 0.0;
    std::size_t realizations = 10;
};

struct SslReport {
    SslExperimentParams params;
    std::vector<std::vector<double>> ari_exact; // [m][realization]
    std::vector<std::vector<double>> ari_tilde;
    std::vector<std::vector<double>> ari_bar;
    std::vector<double> mean_ari_exact; // [m]
    std::vector<double> mean_ari_tilde;
    std::vector<double> mean_ari_bar;
    std::vector<double> mean_label_free_fraction; // [m], tree-mean method
    std::vector<std::size_t> isolated_nodes;      // [realization]
};

SslReport ssl_experiment(const SslExperimentParams& params, RngStream rng,
                         std::size_t threads = 0);

// ---------------------------------------------------------------------------
// Scaling benchmark.

struct BenchRow {
    std::size_t target_edges = 0;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::uint64_t walk_steps = 0; // per forest, averaged over repeats
    std::vector<double> wall_ms;  // one entry per repeat
    double wall_ms_median = 0.0;
};

struct BenchReport {
    double q = 1.0;
    std::size_t repeats = 0;
    std::vector<BenchRow> rows;
};

// Times smooth(tree-mean, N=1) on square grid graphs sized to the requested
// edge counts. Graph construction is excluded from the timings.
BenchReport scaling_benchmark(const std::vector<std::size_t>& edge_targets, double q,
                              std::size_t repeats, RngStream rng);

} // namespace rsf
