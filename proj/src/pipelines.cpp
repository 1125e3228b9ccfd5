#include "rsf/pipelines.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include "rsf/exact.hpp"
#include "rsf/metrics.hpp"
#include "rsf/parallel.hpp"

namespace rsf {

namespace {

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

Signal require_exact(const Graph& g, const QVector& q, const Signal& y) {
    ExactSolveResult res = exact_smooth(g, q, y);
    if (!res.converged)
        throw std::runtime_error("conjugate gradient did not converge (residual " +
                                 std::to_string(res.relative_residual) + ")");
    return std::move(res.x);
}

} // namespace

DenoiseReport denoise_experiment(const Signal& clean, std::size_t rows, std::size_t cols,
                                 const DenoiseParams& params, RngStream rng,
                                 std::size_t threads) {
    if (clean.size() != rows * cols)
        throw std::invalid_argument("denoise_experiment: image size does not match grid");
    if (params.q_grid.empty())
        throw std::invalid_argument("denoise_experiment: empty q grid");
    for (double q : params.q_grid)
        if (!(q > 0.0)) throw std::invalid_argument("denoise_experiment: q must be positive");
    if (params.realizations == 0 || params.n_forests == 0)
        throw std::invalid_argument("denoise_experiment: need realizations and forests");

    const Graph g = grid_graph(rows, cols);
    const std::size_t n = g.node_count();
    const std::size_t nq = params.q_grid.size();
    const std::size_t nr = params.realizations;

    DenoiseReport report;
    report.params = params;
    report.rows = rows;
    report.cols = cols;
    report.psnr_noisy.assign(nr, 0.0);
    report.psnr_exact.assign(nq, std::vector<double>(nr, 0.0));
    report.psnr_tilde.assign(nq, std::vector<double>(nr, 0.0));
    report.psnr_bar.assign(nq, std::vector<double>(nr, 0.0));

    parallel_for(nr, threads, [&](std::size_t r) {
        const Signal y =
            add_gaussian_noise(clean, params.gamma, rng.derive(streams::kNoise, r));
        report.psnr_noisy[r] = psnr(clean, y, params.max_value);

        for (std::size_t j = 0; j < nq; ++j) {
            const QVector qv(n, params.q_grid[j]);
            const Signal exact = require_exact(g, qv, y);

            EstimateAccumulator tilde(n), bar(n);
            RngStream sampling = rng.derive(streams::kSampling, r, j);
            for (std::uint64_t k = 0; k < params.n_forests; ++k) {
                const RootedForest f = sample_forest(g, qv, sampling.derive(k));
                tilde.add(estimate_root_value(f, y));
                bar.add(estimate_tree_mean(f, y, qv));
            }

            report.psnr_exact[j][r] = psnr(clean, exact, params.max_value);
            report.psnr_tilde[j][r] = psnr(clean, tilde.mean(), params.max_value);
            report.psnr_bar[j][r] = psnr(clean, bar.mean(), params.max_value);
        }
    });

    report.mean_psnr_noisy = mean_of(report.psnr_noisy);
    report.mean_psnr_exact.resize(nq);
    report.mean_psnr_tilde.resize(nq);
    report.mean_psnr_bar.resize(nq);
    for (std::size_t j = 0; j < nq; ++j) {
        report.mean_psnr_exact[j] = mean_of(report.psnr_exact[j]);
        report.mean_psnr_tilde[j] = mean_of(report.psnr_tilde[j]);
        report.mean_psnr_bar[j] = mean_of(report.psnr_bar[j]);
    }
    return report;
}

SslMethod ssl_method_from_name(const std::string& name) {
    if (name == "exact") return SslMethod::Exact;
    if (name == "tilde") return SslMethod::RootValue;
    if (name == "bar") return SslMethod::TreeMean;
    throw std::invalid_argument("unknown SSL method '" + name +
                                "' (expected exact, tilde or bar)");
}

const char* ssl_method_name(SslMethod m) {
    switch (m) {
        case SslMethod::Exact: return "exact";
        case SslMethod::RootValue: return "tilde";
        default: return "bar";
    }
}

SslClassification ssl_classify(const Graph& g, const LabelMatrix& labels, double mu,
                               double sigma, SslMethod method, std::uint64_t n_forests,
                               RngStream rng, std::size_t threads) {
    const std::size_t n = g.node_count();
    if (labels.node_count() != n)
        throw std::invalid_argument("ssl_classify: label matrix does not match graph");
    if (!(mu > 0.0)) throw std::invalid_argument("ssl_classify: mu must be positive");
    if (sigma != 0.0 && sigma != 0.5 && sigma != 1.0)
        throw std::invalid_argument("ssl_classify: sigma must be 0, 1/2 or 1");

    const std::vector<double>& d = g.degrees();
    std::vector<char> isolated(n, 0);
    std::size_t isolated_count = 0;
    std::vector<double> qvals(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i] == 0.0) {
            isolated[i] = 1;
            ++isolated_count;
            // An isolated node is a singleton tree with probability one; any
            // positive rate keeps the forest distribution on the rest intact.
            qvals[i] = 1.0;
        } else {
            qvals[i] = 0.5 * mu * d[i];
        }
    }
    const QVector qv(std::move(qvals));

    const std::size_t k = labels.class_count();
    std::vector<Signal> z(k);
    for (std::size_t l = 0; l < k; ++l) {
        z[l] = labels.column(l);
        if (sigma == 1.0) continue; // D^0 = I
        for (std::size_t i = 0; i < n; ++i)
            z[l][i] = isolated[i] ? 0.0 : z[l][i] * std::pow(d[i], sigma - 1.0);
    }

    SslClassification out;
    out.isolated_nodes = isolated_count;

    std::vector<Signal> scores(k);
    if (method == SslMethod::Exact) {
        for (std::size_t l = 0; l < k; ++l) scores[l] = require_exact(g, qv, z[l]);
    } else {
        if (n_forests == 0)
            throw std::invalid_argument("ssl_classify: need at least one forest");
        std::vector<NodeId> labeled;
        for (NodeId i = 0; i < n; ++i)
            if (labels.is_labeled(i)) labeled.push_back(i);

        std::atomic<std::uint64_t> label_free_nodes{0};
        auto observer = [&](const RootedForest& f) {
            std::vector<char> tree_labeled(f.tree_count(), 0);
            for (NodeId i : labeled) tree_labeled[f.tree_id[i]] = 1;
            std::uint64_t c = 0;
            for (NodeId i = 0; i < f.node_count(); ++i) c += !tree_labeled[f.tree_id[i]];
            label_free_nodes.fetch_add(c, std::memory_order_relaxed);
        };

        const Estimator est =
            method == SslMethod::RootValue ? Estimator::RootValue : Estimator::TreeMean;
        auto acc = smooth_many(g, qv, z, n_forests, est, rng, threads, nullptr, observer);
        for (std::size_t l = 0; l < k; ++l) scores[l] = acc[l].mean();
        out.label_free_fraction = static_cast<double>(label_free_nodes.load()) /
                                  (static_cast<double>(n_forests) * static_cast<double>(n));
    }

    // Left-scale by D^{1-sigma} and take the argmax, ties to the lowest class.
    out.assignment.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (isolated[i] && sigma != 1.0) continue;
        const double scale = sigma == 1.0 ? 1.0 : std::pow(d[i], 1.0 - sigma);
        std::size_t best = 0;
        double best_score = scores[0][i] * scale;
        for (std::size_t l = 1; l < k; ++l) {
            const double s = scores[l][i] * scale;
            if (s > best_score) {
                best_score = s;
                best = l;
            }
        }
        out.assignment[i] = static_cast<int>(best);
    }
    return out;
}

SslReport ssl_experiment(const SslExperimentParams& params, RngStream rng,
                         std::size_t threads) {
    if (params.m_grid.empty())
        throw std::invalid_argument("ssl_experiment: empty m grid");
    if (params.realizations == 0)
        throw std::invalid_argument("ssl_experiment: need at least one realization");

    const std::size_t nm = params.m_grid.size();
    const std::size_t nr = params.realizations;

    SslReport report;
    report.params = params;
    report.ari_exact.assign(nm, std::vector<double>(nr, 0.0));
    report.ari_tilde.assign(nm, std::vector<double>(nr, 0.0));
    report.ari_bar.assign(nm, std::vector<double>(nr, 0.0));
    report.mean_label_free_fraction.assign(nm, 0.0);
    report.isolated_nodes.assign(nr, 0);
    std::vector<std::vector<double>> label_free(nm, std::vector<double>(nr, 0.0));

    parallel_for(nr, threads, [&](std::size_t r) {
        const SbmSample sbm = sbm_graph(params.n, params.k, params.p_in, params.p_out,
                                        rng.derive(streams::kSbm, r));
        for (std::size_t mi = 0; mi < nm; ++mi) {
            const LabelMatrix labels = sample_labels(sbm.classes, params.m_grid[mi],
                                                     rng.derive(streams::kLabels, r, mi));
            const RngStream sampling = rng.derive(streams::kSampling, r, mi);

            const auto exact = ssl_classify(sbm.graph, labels, params.mu, params.sigma,
                                            SslMethod::Exact, 1, sampling, 1);
            // tilde and bar share the sampling stream, hence the same forests.
            const auto tilde = ssl_classify(sbm.graph, labels, params.mu, params.sigma,
                                            SslMethod::RootValue, params.n_forests,
                                            sampling, 1);
            const auto bar = ssl_classify(sbm.graph, labels, params.mu, params.sigma,
                                          SslMethod::TreeMean, params.n_forests,
                                          sampling, 1);

            report.ari_exact[mi][r] = adjusted_rand_index(exact.assignment, sbm.classes);
            report.ari_tilde[mi][r] = adjusted_rand_index(tilde.assignment, sbm.classes);
            report.ari_bar[mi][r] = adjusted_rand_index(bar.assignment, sbm.classes);
            label_free[mi][r] = bar.label_free_fraction;
            report.isolated_nodes[r] = exact.isolated_nodes;
        }
    });

    report.mean_ari_exact.resize(nm);
    report.mean_ari_tilde.resize(nm);
    report.mean_ari_bar.resize(nm);
    for (std::size_t mi = 0; mi < nm; ++mi) {
        report.mean_ari_exact[mi] = mean_of(report.ari_exact[mi]);
        report.mean_ari_tilde[mi] = mean_of(report.ari_tilde[mi]);
        report.mean_ari_bar[mi] = mean_of(report.ari_bar[mi]);
        report.mean_label_free_fraction[mi] = mean_of(label_free[mi]);
    }
    return report;
}

BenchReport scaling_benchmark(const std::vector<std::size_t>& edge_targets, double q,
                              std::size_t repeats, RngStream rng) {
    if (edge_targets.empty())
        throw std::invalid_argument("scaling_benchmark: no edge targets");
    if (repeats == 0) throw std::invalid_argument("scaling_benchmark: need repeats >= 1");
    if (!(q > 0.0)) throw std::invalid_argument("scaling_benchmark: q must be positive");

    BenchReport report;
    report.q = q;
    report.repeats = repeats;

    for (std::size_t t = 0; t < edge_targets.size(); ++t) {
        const std::size_t target = edge_targets[t];
        // A side x side grid has 2*side*(side-1) edges; smallest side reaching
        // the target solves 2s(s-1) >= target.
        const auto side = static_cast<std::size_t>(std::max(
            2.0,
            std::ceil(0.5 * (1.0 + std::sqrt(1.0 + 2.0 * static_cast<double>(target))))));
        const Graph g = grid_graph(side, side);

        BenchRow row;
        row.target_edges = target;
        row.nodes = g.node_count();
        row.edges = g.edge_count();

        Signal y(g.node_count());
        RngStream yrng = rng.derive(streams::kNoise, t);
        for (double& v : y) v = yrng.uniform();

        const QVector qv(g.node_count(), q);
        std::uint64_t steps = 0;
        for (std::size_t rep = 0; rep < repeats; ++rep) {
            const SmoothResult res = smooth(g, qv, y, 1, Estimator::TreeMean,
                                            rng.derive(streams::kSampling, t, rep), 1);
            row.wall_ms.push_back(res.diagnostics.wall_ms);
            steps += res.diagnostics.walk_steps;
        }
        row.walk_steps = steps / repeats;

        std::vector<double> sorted = row.wall_ms;
        std::sort(sorted.begin(), sorted.end());
        row.wall_ms_median = sorted[sorted.size() / 2];
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace rsf
