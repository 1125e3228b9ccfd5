#include "rsf/estimators.hpp"

#include <chrono>
#include <cstring>
#include <mutex>
#include <stdexcept>

#include "rsf/parallel.hpp"

namespace rsf {

Estimator estimator_from_name(const std::string& name) {
    if (name == "tilde") return Estimator::RootValue;
    if (name == "bar") return Estimator::TreeMean;
    throw std::invalid_argument("unknown estimator '" + name + "' (expected tilde or bar)");
}

const char* estimator_name(Estimator e) {
    return e == Estimator::RootValue ? "tilde" : "bar";
}

Signal estimate_root_value(const RootedForest& f, const Signal& y) {
    if (y.size() != f.node_count())
        throw std::invalid_argument("estimate_root_value: signal length mismatch");
    Signal x(y.size());
    for (NodeId i = 0; i < y.size(); ++i) x[i] = y[f.root_of[i]];
    return x;
}

Signal estimate_tree_mean(const RootedForest& f, const Signal& y, const QVector& q) {
    if (y.size() != f.node_count())
        throw std::invalid_argument("estimate_tree_mean: signal length mismatch");
    if (q.size() != f.node_count())
        throw std::invalid_argument("estimate_tree_mean: q length mismatch");
    const std::size_t trees = f.tree_count();
    // Weighted mean shifted by the root's value, so a constant signal comes
    // back bit-exact (the numerator is exactly zero).
    std::vector<double> num(trees, 0.0);
    std::vector<double> den(trees, 0.0);
    for (NodeId i = 0; i < y.size(); ++i) {
        const std::size_t t = f.tree_id[i];
        num[t] += q[i] * (y[i] - y[f.roots[t]]);
        den[t] += q[i];
    }
    for (std::size_t t = 0; t < trees; ++t) num[t] = y[f.roots[t]] + num[t] / den[t];
    Signal x(y.size());
    for (NodeId i = 0; i < y.size(); ++i) x[i] = num[f.tree_id[i]];
    return x;
}

Signal estimate(Estimator which, const RootedForest& f, const Signal& y,
                const QVector& q) {
    return which == Estimator::RootValue ? estimate_root_value(f, y)
                                         : estimate_tree_mean(f, y, q);
}

EstimateAccumulator::EstimateAccumulator(std::size_t n)
    : mean_(n, 0.0), m2_(n, 0.0) {}

void EstimateAccumulator::add(const Signal& sample) {
    if (sample.size() != mean_.size())
        throw std::invalid_argument("EstimateAccumulator: sample length mismatch");
    ++count_;
    const double inv = 1.0 / static_cast<double>(count_);
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double delta = sample[i] - mean_[i];
        mean_[i] += delta * inv;
        m2_[i] += delta * (sample[i] - mean_[i]);
    }
}

void EstimateAccumulator::merge(const EstimateAccumulator& other) {
    if (other.mean_.size() != mean_.size())
        throw std::invalid_argument("EstimateAccumulator: merge length mismatch");
    if (other.count_ == 0) return;
    if (count_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(count_);
    const double nb = static_cast<double>(other.count_);
    const double nab = na + nb;
    for (std::size_t i = 0; i < mean_.size(); ++i) {
        const double delta = other.mean_[i] - mean_[i];
        mean_[i] += delta * (nb / nab);
        m2_[i] += other.m2_[i] + delta * delta * (na * nb / nab);
    }
    count_ += other.count_;
}

std::vector<double> EstimateAccumulator::variance() const {
    std::vector<double> v(mean_.size(), 0.0);
    if (count_ < 2) return v;
    const double inv = 1.0 / static_cast<double>(count_ - 1);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = m2_[i] * inv;
    return v;
}

double EstimateAccumulator::variance_sum() const {
    if (count_ < 2) return 0.0;
    double s = 0.0;
    for (double v : m2_) s += v;
    return s / static_cast<double>(count_ - 1);
}

EstimateAccumulator merge(const EstimateAccumulator& a, const EstimateAccumulator& b) {
    EstimateAccumulator out = a;
    out.merge(b);
    return out;
}

namespace {

// Chunk count is fixed (not tied to the thread count) so the merged result
// is bit-identical however many workers run.
constexpr std::uint64_t kChunks = 256;

struct ChunkRange {
    std::uint64_t begin;
    std::uint64_t end;
};

ChunkRange chunk_range(std::uint64_t n, std::uint64_t chunks, std::uint64_t c) {
    return {n * c / chunks, n * (c + 1) / chunks};
}

} // namespace

std::vector<EstimateAccumulator> smooth_many(
    const Graph& g, const QVector& q, const std::vector<Signal>& ys,
    std::uint64_t n_forests, Estimator which, RngStream rng, std::size_t threads,
    SmoothDiagnostics* diagnostics, const std::function<void(const RootedForest&)>& observer) {
    if (n_forests == 0)
        throw std::invalid_argument("smooth: need at least one forest");
    for (const Signal& y : ys)
        if (y.size() != g.node_count())
            throw std::invalid_argument("smooth: signal length does not match graph");

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t chunks = std::min<std::uint64_t>(n_forests, kChunks);

    std::vector<std::vector<EstimateAccumulator>> acc(
        chunks, std::vector<EstimateAccumulator>(ys.size(),
                                                 EstimateAccumulator(g.node_count())));
    std::vector<std::uint64_t> steps(chunks, 0);

    parallel_for(chunks, threads, [&](std::size_t c) {
        const auto [lo, hi] = chunk_range(n_forests, chunks, c);
        for (std::uint64_t k = lo; k < hi; ++k) {
            const RootedForest f = sample_forest(g, q, rng.derive(k));
            steps[c] += f.walk_steps;
            for (std::size_t s = 0; s < ys.size(); ++s)
                acc[c][s].add(estimate(which, f, ys[s], q));
            if (observer) observer(f);
        }
    });

    std::vector<EstimateAccumulator> total(ys.size(), EstimateAccumulator(g.node_count()));
    std::uint64_t total_steps = 0;
    for (std::uint64_t c = 0; c < chunks; ++c) {
        for (std::size_t s = 0; s < ys.size(); ++s) total[s].merge(acc[c][s]);
        total_steps += steps[c];
    }

    if (diagnostics) {
        diagnostics->forests = n_forests;
        diagnostics->walk_steps = total_steps;
        diagnostics->wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
    }
    return total;
}

SmoothResult smooth(const Graph& g, const QVector& q, const Signal& y,
                    std::uint64_t n_forests, Estimator which, RngStream rng,
                    std::size_t threads) {
    SmoothDiagnostics diag;
    std::vector<Signal> ys{y};
    auto acc = smooth_many(g, q, ys, n_forests, which, rng, threads, &diag);
    SmoothResult out;
    out.mean = acc[0].mean();
    out.variance = acc[0].variance();
    out.diagnostics = diag;
    return out;
}

} // namespace rsf
