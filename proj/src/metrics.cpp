#include "rsf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace rsf {

double psnr(const Signal& reference, const Signal& candidate, double max_value) {
    if (reference.size() != candidate.size())
        throw std::invalid_argument("psnr: signal length mismatch");
    if (reference.empty()) throw std::invalid_argument("psnr: empty signals");
    if (!(max_value > 0.0)) throw std::invalid_argument("psnr: max_value must be positive");
    double mse = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const double d = reference[i] - candidate[i];
        mse += d * d;
    }
    mse /= static_cast<double>(reference.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(max_value * max_value / mse);
}

double adjusted_rand_index(const std::vector<int>& pred, const std::vector<int>& truth) {
    if (pred.size() != truth.size())
        throw std::invalid_argument("adjusted_rand_index: length mismatch");
    const double n = static_cast<double>(pred.size());
    if (pred.empty()) throw std::invalid_argument("adjusted_rand_index: empty labelings");

    std::map<std::pair<int, int>, double> contingency;
    std::map<int, double> row_sum, col_sum;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        contingency[{pred[i], truth[i]}] += 1.0;
        row_sum[pred[i]] += 1.0;
        col_sum[truth[i]] += 1.0;
    }
    auto comb2 = [](double v) { return v * (v - 1.0) / 2.0; };

    double sum_cells = 0.0, sum_rows = 0.0, sum_cols = 0.0;
    for (const auto& [key, v] : contingency) sum_cells += comb2(v);
    for (const auto& [key, v] : row_sum) sum_rows += comb2(v);
    for (const auto& [key, v] : col_sum) sum_cols += comb2(v);

    const double total = comb2(n);
    const double expected = sum_rows * sum_cols / total;
    const double max_index = 0.5 * (sum_rows + sum_cols);
    if (max_index == expected) return 1.0; // both labelings trivial
    return (sum_cells - expected) / (max_index - expected);
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
        const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
        i = j + 1;
    }
    return rank;
}

} // namespace

double spearman_rank_correlation(const std::vector<double>& xs,
                                 const std::vector<double>& ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("spearman: length mismatch");
    if (xs.size() < 2) throw std::invalid_argument("spearman: need at least two points");
    const auto rx = average_ranks(xs);
    const auto ry = average_ranks(ys);
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0; // a constant sequence carries no order
    return sxy / std::sqrt(sxx * syy);
}

} // namespace rsf
