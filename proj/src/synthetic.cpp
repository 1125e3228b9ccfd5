#include "rsf/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rsf {

LabelMatrix::LabelMatrix(std::size_t n, std::size_t k) : k_(k), class_of_(n, -1) {
    if (k == 0) throw std::invalid_argument("LabelMatrix: need at least one class");
}

void LabelMatrix::set_label(NodeId i, std::size_t cls) {
    if (i >= class_of_.size()) throw std::invalid_argument("LabelMatrix: node out of range");
    if (cls >= k_) throw std::invalid_argument("LabelMatrix: class out of range");
    class_of_[i] = static_cast<int>(cls);
}

std::size_t LabelMatrix::labeled_count() const {
    std::size_t c = 0;
    for (int v : class_of_) c += (v >= 0);
    return c;
}

Signal LabelMatrix::column(std::size_t l) const {
    if (l >= k_) throw std::invalid_argument("LabelMatrix: class out of range");
    Signal y(class_of_.size(), 0.0);
    for (std::size_t i = 0; i < class_of_.size(); ++i)
        if (class_of_[i] == static_cast<int>(l)) y[i] = 1.0;
    return y;
}

Graph grid_graph(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("grid_graph: dimensions must be at least 1");
    std::vector<Edge> edges;
    edges.reserve(rows * (cols - 1) + cols * (rows - 1));
    auto id = [cols](std::size_t r, std::size_t c) { return r * cols + c; };
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1), 1.0});
            if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c), 1.0});
        }
    }
    return Graph(rows * cols, edges);
}

SbmSample sbm_graph(std::size_t n, std::size_t k, double p_in, double p_out,
                    RngStream rng) {
    if (k == 0 || n % k != 0)
        throw std::invalid_argument("sbm_graph: n must be divisible by k");
    if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0)
        throw std::invalid_argument("sbm_graph: probabilities must lie in [0,1]");

    const std::size_t block = n / k;
    std::vector<int> classes(n);
    for (std::size_t i = 0; i < n; ++i) classes[i] = static_cast<int>(i / block);

    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double p = classes[i] == classes[j] ? p_in : p_out;
            if (p >= 1.0 || rng.uniform() < p) edges.push_back({i, j, 1.0});
        }
    }
    return {Graph(n, edges), std::move(classes)};
}

Signal add_gaussian_noise(const Signal& x, double gamma, RngStream rng) {
    if (gamma < 0.0) throw std::invalid_argument("add_gaussian_noise: gamma must be >= 0");
    Signal y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + gamma * rng.normal();
    return y;
}

LabelMatrix sample_labels(const std::vector<int>& classes, std::size_t m,
                          RngStream rng) {
    int k_max = -1;
    for (int c : classes) {
        if (c < 0) throw std::invalid_argument("sample_labels: negative class id");
        k_max = std::max(k_max, c);
    }
    const std::size_t k = static_cast<std::size_t>(k_max + 1);
    LabelMatrix labels(classes.size(), k);

    std::vector<std::vector<NodeId>> members(k);
    for (std::size_t i = 0; i < classes.size(); ++i)
        members[static_cast<std::size_t>(classes[i])].push_back(i);

    for (std::size_t cls = 0; cls < k; ++cls) {
        auto& pool = members[cls];
        if (m > pool.size())
            throw std::invalid_argument("sample_labels: m exceeds class size");
        // Partial Fisher-Yates: the first m slots become the sample.
        for (std::size_t t = 0; t < m; ++t) {
            const std::size_t j = t + static_cast<std::size_t>(
                                          rng.uniform_below(pool.size() - t));
            std::swap(pool[t], pool[j]);
            labels.set_label(pool[t], cls);
        }
    }
    return labels;
}

Signal make_test_image(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("make_test_image: dimensions must be at least 1");
    Signal img(rows * cols);
    const double rd = static_cast<double>(rows);
    const double cd = static_cast<double>(cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const double y = (static_cast<double>(r) + 0.5) / rd;
            const double x = (static_cast<double>(c) + 0.5) / cd;
            double v = 40.0 + 120.0 * (0.5 * x + 0.5 * y); // diagonal ramp

            // Bright disk with a soft rim, upper left.
            const double dx = x - 0.34, dy = y - 0.30;
            const double dist = std::sqrt(dx * dx + dy * dy);
            v += 140.0 / (1.0 + std::exp((dist - 0.18) * 40.0));

            // Dark box, lower right.
            if (x > 0.55 && x < 0.88 && y > 0.58 && y < 0.85) v -= 90.0;

            img[r * cols + c] = std::floor(std::clamp(v, 0.0, 255.0));
        }
    }
    return img;
}

} // namespace rsf
