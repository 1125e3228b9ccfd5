#include "rsf/exact.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "rsf/errors.hpp"

namespace rsf {

Eigen::MatrixXd dense_laplacian(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (NodeId i = 0; i < g.node_count(); ++i) {
        auto nb = g.neighbors(i);
        auto ws = g.weights(i);
        for (std::size_t k = 0; k < nb.size(); ++k)
            L(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(nb[k])) = -ws[k];
        L(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = g.degree(i);
    }
    return L;
}

namespace {

void check_dense_guard(std::size_t n) {
    if (n > kDenseGuard)
        throw GuardError("dense oracle limited to " + std::to_string(kDenseGuard) +
                         " nodes (got " + std::to_string(n) +
                         "); use the Monte-Carlo path for larger graphs");
}

} // namespace

DenseKernel dense_kernel(const Graph& g, const QVector& q) {
    if (q.size() != g.node_count())
        throw std::invalid_argument("dense_kernel: q length does not match graph");
    check_dense_guard(g.node_count());
    const auto n = static_cast<Eigen::Index>(g.node_count());
    Eigen::MatrixXd M = dense_laplacian(g);
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        M(i, i) += q[static_cast<std::size_t>(i)];
        Q(i, i) = q[static_cast<std::size_t>(i)];
    }
    DenseKernel k;
    k.K = M.llt().solve(Q); // Q+L is SPD for q > 0
    return k;
}

ExactSolveResult exact_smooth(const Graph& g, const QVector& q, const Signal& y,
                              double tolerance, std::size_t max_iterations) {
    const std::size_t n = g.node_count();
    if (q.size() != n)
        throw std::invalid_argument("exact_smooth: q length does not match graph");
    if (y.size() != n)
        throw std::invalid_argument("exact_smooth: signal length does not match graph");
    if (max_iterations == 0) max_iterations = std::min<std::size_t>(4 * n + 100, 50000);

    auto apply = [&](const Signal& z) {
        Signal out = laplacian_apply(g, z);
        for (std::size_t i = 0; i < n; ++i) out[i] += q[i] * z[i];
        return out;
    };
    auto dot = [](const Signal& a, const Signal& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };

    Signal b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = q[i] * y[i];
    const double b_norm = std::sqrt(dot(b, b));

    ExactSolveResult res;
    res.x = y; // warm start: x = y is exact in the q >> d limit
    if (b_norm == 0.0) {
        res.x.assign(n, 0.0);
        res.converged = true;
        return res;
    }

    Signal r = apply(res.x);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    Signal p = r;
    double rr = dot(r, r);

    std::size_t it = 0;
    while (std::sqrt(rr) > tolerance * b_norm && it < max_iterations) {
        ++it;
        const Signal Ap = apply(p);
        const double alpha = rr / dot(p, Ap);
        for (std::size_t i = 0; i < n; ++i) {
            res.x[i] += alpha * p[i];
            r[i] -= alpha * Ap[i];
        }
        const double rr_new = dot(r, r);
        const double beta = rr_new / rr;
        rr = rr_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    }
    res.iterations = it;
    res.relative_residual = std::sqrt(rr) / b_norm;
    res.converged = res.relative_residual <= tolerance;
    return res;
}

VarianceFunctionals variance_functionals(const Graph& g, const QVector& q,
                                         const Signal& y) {
    if (y.size() != g.node_count())
        throw std::invalid_argument("variance_functionals: signal length mismatch");
    const DenseKernel dk = dense_kernel(g, q);
    const auto n = static_cast<Eigen::Index>(y.size());
    Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);
    const Eigen::VectorXd Ky = dk.K * yv;
    const Eigen::VectorXd KKy = dk.K * Ky;
    const double yy = yv.dot(yv);
    const double yKy = yv.dot(Ky);
    const double yKKy = yv.dot(KKy);
    return {yy - yKKy, yKy - yKKy};
}

ExpectedMse expected_mse_under_noise(const Graph& g, double q, const Signal& x,
                                     double gamma) {
    if (x.size() != g.node_count())
        throw std::invalid_argument("expected_mse_under_noise: signal length mismatch");
    if (!(q > 0.0)) throw std::invalid_argument("expected_mse_under_noise: q must be positive");
    if (gamma < 0.0) throw std::invalid_argument("expected_mse_under_noise: gamma must be >= 0");
    check_dense_guard(g.node_count());

    const auto n = static_cast<Eigen::Index>(g.node_count());
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), n);

    const DenseKernel dk = dense_kernel(g, QVector(g.node_count(), q));
    const Eigen::MatrixXd A = dk.K - dk.K * dk.K;
    const double matrix_form = xv.dot(A * xv) + gamma * gamma * A.trace();

    // Independent spectral route: K - K^2 = F^2 with f(l) = sqrt(q l)/(q + l).
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense_laplacian(g));
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("expected_mse_under_noise: eigendecomposition failed");
    const Eigen::VectorXd coeffs = eig.eigenvectors().transpose() * xv;
    double signal_term = 0.0, noise_term = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const double lambda = std::max(eig.eigenvalues()[k], 0.0);
        const double f2 = q * lambda / ((q + lambda) * (q + lambda));
        signal_term += f2 * coeffs[k] * coeffs[k];
        noise_term += f2;
    }
    return {matrix_form, signal_term + gamma * gamma * noise_term};
}

namespace {

// Multigraph edge during contraction/deletion; endpoints are current
// contracted-vertex representatives, id points into the augmented edge table.
struct EnumEdge {
    NodeId a;
    NodeId b;
    std::size_t id;
};

struct AugmentedEdge {
    NodeId u;      // original endpoints; v == delta for root edges
    NodeId v;
    double w;
};

bool connected(std::size_t n_vertices, const std::vector<NodeId>& vertices,
               const std::vector<EnumEdge>& edges) {
    if (n_vertices <= 1) return true;
    // vertices holds the representative ids; map them to 0..n_vertices-1.
    std::vector<std::size_t> index(vertices.size());
    std::vector<std::vector<std::size_t>> adj(n_vertices);
    auto rep_index = [&](NodeId r) {
        return static_cast<std::size_t>(
            std::lower_bound(vertices.begin(), vertices.end(), r) - vertices.begin());
    };
    for (const EnumEdge& e : edges) {
        adj[rep_index(e.a)].push_back(rep_index(e.b));
        adj[rep_index(e.b)].push_back(rep_index(e.a));
    }
    std::vector<char> seen(n_vertices, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v : adj[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++visited;
                stack.push_back(v);
            }
        }
    }
    return visited == n_vertices;
}

// Enumerate spanning trees of the current contracted multigraph. `vertices`
// is the sorted list of live representatives; every tree found is emitted
// through sink as the set of chosen augmented-edge ids.
void enumerate_trees(std::vector<NodeId> vertices, std::vector<EnumEdge> edges,
                     std::vector<std::size_t>& chosen,
                     const std::function<void(const std::vector<std::size_t>&)>& sink) {
    if (vertices.size() == 1) {
        sink(chosen);
        return;
    }
    if (edges.empty()) return; // disconnected branch, no spanning tree

    const EnumEdge pick = edges.front();

    // Branch 1: contract pick (keep representative a, retire b).
    {
        std::vector<NodeId> v2;
        v2.reserve(vertices.size() - 1);
        for (NodeId r : vertices)
            if (r != pick.b) v2.push_back(r);
        std::vector<EnumEdge> e2;
        e2.reserve(edges.size() - 1);
        for (std::size_t k = 1; k < edges.size(); ++k) {
            EnumEdge e = edges[k];
            if (e.a == pick.b) e.a = pick.a;
            if (e.b == pick.b) e.b = pick.a;
            if (e.a == e.b) continue; // self-loop after contraction
            e2.push_back(e);
        }
        chosen.push_back(pick.id);
        enumerate_trees(std::move(v2), std::move(e2), chosen, sink);
        chosen.pop_back();
    }

    // Branch 2: delete pick; only explore if the graph stays connected.
    {
        std::vector<EnumEdge> e2(edges.begin() + 1, edges.end());
        if (connected(vertices.size(), vertices, e2))
            enumerate_trees(std::move(vertices), std::move(e2), chosen, sink);
    }
}

RootedForest forest_from_tree_edges(std::size_t n, const std::vector<std::size_t>& chosen,
                                    const std::vector<AugmentedEdge>& table) {
    const NodeId delta = n;
    RootedForest f;
    f.parent_of.assign(n, kNoNode);
    f.root_of.assign(n, kNoNode);
    f.tree_id.assign(n, 0);

    std::vector<std::vector<NodeId>> adj(n);
    std::vector<char> is_root(n, 0);
    for (std::size_t id : chosen) {
        const AugmentedEdge& e = table[id];
        if (e.v == delta) {
            is_root[e.u] = 1;
        } else {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
    }
    for (NodeId i = 0; i < n; ++i)
        if (is_root[i]) f.roots.push_back(i);

    // Orient tree edges toward the roots.
    std::vector<NodeId> stack;
    for (std::size_t t = 0; t < f.roots.size(); ++t) {
        const NodeId root = f.roots[t];
        f.root_of[root] = root;
        f.tree_id[root] = t;
        stack.push_back(root);
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            for (NodeId v : adj[u]) {
                if (f.root_of[v] != kNoNode || v == root) continue;
                f.parent_of[v] = u;
                f.root_of[v] = root;
                f.tree_id[v] = t;
                stack.push_back(v);
            }
        }
    }
    return f;
}

} // namespace

std::vector<WeightedForest> enumerate_forests(const Graph& g, const QVector& q) {
    const std::size_t n = g.node_count();
    if (q.size() != n)
        throw std::invalid_argument("enumerate_forests: q length does not match graph");
    if (n > kEnumerationGuard)
        throw GuardError("forest enumeration limited to " +
                         std::to_string(kEnumerationGuard) + " nodes (got " +
                         std::to_string(n) + ")");
    const NodeId delta = n;

    std::vector<AugmentedEdge> table;
    for (const Edge& e : g.edges()) table.push_back({e.u, e.v, e.w});
    for (NodeId i = 0; i < n; ++i) table.push_back({i, delta, q[i]});

    std::vector<NodeId> vertices(n + 1);
    std::iota(vertices.begin(), vertices.end(), NodeId{0});
    std::vector<EnumEdge> edges;
    edges.reserve(table.size());
    for (std::size_t id = 0; id < table.size(); ++id)
        edges.push_back({table[id].u, table[id].v, id});

    std::vector<WeightedForest> out;
    long double total = 0.0L;
    std::vector<std::size_t> chosen;
    enumerate_trees(std::move(vertices), std::move(edges), chosen,
                    [&](const std::vector<std::size_t>& tree) {
                        long double w = 1.0L;
                        for (std::size_t id : tree) w *= table[id].w;
                        total += w;
                        out.push_back({forest_from_tree_edges(n, tree, table),
                                       static_cast<double>(w)});
                    });

    for (WeightedForest& wf : out)
        wf.probability = static_cast<double>(static_cast<long double>(wf.probability) / total);
    return out;
}

} // namespace rsf
