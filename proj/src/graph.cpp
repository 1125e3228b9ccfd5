#include "rsf/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rsf/errors.hpp"

namespace rsf {

Graph::Graph(std::size_t n, std::span<const Edge> edges) : n_(n), m_(edges.size()) {
    offset_.assign(n_ + 1, 0);
    for (const Edge& e : edges) {
        if (e.u >= n_ || e.v >= n_)
            throw std::invalid_argument("graph edge endpoint out of range");
        if (e.u == e.v)
            throw std::invalid_argument("graph edge is a self-loop");
        if (!(e.w > 0.0) || !std::isfinite(e.w))
            throw std::invalid_argument("graph edge weight must be positive and finite");
        offset_[e.u + 1]++;
        offset_[e.v + 1]++;
    }
    for (std::size_t i = 0; i < n_; ++i) offset_[i + 1] += offset_[i];

    neighbor_.resize(2 * m_);
    weight_.resize(2 * m_);
    std::vector<std::size_t> cursor(offset_.begin(), offset_.end() - 1);
    for (const Edge& e : edges) {
        neighbor_[cursor[e.u]] = e.v;
        weight_[cursor[e.u]++] = e.w;
        neighbor_[cursor[e.v]] = e.u;
        weight_[cursor[e.v]++] = e.w;
    }

    // Sort each adjacency slice by neighbor id; duplicates then sit adjacent.
    std::vector<std::size_t> perm;
    std::vector<NodeId> nbuf;
    std::vector<double> wbuf;
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t lo = offset_[i], hi = offset_[i + 1];
        const std::size_t len = hi - lo;
        if (len <= 1) continue;
        perm.resize(len);
        for (std::size_t k = 0; k < len; ++k) perm[k] = k;
        std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
            return neighbor_[lo + a] < neighbor_[lo + b];
        });
        nbuf.resize(len);
        wbuf.resize(len);
        for (std::size_t k = 0; k < len; ++k) {
            nbuf[k] = neighbor_[lo + perm[k]];
            wbuf[k] = weight_[lo + perm[k]];
        }
        for (std::size_t k = 0; k < len; ++k) {
            neighbor_[lo + k] = nbuf[k];
            weight_[lo + k] = wbuf[k];
        }
        for (std::size_t k = 1; k < len; ++k)
            if (nbuf[k - 1] == nbuf[k])
                throw std::invalid_argument("duplicate undirected edge in graph input");
    }

    degree_.assign(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        double d = 0.0;
        for (std::size_t k = offset_[i]; k < offset_[i + 1]; ++k) d += weight_[k];
        degree_[i] = d;
    }
}

Graph build_graph(std::size_t n, std::span<const Edge> edges) {
    return Graph(n, edges);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (NodeId i = 0; i < n_; ++i) {
        auto nb = neighbors(i);
        auto ws = weights(i);
        for (std::size_t k = 0; k < nb.size(); ++k)
            if (i < nb[k]) out.push_back({i, nb[k], ws[k]});
    }
    return out;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    if (u >= n_ || v >= n_) return false;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<double> degree_vector(const Graph& g) { return g.degrees(); }

Signal laplacian_apply(const Graph& g, const Signal& z) {
    if (z.size() != g.node_count())
        throw std::invalid_argument("laplacian_apply: signal length does not match graph");
    Signal out(z.size());
    for (NodeId i = 0; i < g.node_count(); ++i) {
        auto nb = g.neighbors(i);
        auto ws = g.weights(i);
        double acc = 0.0;
        for (std::size_t k = 0; k < nb.size(); ++k) acc += ws[k] * z[nb[k]];
        out[i] = g.degree(i) * z[i] - acc;
    }
    return out;
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& why) {
    throw InputError("graph parse error at line " + std::to_string(line_no) + ": " + why);
}

const char* skip_ws(const char* p, const char* end) {
    while (p != end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    return p;
}

template <typename T>
const char* parse_number(const char* p, const char* end, T& value,
                         std::size_t line_no, const char* what) {
    p = skip_ws(p, end);
    auto [next, ec] = std::from_chars(p, end, value);
    if (ec != std::errc())
        parse_fail(line_no, std::string("expected ") + what);
    return next;
}

} // namespace

Graph read_graph(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) parse_fail(1, "missing header");
    ++line_no;
    std::size_t n = 0, m = 0;
    {
        const char* p = line.data();
        const char* end = line.data() + line.size();
        p = parse_number(p, end, n, line_no, "node count");
        p = parse_number(p, end, m, line_no, "edge count");
        p = skip_ws(p, end);
        if (p != end) parse_fail(line_no, "trailing characters after header");
    }

    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        if (!std::getline(in, line))
            parse_fail(line_no + 1, "unexpected end of file, expected " +
                                        std::to_string(m) + " edge lines");
        ++line_no;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        Edge e{};
        p = parse_number(p, end, e.u, line_no, "node id");
        p = parse_number(p, end, e.v, line_no, "node id");
        p = parse_number(p, end, e.w, line_no, "edge weight");
        p = skip_ws(p, end);
        if (p != end) parse_fail(line_no, "trailing characters after edge");
        if (e.u >= e.v) parse_fail(line_no, "edge must satisfy i < j");
        edges.push_back(e);
    }

    try {
        return Graph(n, edges);
    } catch (const std::invalid_argument& ex) {
        throw InputError(std::string("invalid graph: ") + ex.what());
    }
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file: " + path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
    out << g.node_count() << ' ' << g.edge_count() << '\n';
    char buf[64];
    for (NodeId i = 0; i < g.node_count(); ++i) {
        auto nb = g.neighbors(i);
        auto ws = g.weights(i);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            if (i >= nb[k]) continue;
            std::snprintf(buf, sizeof(buf), "%.17g", ws[k]);
            out << i << ' ' << nb[k] << ' ' << buf << '\n';
        }
    }
}

void write_graph_file(const std::string& path, const Graph& g) {
    std::ofstream out(path, std::ios::binary); // LF endings on every platform
    if (!out) throw InputError("cannot open output file: " + path);
    write_graph(out, g);
    if (!out) throw InputError("failed writing graph to: " + path);
}

} // namespace rsf
