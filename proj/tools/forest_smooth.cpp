// forest-smooth: Monte-Carlo graph-signal smoothing over random spanning
// forests, with exact-solve oracles, experiment pipelines and benchmarks.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rsf/errors.hpp"
#include "rsf/estimators.hpp"
#include "rsf/exact.hpp"
#include "rsf/forest.hpp"
#include "rsf/graph.hpp"
#include "rsf/metrics.hpp"
#include "rsf/parallel.hpp"
#include "rsf/pgm.hpp"
#include "rsf/pipelines.hpp"
#include "rsf/report_json.hpp"
#include "rsf/rng.hpp"
#include "rsf/synthetic.hpp"
#include "rsf/version.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitGuard = 3;

std::vector<double> read_signal_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw rsf::InputError("cannot open signal file: " + path);
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        try {
            std::size_t consumed = 0;
            const double v = std::stod(line, &consumed);
            while (consumed < line.size() &&
                   (line[consumed] == ' ' || line[consumed] == '\r'))
                ++consumed;
            if (consumed != line.size()) throw std::invalid_argument("trailing characters");
            values.push_back(v);
        } catch (const std::exception&) {
            throw rsf::InputError(path + ": bad value at line " + std::to_string(line_no));
        }
    }
    return values;
}

rsf::QVector make_qvector(std::size_t n, double q_scalar, const std::string& q_file) {
    if (!q_file.empty()) {
        auto values = read_signal_file(q_file);
        if (values.size() != n)
            throw rsf::InputError("q file has " + std::to_string(values.size()) +
                                  " entries, graph has " + std::to_string(n) + " nodes");
        try {
            return rsf::QVector(std::move(values));
        } catch (const std::invalid_argument& e) {
            throw rsf::InputError(std::string("invalid q file: ") + e.what());
        }
    }
    return rsf::QVector(n, q_scalar);
}

// Data goes to --output when given, otherwise to stdout.
void write_text_output(const std::string& output, const std::string& payload) {
    if (output.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(output, std::ios::binary);
    if (!out) throw rsf::InputError("cannot open output file: " + output);
    out << payload;
    if (!out) throw rsf::InputError("failed writing to: " + output);
}

void write_json_output(const std::string& output, const json& j) {
    write_text_output(output, j.dump(2) + "\n");
}

json make_envelope(const std::string& experiment, const json& config) {
    return json{{"experiment", experiment}, {"version", rsf::kVersion}, {"config", config}};
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::size_t thread_count(std::size_t flag_value) {
    if (flag_value != 0) return flag_value;
    if (const char* env = std::getenv("FOREST_SMOOTH_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return rsf::resolve_threads(0);
}

struct CommonOptions {
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    std::string output;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--seed", opt.seed, "RNG seed; all randomness derives from it");
    cmd->add_option("--threads", opt.threads,
                    "Worker threads (default: FOREST_SMOOTH_THREADS or all cores)");
    cmd->add_option("--output,-o", opt.output, "Output file (default: stdout)");
}

int run_smooth(const std::string& graph_path, const std::string& signal_path,
               double q_scalar, const std::string& q_file, std::uint64_t n_forests,
               const std::string& estimator, const CommonOptions& opt) {
    const rsf::Graph g = rsf::read_graph_file(graph_path);
    auto y = read_signal_file(signal_path);
    if (y.size() != g.node_count())
        throw rsf::InputError("signal has " + std::to_string(y.size()) +
                              " entries, graph has " + std::to_string(g.node_count()));
    const rsf::QVector qv = make_qvector(g.node_count(), q_scalar, q_file);
    const rsf::Estimator which = rsf::estimator_from_name(estimator);
    const std::size_t threads = thread_count(opt.threads);

    const rsf::SmoothResult res =
        rsf::smooth(g, qv, y, n_forests, which, rsf::RngStream(opt.seed, 0), threads);

    const json config{{"command", "smooth"},         {"graph", graph_path},
                      {"signal", signal_path},       {"q", q_scalar},
                      {"q_file", q_file},            {"n_forests", n_forests},
                      {"estimator", estimator},      {"seed", opt.seed}};
    std::ostringstream out;
    out << "# forest-smooth " << rsf::kVersion << ' ' << config.dump() << '\n';
    out << "node,mean,variance\n";
    for (std::size_t i = 0; i < res.mean.size(); ++i)
        out << i << ',' << format_double(res.mean[i]) << ','
            << format_double(res.variance[i]) << '\n';
    write_text_output(opt.output, out.str());

    std::fprintf(stderr, "smooth: %llu forests, %llu walk steps, %.1f ms\n",
                 static_cast<unsigned long long>(res.diagnostics.forests),
                 static_cast<unsigned long long>(res.diagnostics.walk_steps),
                 res.diagnostics.wall_ms);
    return kExitOk;
}

int run_exact(const std::string& graph_path, const std::string& signal_path,
              double q_scalar, const std::string& q_file, bool functionals,
              const CommonOptions& opt) {
    const rsf::Graph g = rsf::read_graph_file(graph_path);
    auto y = read_signal_file(signal_path);
    if (y.size() != g.node_count())
        throw rsf::InputError("signal has " + std::to_string(y.size()) +
                              " entries, graph has " + std::to_string(g.node_count()));
    const rsf::QVector qv = make_qvector(g.node_count(), q_scalar, q_file);

    const rsf::ExactSolveResult res = rsf::exact_smooth(g, qv, y);
    if (!res.converged)
        throw rsf::InputError("conjugate gradient did not converge; residual " +
                              format_double(res.relative_residual));

    const json config{{"command", "exact"},     {"graph", graph_path},
                      {"signal", signal_path},  {"q", q_scalar},
                      {"q_file", q_file},       {"functionals", functionals},
                      {"seed", opt.seed}};
    std::ostringstream out;
    out << "# forest-smooth " << rsf::kVersion << ' ' << config.dump() << '\n';
    out << "node,value\n";
    for (std::size_t i = 0; i < res.x.size(); ++i)
        out << i << ',' << format_double(res.x[i]) << '\n';
    if (functionals) {
        const rsf::VarianceFunctionals vf = rsf::variance_functionals(g, qv, y);
        out << "# v_tilde," << format_double(vf.v_tilde) << '\n';
        out << "# v_bar," << format_double(vf.v_bar) << '\n';
    }
    write_text_output(opt.output, out.str());

    std::fprintf(stderr, "exact: %zu cg iterations, relative residual %.3e\n",
                 res.iterations, res.relative_residual);
    return kExitOk;
}

int run_denoise(const std::string& image_path, std::size_t rows, std::size_t cols,
                std::vector<double> q_grid, double gamma, std::uint64_t n_forests,
                std::size_t realizations, const CommonOptions& opt) {
    rsf::Signal clean;
    double max_value = 255.0;
    if (!image_path.empty()) {
        const rsf::PgmImage img = rsf::read_pgm(image_path);
        rows = img.rows;
        cols = img.cols;
        max_value = img.maxval;
        clean = img.to_signal();
    } else {
        clean = rsf::make_test_image(rows, cols);
    }

    rsf::DenoiseParams params;
    params.q_grid = std::move(q_grid);
    params.gamma = gamma > 0.0 ? gamma : 0.1 * max_value;
    params.n_forests = n_forests;
    params.realizations = realizations;
    params.max_value = max_value;

    const rsf::DenoiseReport report =
        rsf::denoise_experiment(clean, rows, cols, params, rsf::RngStream(opt.seed, 0),
                                thread_count(opt.threads));

    json envelope = make_envelope(
        "denoise", json{{"command", "denoise"},
                        {"image", image_path.empty() ? "synthetic" : image_path},
                        {"rows", rows},
                        {"cols", cols},
                        {"q_grid", params.q_grid},
                        {"gamma", params.gamma},
                        {"n_forests", n_forests},
                        {"realizations", realizations},
                        {"seed", opt.seed}});
    envelope["report"] = report;
    write_json_output(opt.output, envelope);

    std::fprintf(stderr, "denoise: %zu realizations x %zu q values done\n", realizations,
                 params.q_grid.size());
    return kExitOk;
}

int run_ssl(const rsf::SslExperimentParams& params, const CommonOptions& opt) {
    const rsf::SslReport report =
        rsf::ssl_experiment(params, rsf::RngStream(opt.seed, 0), thread_count(opt.threads));

    json envelope = make_envelope("ssl", json{{"command", "ssl"},
                                              {"n", params.n},
                                              {"k", params.k},
                                              {"p_in", params.p_in},
                                              {"p_out", params.p_out},
                                              {"m_grid", params.m_grid},
                                              {"n_forests", params.n_forests},
                                              {"mu", params.mu},
                                              {"sigma", params.sigma},
                                              {"realizations", params.realizations},
                                              {"seed", opt.seed}});
    envelope["report"] = report;
    write_json_output(opt.output, envelope);

    std::fprintf(stderr, "ssl: %zu realizations x %zu label counts done\n",
                 params.realizations, params.m_grid.size());
    return kExitOk;
}

int run_bench(const std::vector<double>& edge_targets, double q, std::size_t repeats,
              const CommonOptions& opt) {
    std::vector<std::size_t> targets;
    for (double e : edge_targets) {
        if (!(e >= 1.0)) throw rsf::InputError("edge targets must be >= 1");
        targets.push_back(static_cast<std::size_t>(e));
    }
    const rsf::BenchReport report =
        rsf::scaling_benchmark(targets, q, repeats, rsf::RngStream(opt.seed, 0));

    json envelope = make_envelope("bench", json{{"command", "bench"},
                                                {"edges", targets},
                                                {"q", q},
                                                {"repeats", repeats},
                                                {"seed", opt.seed}});
    envelope["report"] = report;
    write_json_output(opt.output, envelope);

    for (const rsf::BenchRow& row : report.rows)
        std::fprintf(stderr, "bench: n=%zu |E|=%zu median %.2f ms, %llu steps/forest\n",
                     row.nodes, row.edges, row.wall_ms_median,
                     static_cast<unsigned long long>(row.walk_steps));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph-signal smoothing via random spanning forests"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(rsf::kVersion));

    // smooth
    auto* smooth_cmd =
        app.add_subcommand("smooth", "Monte-Carlo smoothing estimate of (Q+L)^-1 Q y");
    std::string sm_graph, sm_signal, sm_qfile;
    double sm_q = 1.0;
    std::uint64_t sm_forests = 100;
    std::string sm_estimator = "bar";
    CommonOptions sm_opt;
    smooth_cmd->add_option("--graph", sm_graph, "Graph file (text format)")->required();
    smooth_cmd->add_option("--signal", sm_signal, "Signal file, one value per line")
        ->required();
    smooth_cmd->add_option("--q", sm_q, "Uniform regularization strength q > 0");
    smooth_cmd->add_option("--q-file", sm_qfile, "Per-node q file, one value per line");
    smooth_cmd->add_option("--n-forests", sm_forests, "Number of forest samples");
    smooth_cmd->add_option("--estimator", sm_estimator, "Estimator: tilde or bar");
    add_common(smooth_cmd, sm_opt);

    // exact
    auto* exact_cmd = app.add_subcommand("exact", "Exact solve of (Q+L) x = Q y");
    std::string ex_graph, ex_signal, ex_qfile;
    double ex_q = 1.0;
    bool ex_functionals = false;
    CommonOptions ex_opt;
    exact_cmd->add_option("--graph", ex_graph, "Graph file (text format)")->required();
    exact_cmd->add_option("--signal", ex_signal, "Signal file, one value per line")
        ->required();
    exact_cmd->add_option("--q", ex_q, "Uniform regularization strength q > 0");
    exact_cmd->add_option("--q-file", ex_qfile, "Per-node q file, one value per line");
    exact_cmd->add_flag("--functionals", ex_functionals,
                        "Also report the theoretical variance functionals");
    add_common(exact_cmd, ex_opt);

    // denoise
    auto* den_cmd = app.add_subcommand("denoise", "Grid-graph denoising experiment");
    std::string dn_image;
    std::size_t dn_rows = 64, dn_cols = 64;
    std::vector<double> dn_qgrid{0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
    double dn_gamma = 0.0;
    std::uint64_t dn_forests = 20;
    std::size_t dn_realizations = 100;
    CommonOptions dn_opt;
    den_cmd->add_option("--image", dn_image, "Input PGM image (default: built-in scene)");
    den_cmd->add_option("--rows", dn_rows, "Synthetic image rows");
    den_cmd->add_option("--cols", dn_cols, "Synthetic image cols");
    den_cmd->add_option("--q-grid", dn_qgrid, "Comma-separated q values")
        ->delimiter(',');
    den_cmd->add_option("--gamma", dn_gamma, "Noise std dev (default 0.1 x range)");
    den_cmd->add_option("--n-forests", dn_forests, "Forests per estimate");
    den_cmd->add_option("--realizations", dn_realizations, "Noise realizations");
    add_common(den_cmd, dn_opt);

    // ssl
    auto* ssl_cmd = app.add_subcommand("ssl", "SBM semi-supervised labeling experiment");
    rsf::SslExperimentParams ssl_params;
    ssl_params.m_grid = {1, 2, 5, 10, 50, 100};
    CommonOptions ssl_opt;
    ssl_cmd->add_option("--n", ssl_params.n, "Number of nodes (divisible by k)");
    ssl_cmd->add_option("--k", ssl_params.k, "Number of blocks");
    ssl_cmd->add_option("--p-in", ssl_params.p_in, "Intra-block edge probability");
    ssl_cmd->add_option("--p-out", ssl_params.p_out, "Inter-block edge probability");
    ssl_cmd->add_option("--m", ssl_params.m_grid, "Labeled nodes per class (list)")
        ->delimiter(',');
    ssl_cmd->add_option("--n-forests", ssl_params.n_forests, "Forests per estimate");
    ssl_cmd->add_option("--sigma", ssl_params.sigma, "Laplacian variant: 0, 0.5 or 1");
    ssl_cmd->add_option("--mu", ssl_params.mu, "Fidelity/smoothness trade-off");
    ssl_cmd->add_option("--realizations", ssl_params.realizations, "SBM realizations");
    add_common(ssl_cmd, ssl_opt);

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Scaling benchmark of smooth(bar, N=1)");
    std::vector<double> bn_edges{1e5, 1e6};
    double bn_q = 1.0;
    std::size_t bn_repeats = 3;
    CommonOptions bn_opt;
    bench_cmd->add_option("--edges", bn_edges, "Target edge counts (list, e.g. 1e6,1e7)")
        ->delimiter(',');
    bench_cmd->add_option("--q", bn_q, "Uniform q");
    bench_cmd->add_option("--repeats", bn_repeats, "Timing repeats per size");
    add_common(bench_cmd, bn_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (smooth_cmd->parsed())
            return run_smooth(sm_graph, sm_signal, sm_q, sm_qfile, sm_forests,
                              sm_estimator, sm_opt);
        if (exact_cmd->parsed())
            return run_exact(ex_graph, ex_signal, ex_q, ex_qfile, ex_functionals, ex_opt);
        if (den_cmd->parsed())
            return run_denoise(dn_image, dn_rows, dn_cols, dn_qgrid, dn_gamma, dn_forests,
                               dn_realizations, dn_opt);
        if (ssl_cmd->parsed()) return run_ssl(ssl_params, ssl_opt);
        if (bench_cmd->parsed()) return run_bench(bn_edges, bn_q, bn_repeats, bn_opt);
    } catch (const rsf::GuardError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitGuard;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitUsage;
}
