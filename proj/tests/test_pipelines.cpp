#include <doctest.h>

#include <cmath>
#include <limits>

#include "helpers.hpp"
#include "rsf/exact.hpp"
#include "rsf/metrics.hpp"
#include "rsf/pipelines.hpp"
#include "rsf/report_json.hpp"
#include "rsf/synthetic.hpp"

using namespace rsf;

TEST_SUITE_BEGIN("pipelines");

TEST_CASE("denoise: noiseless measurement has infinite noisy PSNR, finite estimates") {
    DenoiseParams params;
    params.q_grid = {1.0};
    params.gamma = 0.0;
    params.n_forests = 4;
    params.realizations = 2;
    params.max_value = 255.0;
    auto clean = make_test_image(8, 8);
    auto report = denoise_experiment(clean, 8, 8, params, RngStream(3, 0), 2);
    for (double v : report.psnr_noisy) CHECK(v == std::numeric_limits<double>::infinity());
    for (double v : report.psnr_tilde[0]) CHECK(std::isfinite(v));
    for (double v : report.psnr_bar[0]) CHECK(std::isfinite(v));
}

TEST_CASE("denoise: constant image gives infinite PSNR everywhere at gamma 0") {
    DenoiseParams params;
    params.q_grid = {0.5, 2.0};
    params.gamma = 0.0;
    params.n_forests = 3;
    params.realizations = 1;
    params.max_value = 1.0;
    Signal clean(36, 0.625);
    auto report = denoise_experiment(clean, 6, 6, params, RngStream(4, 0), 1);
    for (std::size_t j = 0; j < 2; ++j) {
        CHECK(report.psnr_exact[j][0] == std::numeric_limits<double>::infinity());
        CHECK(report.psnr_tilde[j][0] == std::numeric_limits<double>::infinity());
        CHECK(report.psnr_bar[j][0] == std::numeric_limits<double>::infinity());
    }
}

TEST_CASE("denoise report is deterministic and thread-count independent") {
    DenoiseParams params;
    params.q_grid = {0.5, 1.0};
    params.gamma = 10.0;
    params.n_forests = 5;
    params.realizations = 4;
    auto clean = make_test_image(10, 10);
    auto a = denoise_experiment(clean, 10, 10, params, RngStream(11, 0), 1);
    auto b = denoise_experiment(clean, 10, 10, params, RngStream(11, 0), 2);
    CHECK(a.psnr_noisy == b.psnr_noisy);
    CHECK(a.psnr_exact == b.psnr_exact);
    CHECK(a.psnr_tilde == b.psnr_tilde);
    CHECK(a.psnr_bar == b.psnr_bar);
    CHECK(a.mean_psnr_bar == b.mean_psnr_bar);
}

TEST_CASE("ssl: disjoint components take their own component's label") {
    // Two triangles, one labeled node each.
    std::vector<Edge> edges{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0},
                            {3, 4, 1.0}, {4, 5, 1.0}, {3, 5, 1.0}};
    Graph g(6, edges);
    LabelMatrix labels(6, 2);
    labels.set_label(0, 0);
    labels.set_label(3, 1);
    auto res = ssl_classify(g, labels, 1.0, 0.0, SslMethod::Exact, 1, RngStream(1, 0), 1);
    CHECK(res.assignment == std::vector<int>{0, 0, 0, 1, 1, 1});
    CHECK(res.isolated_nodes == 0);
}

TEST_CASE("ssl: huge mu keeps the prior labels") {
    auto sample = sbm_graph(40, 2, 0.4, 0.2, RngStream(21, 0));
    auto labels = sample_labels(sample.classes, 5, RngStream(21, 1));
    auto res = ssl_classify(sample.graph, labels, 1e8, 0.0, SslMethod::Exact, 1,
                            RngStream(21, 2), 1);
    for (NodeId i = 0; i < 40; ++i)
        if (labels.is_labeled(i)) CHECK(res.assignment[i] == labels.label(i));
}

TEST_CASE("ssl: zero-degree nodes are flagged unlabeled when sigma != 1") {
    std::vector<Edge> edges{{0, 1, 1.0}, {1, 2, 1.0}};
    Graph g(4, edges); // node 3 isolated
    LabelMatrix labels(4, 2);
    labels.set_label(0, 0);
    labels.set_label(2, 1);
    auto res = ssl_classify(g, labels, 1.0, 0.0, SslMethod::Exact, 1, RngStream(2, 0), 1);
    CHECK(res.isolated_nodes == 1);
    CHECK(res.assignment[3] == -1);
    CHECK(res.assignment[0] == 0);

    auto res1 = ssl_classify(g, labels, 1.0, 1.0, SslMethod::Exact, 1, RngStream(2, 1), 1);
    CHECK(res1.assignment[3] != -1); // sigma = 1 needs no degree scaling
}

TEST_CASE("ssl: sigma validation") {
    Graph g(2, std::vector<Edge>{{0, 1, 1.0}});
    LabelMatrix labels(2, 2);
    CHECK_THROWS_AS(ssl_classify(g, labels, 1.0, 0.3, SslMethod::Exact, 1,
                                 RngStream(1, 0), 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(ssl_classify(g, labels, 0.0, 0.0, SslMethod::Exact, 1,
                                 RngStream(1, 0), 1),
                    std::invalid_argument);
}

TEST_CASE("ssl: the avrachenkov closed form matches the kernel route") {
    // f_l = mu/(2+mu) (I - 2/(2+mu) D^-sigma W D^(sigma-1))^-1 y_l must equal
    // D^(1-sigma) K D^(sigma-1) y_l with Q = (mu/2) D.
    auto sample = sbm_graph(24, 2, 0.5, 0.2, RngStream(31, 0));
    const Graph& g = sample.graph;
    const std::size_t n = g.node_count();
    for (double d : g.degrees()) REQUIRE(d > 0.0);

    for (double sigma : {0.0, 0.5, 1.0}) {
        const double mu = 1.3;
        auto labels = sample_labels(sample.classes, 4, RngStream(31, 7));
        const Signal y = labels.column(0);

        // Route 1: library pipeline pieces (kernel form via CG).
        std::vector<double> qvals(n);
        for (std::size_t i = 0; i < n; ++i) qvals[i] = 0.5 * mu * g.degree(i);
        Signal z(n);
        for (std::size_t i = 0; i < n; ++i)
            z[i] = y[i] * std::pow(g.degree(i), sigma - 1.0);
        auto solved = exact_smooth(g, QVector(qvals), z);
        REQUIRE(solved.converged);
        Signal f1(n);
        for (std::size_t i = 0; i < n; ++i)
            f1[i] = std::pow(g.degree(i), 1.0 - sigma) * solved.x[i];

        // Route 2: dense closed form from the SSL literature.
        Eigen::MatrixXd W = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                  static_cast<Eigen::Index>(n));
        for (const Edge& e : g.edges()) {
            W(static_cast<Eigen::Index>(e.u), static_cast<Eigen::Index>(e.v)) = e.w;
            W(static_cast<Eigen::Index>(e.v), static_cast<Eigen::Index>(e.u)) = e.w;
        }
        Eigen::VectorXd d(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) d[static_cast<Eigen::Index>(i)] = g.degree(i);
        const double c = 2.0 / (2.0 + mu);
        Eigen::MatrixXd M =
            Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                      static_cast<Eigen::Index>(n)) -
            c * d.array().pow(-sigma).matrix().asDiagonal() * W *
                d.array().pow(sigma - 1.0).matrix().asDiagonal();
        Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(n));
        Eigen::VectorXd f2 = (mu / (2.0 + mu)) * M.partialPivLu().solve(yv);

        for (std::size_t i = 0; i < n; ++i)
            CHECK(f1[i] == doctest::Approx(f2[static_cast<Eigen::Index>(i)]).epsilon(1e-8));
    }
}

TEST_CASE("ssl: monte-carlo agrees with exact argmax on nearly all nodes") {
    auto sample = sbm_graph(100, 2, 0.3, 0.05, RngStream(41, 0));
    auto labels = sample_labels(sample.classes, 10, RngStream(41, 1));
    auto exact = ssl_classify(sample.graph, labels, 1.0, 0.0, SslMethod::Exact, 1,
                              RngStream(41, 2), 1);
    auto bar = ssl_classify(sample.graph, labels, 1.0, 0.0, SslMethod::TreeMean, 10000,
                            RngStream(41, 2), 2);
    std::size_t agree = 0;
    for (std::size_t i = 0; i < 100; ++i) agree += exact.assignment[i] == bar.assignment[i];
    CHECK(agree >= 99);
}

TEST_CASE("ssl: label-free tree fraction brackets") {
    auto sample = sbm_graph(60, 2, 0.3, 0.1, RngStream(51, 0));

    auto none = sample_labels(sample.classes, 0, RngStream(51, 1));
    auto res0 = ssl_classify(sample.graph, none, 1.0, 0.0, SslMethod::TreeMean, 50,
                             RngStream(51, 2), 1);
    CHECK(res0.label_free_fraction == doctest::Approx(1.0));
    for (int a : res0.assignment) CHECK(a == 0); // all-zero scores tie to class 0
    CHECK(adjusted_rand_index(res0.assignment, sample.classes) == doctest::Approx(0.0));

    auto all = sample_labels(sample.classes, 30, RngStream(51, 3));
    auto res1 = ssl_classify(sample.graph, all, 1.0, 0.0, SslMethod::TreeMean, 50,
                             RngStream(51, 4), 1);
    CHECK(res1.label_free_fraction == doctest::Approx(0.0));
}

TEST_CASE("ssl: strong-community recovery with generous labels is near perfect") {
    SslExperimentParams params;
    params.n = 300;
    params.p_in = 0.15;
    params.p_out = 0.01;
    params.m_grid = {40};
    params.n_forests = 300;
    params.realizations = 2;
    auto report = ssl_experiment(params, RngStream(61, 0), 2);
    CHECK(report.mean_ari_exact[0] > 0.9);
    CHECK(report.mean_ari_bar[0] > 0.8);
}

TEST_CASE("ssl experiment is deterministic") {
    SslExperimentParams params;
    params.n = 80;
    params.p_in = 0.2;
    params.p_out = 0.05;
    params.m_grid = {2, 8};
    params.n_forests = 100;
    params.realizations = 2;
    auto a = ssl_experiment(params, RngStream(71, 0), 1);
    auto b = ssl_experiment(params, RngStream(71, 0), 2);
    CHECK(a.ari_exact == b.ari_exact);
    CHECK(a.ari_tilde == b.ari_tilde);
    CHECK(a.ari_bar == b.ari_bar);
    CHECK(a.mean_label_free_fraction == b.mean_label_free_fraction);
}

TEST_CASE("scaling benchmark rows") {
    auto report = scaling_benchmark({2000, 8000}, 1.0, 2, RngStream(81, 0));
    REQUIRE(report.rows.size() == 2);
    for (const auto& row : report.rows) {
        CHECK(row.edges >= row.target_edges);
        CHECK(row.edges <= row.target_edges + 4 * static_cast<std::size_t>(
                                                    std::sqrt(row.target_edges) + 2));
        CHECK(row.walk_steps > 0);
        CHECK(row.wall_ms.size() == 2);
        CHECK(row.wall_ms_median >= 0.0);
    }
    CHECK(report.rows[1].walk_steps > report.rows[0].walk_steps);
}

TEST_CASE("reports serialize to json with the expected keys") {
    DenoiseParams params;
    params.q_grid = {1.0};
    params.gamma = 5.0;
    params.n_forests = 2;
    params.realizations = 1;
    auto clean = make_test_image(6, 6);
    auto report = denoise_experiment(clean, 6, 6, params, RngStream(91, 0), 1);
    nlohmann::json j = report;
    CHECK(j.contains("params"));
    CHECK(j.contains("psnr_bar"));
    CHECK(j["mean_psnr_bar"].size() == 1);

    SslExperimentParams sp;
    sp.n = 20;
    sp.p_in = 0.4;
    sp.p_out = 0.1;
    sp.m_grid = {2};
    sp.n_forests = 10;
    sp.realizations = 1;
    nlohmann::json js = ssl_experiment(sp, RngStream(92, 0), 1);
    CHECK(js.contains("ari_exact"));
    CHECK(js.contains("mean_label_free_fraction"));

    nlohmann::json jb = scaling_benchmark({500}, 1.0, 1, RngStream(93, 0));
    CHECK(jb["rows"].size() == 1);
    CHECK(jb["rows"][0].contains("walk_steps"));
}

TEST_SUITE_END();
