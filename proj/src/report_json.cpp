#include "rsf/report_json.hpp"

namespace rsf {

void to_json(nlohmann::json& j, const DenoiseParams& p) {
    j = nlohmann::json{{"q_grid", p.q_grid},
                       {"gamma", p.gamma},
                       {"n_forests", p.n_forests},
                       {"realizations", p.realizations},
                       {"max_value", p.max_value}};
}

void to_json(nlohmann::json& j, const DenoiseReport& r) {
    j = nlohmann::json{{"params", r.params},
                       {"rows", r.rows},
                       {"cols", r.cols},
                       {"psnr_noisy", r.psnr_noisy},
                       {"psnr_exact", r.psnr_exact},
                       {"psnr_tilde", r.psnr_tilde},
                       {"psnr_bar", r.psnr_bar},
                       {"mean_psnr_noisy", r.mean_psnr_noisy},
                       {"mean_psnr_exact", r.mean_psnr_exact},
                       {"mean_psnr_tilde", r.mean_psnr_tilde},
                       {"mean_psnr_bar", r.mean_psnr_bar}};
}

void to_json(nlohmann::json& j, const SslExperimentParams& p) {
    j = nlohmann::json{{"n", p.n},
                       {"k", p.k},
                       {"p_in", p.p_in},
                       {"p_out", p.p_out},
                       {"m_grid", p.m_grid},
                       {"n_forests", p.n_forests},
                       {"mu", p.mu},
                       {"sigma", p.sigma},
                       {"realizations", p.realizations}};
}

void to_json(nlohmann::json& j, const SslReport& r) {
    j = nlohmann::json{{"params", r.params},
                       {"ari_exact", r.ari_exact},
                       {"ari_tilde", r.ari_tilde},
                       {"ari_bar", r.ari_bar},
                       {"mean_ari_exact", r.mean_ari_exact},
                       {"mean_ari_tilde", r.mean_ari_tilde},
                       {"mean_ari_bar", r.mean_ari_bar},
                       {"mean_label_free_fraction", r.mean_label_free_fraction},
                       {"isolated_nodes", r.isolated_nodes}};
}

void to_json(nlohmann::json& j, const BenchRow& r) {
    j = nlohmann::json{{"target_edges", r.target_edges},
                       {"nodes", r.nodes},
                       {"edges", r.edges},
                       {"walk_steps", r.walk_steps},
                       {"wall_ms", r.wall_ms},
                       {"wall_ms_median", r.wall_ms_median}};
}

void to_json(nlohmann::json& j, const BenchReport& r) {
    j = nlohmann::json{{"q", r.q}, {"repeats", r.repeats}, {"rows", r.rows}};
}

} // namespace rsf
