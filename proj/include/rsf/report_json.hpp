#pragma once

#include <json.hpp>

#include "rsf/pipelines.hpp"

namespace rsf {

// JSON views of the experiment reports. Non-finite values (e.g. infinite
// PSNR on an exact match) serialize as null.
void to_json(nlohmann::json& j, const DenoiseParams& p);
void to_json(nlohmann::json& j, const DenoiseReport& r);
void to_json(nlohmann::json& j, const SslExperimentParams& p);
void to_json(nlohmann::json& j, const SslReport& r);
void to_json(nlohmann::json& j, const BenchRow& r);
void to_json(nlohmann::json& j, const BenchReport& r);

} // namespace rsf
