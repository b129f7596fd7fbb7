#pragma once

#include <string>
#include <vector>

#include "harmext/config.hpp"

namespace harmext {

// Exit-code contract: 0 success, 1 internal error, 2 non-analytic gate,
// 3 config error.
enum class ExitCode : int { Ok = 0, InternalError = 1, NotAnalyticGate = 2, BadConfig = 3 };

struct RunReport {
    nlohmann::json body;       // deterministic content (written to report.json)
    nlohmann::json timings;    // per-stage seconds (written to timings.json)
    std::vector<std::string> warnings;
    ExitCode exit_code = ExitCode::Ok;
};

// Executes the requested stages in the order compat -> analyze -> hilbert ->
// extend, writing report.json, timings.json and the per-stage CSV files into
// the output directory. The extension stage is attempted only when the
// compatibility verdict is not NotAnalytic.
RunReport run_job(const JobConfig& config);

}  // namespace harmext
