#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "huecomp/crf.hpp"
#include "huecomp/fusion.hpp"
#include "huecomp/hueplane.hpp"
#include "huecomp/metrics.hpp"

namespace huecomp::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,   ///< bad arguments, unreadable or inconsistent inputs
    kSolver = 3,  ///< numerical failure
};

/// Every tunable of the pipeline. Defaults, then the --config file, then flags.
struct RunConfig {
    CrfSolveConfig crf;
    FusionWeights fusion;
    CompensateOptions compensate;
    HueDiffOptions metric;
    double render_gamma = 2.2;  ///< synthetic render curve and reference rendering
};

nlohmann::json to_json(const RunConfig& cfg);
/// Applies the keys present in `doc` on top of `base`; unknown keys are an error.
RunConfig apply_json(RunConfig base, const nlohmann::json& doc);

/// "0,0.5,-0.5,2,-2" or "0,±0.5,±2" (also "+-"). Result sorted ascending.
std::vector<double> parse_ev_list(std::string_view text);

/// Runs one command line (args exclude the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace huecomp::cli
