#ifndef BNKIT_RUNNER_HPP
#define BNKIT_RUNNER_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "bnkit/config.hpp"

namespace bnkit {

/// One experiment's outcome: the JSON summary that was written next to the
/// CSV artifacts, plus the artifact paths.
struct RunResult {
    nlohmann::json summary;
    std::vector<std::filesystem::path> artifacts;
};

RunResult run_cloud(const Config& cfg);
RunResult run_overlap(const Config& cfg);
RunResult run_decay(const Config& cfg);
RunResult run_gamma(const Config& cfg);
RunResult run_tail(const Config& cfg);
RunResult run_refine(const Config& cfg);
RunResult run_offdiag(const Config& cfg);
RunResult run_classical(const Config& cfg);
RunResult run_all(const Config& cfg);

/// Dispatch by subcommand name; throws std::invalid_argument for unknown names.
RunResult run_subcommand(const std::string& name, const Config& cfg);

}  // namespace bnkit

#endif
