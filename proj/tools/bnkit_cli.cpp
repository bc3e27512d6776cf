#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bnkit/config.hpp"
#include "bnkit/io.hpp"
#include "bnkit/numerics.hpp"
#include "bnkit/runner.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;
constexpr int kExitNumerical = 4;

void print_diagnostic(const std::string& kind, const std::string& what) {
    nlohmann::json diag;
    diag["error"] = kind;
    diag["what"] = what;
    std::fprintf(stderr, "%s\n", diag.dump(2).c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"soft-photon cloud and infrared-scattering experiment runner"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
    int threads = -1;
    app.add_option("--config", config_path, "TOML configuration file");
    app.add_option("--out", out_dir, "output directory for CSV/JSON artifacts");
    app.add_option("--set", overrides, "override a config key (section.key=value)");
    app.add_option("--threads", threads, "worker threads for sweeps");

    const std::vector<std::string> names = {"cloud", "overlap", "decay",     "gamma", "tail",
                                            "refine", "offdiag", "classical", "all"};
    for (const auto& n : names) app.add_subcommand(n);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    bnkit::Config cfg;
    try {
        if (!config_path.empty()) cfg = bnkit::Config::from_file(config_path);
        for (const auto& o : overrides) cfg.set(o);
        if (!out_dir.empty()) cfg.set("run.out=" + out_dir);
        if (threads >= 0) cfg.set("run.threads=" + std::to_string(threads));
        cfg.validate();
    } catch (const std::exception& e) {
        print_diagnostic("invalid_config", e.what());
        return kExitConfig;
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        bnkit::RunResult result = bnkit::run_subcommand(sub, cfg);
        std::printf("%s\n", result.summary.dump(2).c_str());
        return 0;
    } catch (const bnkit::QuadratureToleranceError& e) {
        print_diagnostic("numerical_failure", e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        print_diagnostic("numerical_failure", e.what());
        return kExitNumerical;
    }
}
