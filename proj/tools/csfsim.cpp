// Command-line front end: one path or an ensemble from a config file.
// Exit codes: 0 success, 2 bad configuration, 3 blow-up, 4 write failure.

#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "csf/driver.hpp"
#include "csf/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"stochastic curve-shortening flow on the torus"};
    app.set_version_flag("--version", std::string("csfsim ") + csf::kVersion);

    std::string config_path;
    std::string out_prefix;
    std::optional<std::uint64_t> seed_override;
    int paths = 1;
    int workers = 1;
    bool emit_svg = false;
    bool check = false;

    app.add_option("--config", config_path, "configuration file")->required();
    app.add_option("--out", out_prefix, "output path prefix (no files when omitted)");
    app.add_option("--seed", seed_override, "override the config seed");
    app.add_option("--paths", paths, "number of independent paths")->check(CLI::PositiveNumber);
    app.add_option("--workers", workers, "worker threads for ensembles")->check(CLI::PositiveNumber);
    app.add_flag("--emit-svg", emit_svg, "also write a decay plot");
    app.add_flag("--check", check, "exit nonzero when a recorded invariant fails");

    CLI11_PARSE(app, argc, argv);

    try {
        csf::SimConfig cfg = csf::load_config(config_path);
        if (seed_override) cfg.seed = *seed_override;

        csf::DriverOptions opt;
        opt.out_prefix = out_prefix;
        opt.emit_svg = emit_svg;
        opt.check = check;

        const csf::DriverOutcome outcome =
            paths == 1 ? csf::run_single(cfg, opt)
                       : csf::run_ensemble(cfg, paths, workers, opt);

        std::fputs(outcome.report.c_str(), stdout);
        if (check && !outcome.all_pass) {
            std::fputs("check: an invariant failed\n", stderr);
            return 1;
        }
        return 0;
    } catch (const csf::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const csf::BlowupError& e) {
        std::fprintf(stderr, "blow-up: %s\n", e.what());
        return 3;
    } catch (const csf::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
