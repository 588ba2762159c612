#pragma once
// Orchestration behind the command-line tool: run one path or an ensemble,
// render artifacts, write them, and fold recorded invariants into a verdict.

#include <exception>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "csf/config.hpp"
#include "csf/io.hpp"

namespace csf {

struct DriverOptions {
    std::string out_prefix; // artifacts land at <prefix>.<ext>; empty writes nothing
    bool emit_svg = false;
    bool check = false;     // caller maps a failed verdict onto the exit status
};

struct DriverOutcome {
    bool all_pass = true;
    std::string report;
};

inline DriverOutcome run_single(const SimConfig& cfg, const DriverOptions& opt) {
    const RunResult res = run(cfg);

    std::map<std::string, std::string> files;
    files["csv"] = series_csv(res.series);
    files["jumps"] = jumps_text(res.jumps);
    files["report"] = report_text(cfg, res);
    if (!res.snapshots.empty()) files["snapshots"] = snapshots_text(res.snapshots);
    if (opt.emit_svg) files["svg"] = svg_decay_plot(res.series, cfg.c1);

    if (!opt.out_prefix.empty()) {
        for (const auto& [ext, bytes] : files) write_text_file(opt.out_prefix + "." + ext, bytes);
        write_text_file(opt.out_prefix + ".manifest", manifest_text(cfg, res, files));
    }

    return {report_all_pass(files["report"]), files["report"]};
}

// Independent paths from per-path seeds derived off the master seed.  Workers
// only parallelize the integration; artifacts are rendered and written in
// path order, so outputs are identical for any worker count.
inline DriverOutcome run_ensemble(const SimConfig& cfg, int n_paths, int workers,
                                  const DriverOptions& opt) {
    if (n_paths < 1) throw ConfigError("paths must be at least 1");
    if (workers < 1) throw ConfigError("workers must be at least 1");

    std::vector<SimConfig> path_cfgs(std::size_t(n_paths), cfg);
    for (int i = 0; i < n_paths; ++i)
        path_cfgs[std::size_t(i)].seed = substream_seed(cfg.seed, kPathStreamBase + std::uint64_t(i));

    std::vector<RunResult> results(static_cast<std::size_t>(n_paths));
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    std::mutex err_mu;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < n_paths; i += workers) {
                try {
                    results[std::size_t(i)] = run(path_cfgs[std::size_t(i)]);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);

    std::map<std::string, std::string> files;
    double mean_h2 = 0.0, mean_v2 = 0.0;
    std::uint64_t total_jumps = 0;
    int n_fail = 0;
    std::ostringstream verdicts;
    for (int i = 0; i < n_paths; ++i) {
        const RunResult& r = results[std::size_t(i)];
        const std::string name = "p" + std::to_string(i) + ".csv";
        files[name] = series_csv(r.series);
        const std::string rep = report_text(path_cfgs[std::size_t(i)], r);
        if (!report_all_pass(rep)) {
            ++n_fail;
            verdicts << "path_failed = " << i << "\n";
        }
        mean_h2 += r.series.rows.back().h2;
        mean_v2 += r.series.rows.back().v2;
        total_jumps += r.jumps.size();
    }
    mean_h2 /= n_paths;
    mean_v2 /= n_paths;

    std::ostringstream report;
    report << "paths = " << n_paths << "\n";
    report << "paths_failed = " << n_fail << "\n";
    report << verdicts.str();
    report << "mean_final_h2 = " << detail::fmt_double(mean_h2) << "\n";
    report << "mean_final_v2 = " << detail::fmt_double(mean_v2) << "\n";
    report << "total_jumps = " << total_jumps << "\n";
    files["report"] = report.str();

    if (opt.emit_svg) files["svg"] = svg_decay_plot(results.front().series, cfg.c1);

    if (!opt.out_prefix.empty()) {
        for (const auto& [ext, bytes] : files) write_text_file(opt.out_prefix + "." + ext, bytes);
        write_text_file(opt.out_prefix + ".manifest",
                        manifest_text(cfg, results.front(), files));
    }

    return {n_fail == 0, report.str()};
}

} // namespace csf
