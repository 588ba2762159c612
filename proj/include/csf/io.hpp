#pragma once
// Output writers.  Every artifact is rendered to a string first so the
// manifest can checksum the exact bytes on disk.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "csf/config.hpp"
#include "csf/diagnostics.hpp"
#include "csf/errors.hpp"
#include "csf/integrator.hpp"
#include "csf/version.hpp"

namespace csf {

inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex16(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(content.data(), std::streamsize(content.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

inline std::string series_csv(const DiagnosticsSeries& s) {
    std::ostringstream out;
    out << "t,H2,V2,cum_diss,cum_trunc,n_jumps";
    if (s.has_l1) out << ",L1dx,L1dxx";
    out << "\n";
    for (const auto& r : s.rows) {
        out << detail::fmt_double(r.t) << ',' << detail::fmt_double(r.h2) << ','
            << detail::fmt_double(r.v2) << ',' << detail::fmt_double(r.cum_diss) << ','
            << detail::fmt_double(r.cum_trunc) << ',' << r.n_jumps;
        if (s.has_l1) out << ',' << detail::fmt_double(r.l1_dx) << ',' << detail::fmt_double(r.l1_dxx);
        out << "\n";
    }
    return out.str();
}

inline std::string jumps_text(const std::vector<JumpEvent>& jumps) {
    std::ostringstream out;
    out << "t z\n";
    for (const auto& e : jumps)
        out << detail::fmt_double(e.t) << ' ' << detail::fmt_double(e.z) << "\n";
    return out.str();
}

inline std::string snapshots_text(const std::vector<Snapshot>& snaps) {
    std::ostringstream out;
    for (const auto& s : snaps) {
        out << "# t=" << detail::fmt_double(s.t) << "\n";
        const std::size_t m = s.field.samples.size();
        for (std::size_t i = 0; i < m; ++i)
            out << detail::fmt_double(double(i) / double(m)) << ' '
                << detail::fmt_double(s.field.samples[i]) << "\n";
    }
    return out.str();
}

// Pass/fail summary of the recorded invariants plus the decay fit.
inline std::string report_text(const SimConfig& cfg, const RunResult& res) {
    const auto& s = res.series;
    const double v2_0 = s.rows.front().v2;
    std::ostringstream out;
    out << "v2_initial = " << detail::fmt_double(v2_0) << "\n";
    out << "v2_final = " << detail::fmt_double(s.rows.back().v2) << "\n";
    out << "h2_initial = " << detail::fmt_double(s.rows.front().h2) << "\n";
    out << "h2_final = " << detail::fmt_double(s.rows.back().h2) << "\n";
    out << "n_jumps = " << res.jumps.size() << "\n";
    out << "n_steps = " << res.n_steps << "\n";
    out << "dt_used = " << detail::fmt_double(res.dt_used) << "\n";
    out << "energy_residual = " << detail::fmt_double(energy_residual(s)) << "\n";

    const auto mono = v_monotonicity_violation(s, 1e-8 * v2_0);
    out << "v2_monotone = " << (mono ? "fail" : "pass") << "\n";
    if (mono) out << "v2_monotone_first_violation_t = " << detail::fmt_double(*mono) << "\n";

    const double k1 = h_decay_rate(v2_0, cfg.c1);
    out << "k1_bound = " << detail::fmt_double(k1) << "\n";
    const auto hviol = h_bound_violation(s, cfg.c1);
    out << "h2_decay_bound = " << (hviol ? "fail" : "pass") << "\n";
    if (hviol) out << "h2_decay_bound_first_violation_t = " << detail::fmt_double(*hviol) << "\n";

    if (s.has_l1) {
        const W21Budget b = w21_budget(s);
        out << "w21_integral = " << detail::fmt_double(b.integral) << "\n";
        out << "w21_budget = " << detail::fmt_double(b.budget) << "\n";
        out << "w21_within_budget = " << (b.ok ? "pass" : "fail") << "\n";
    }

    try {
        const DecayFit fit = fit_decay(s, cfg.tail_fraction);
        out << "k0_hat = " << detail::fmt_double(fit.k0_hat) << "\n";
        out << "fit_r2 = " << detail::fmt_double(fit.r2) << "\n";
        out << "fit_rows = " << fit.n_rows << "\n";
    } catch (const std::invalid_argument& e) {
        out << "decay_fit = skipped (" << e.what() << ")\n";
    }
    return out.str();
}

// True when every invariant the report checks came out "pass".
inline bool report_all_pass(const std::string& report) {
    return report.find("= fail") == std::string::npos;
}

inline std::string manifest_text(const SimConfig& cfg, const RunResult& res,
                                 const std::map<std::string, std::string>& file_bytes) {
    std::ostringstream out;
    out << "tool = csfsim " << kVersion << "\n";
    out << "small_jump_b = " << detail::fmt_double(res.moments.b) << "\n";
    out << "small_jump_s2 = " << detail::fmt_double(res.moments.s2) << "\n";
    out << "rows = " << res.series.rows.size() << "\n";
    for (const auto& [name, bytes] : file_bytes)
        out << "checksum." << name << " = " << hex16(fnv1a64(bytes)) << "\n";
    std::istringstream cfg_lines(serialize_config(cfg));
    std::string line;
    while (std::getline(cfg_lines, line)) out << "config." << line << "\n";
    return out.str();
}

// Log-scale decay plot of the recorded norms with the guaranteed-rate
// reference line exp(-k1 t) anchored at h2(0).
inline std::string svg_decay_plot(const DiagnosticsSeries& s, double c1 = 0.5) {
    if (s.rows.size() < 2) throw IoError("svg plot needs at least two rows");
    const double w = 720.0, h = 480.0, ml = 70.0, mr = 20.0, mt = 20.0, mb = 50.0;
    const double t0 = s.rows.front().t, t1 = s.rows.back().t;
    const double k1 = h_decay_rate(s.rows.front().v2, c1);

    double lo = 0.0, hi = 0.0;
    bool first = true;
    auto see = [&](double v) {
        if (v <= 0.0) return;
        const double lg = std::log10(v);
        if (first) { lo = hi = lg; first = false; }
        else { lo = std::min(lo, lg); hi = std::max(hi, lg); }
    };
    for (const auto& r : s.rows) { see(r.h2); see(r.v2); }
    see(s.rows.front().h2 * std::exp(-k1 * (t1 - t0)));
    if (first) throw IoError("svg plot: no positive data");
    if (hi - lo < 1e-12) { hi += 0.5; lo -= 0.5; }

    auto x_of = [&](double t) { return ml + (t - t0) / (t1 - t0) * (w - ml - mr); };
    auto y_of = [&](double v) {
        return mt + (hi - std::log10(v)) / (hi - lo) * (h - mt - mb);
    };
    auto polyline = [&](auto value_of, const char* color, const char* dash) {
        std::ostringstream p;
        p << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
        if (dash[0]) p << " stroke-dasharray=\"" << dash << "\"";
        p << " points=\"";
        for (const auto& r : s.rows) {
            const double v = value_of(r);
            if (v <= 0.0) continue;
            p << detail::fmt_double(x_of(r.t)) << ',' << detail::fmt_double(y_of(v)) << ' ';
        }
        p << "\"/>\n";
        return p.str();
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << (h - mb) << "\" x2=\"" << (w - mr)
        << "\" y2=\"" << (h - mb) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << (h - mb) << "\" stroke=\"black\"/>\n";
    out << polyline([](const DiagnosticsRow& r) { return r.h2; }, "#1f77b4", "");
    out << polyline([](const DiagnosticsRow& r) { return r.v2; }, "#d62728", "");
    {
        const double h2_0 = s.rows.front().h2;
        out << "<polyline fill=\"none\" stroke=\"#555555\" stroke-width=\"1\" "
               "stroke-dasharray=\"6,4\" points=\"";
        for (const auto& r : s.rows) {
            const double v = h2_0 * std::exp(-k1 * (r.t - t0));
            if (v <= 0.0) continue;
            out << detail::fmt_double(x_of(r.t)) << ',' << detail::fmt_double(y_of(v)) << ' ';
        }
        out << "\"/>\n";
    }
    out << "<text x=\"" << (w / 2) << "\" y=\"" << (h - 12)
        << "\" text-anchor=\"middle\" font-size=\"13\">t</text>\n";
    out << "<text x=\"18\" y=\"" << (h / 2)
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
        << (h / 2) << ")\">log10 squared norm</text>\n";
    out << "<text x=\"" << (w - mr - 220) << "\" y=\"" << (mt + 16)
        << "\" font-size=\"12\" fill=\"#1f77b4\">H2</text>\n";
    out << "<text x=\"" << (w - mr - 180) << "\" y=\"" << (mt + 16)
        << "\" font-size=\"12\" fill=\"#d62728\">V2</text>\n";
    out << "<text x=\"" << (w - mr - 140) << "\" y=\"" << (mt + 16)
        << "\" font-size=\"12\" fill=\"#555555\">h2(0) exp(-k1 t)</text>\n";
    out << "</svg>\n";
    return out.str();
}

} // namespace csf
