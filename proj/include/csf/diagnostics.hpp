#pragma once
// Recorded per-run diagnostics and the post-run analyses built on them:
// energy-identity bookkeeping, decay bounds, and least-squares rate fits.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace csf {

struct DiagnosticsRow {
    double t = 0.0;
    double h2 = 0.0;        // squared L2 norm of the zero-mean field
    double v2 = 0.0;        // squared L2 norm of the gradient
    double cum_diss = 0.0;  // time integral of twice the curvature dissipation
    double cum_trunc = 0.0; // accumulated small-jump damping of v2
    std::uint64_t n_jumps = 0;
    double l1_dx = 0.0;     // L1 norm of u_x (filled only when enabled)
    double l1_dxx = 0.0;    // L1 norm of u_xx (filled only when enabled)
};

struct DiagnosticsSeries {
    bool has_l1 = false;
    std::vector<DiagnosticsRow> rows;
};

// Largest absolute defect of v2(t) + cum_diss(t) + cum_trunc(t) - v2(0) over
// the series.  Exact for the continuous flow; the recorded value shrinks at
// second order in the step size.
inline double energy_residual(const DiagnosticsSeries& s) {
    if (s.rows.empty()) throw std::invalid_argument("energy_residual: empty series");
    const double v2_0 = s.rows.front().v2;
    double worst = 0.0;
    for (const auto& r : s.rows)
        worst = std::max(worst, std::abs(r.v2 + r.cum_diss + r.cum_trunc - v2_0));
    return worst;
}

// First row (if any) whose v2 exceeds the previous row's by more than
// slack_abs.  The flow, the small-jump multiplier, and the jumps themselves
// are all nonexpansive in this norm, so any increase is a defect.
inline std::optional<double> v_monotonicity_violation(const DiagnosticsSeries& s,
                                                      double slack_abs) {
    for (std::size_t i = 1; i < s.rows.size(); ++i)
        if (s.rows[i].v2 > s.rows[i - 1].v2 + slack_abs) return s.rows[i].t;
    return std::nullopt;
}

// Decay rate guaranteed for h2 once v2(0) is known: k1 = 1 / (c1^2 (1 + v2_0))
// where c1 is the constant in |u|_L2 <= c1 |u_x|_L2 for zero-mean fields
// (c1 = 1/2 is valid on the unit torus; 1/(2 pi) would be sharp).
inline double h_decay_rate(double v2_0, double c1 = 0.5) {
    if (!(c1 > 0.0)) throw std::invalid_argument("h_decay_rate: c1 must be positive");
    return 1.0 / (c1 * c1 * (1.0 + v2_0));
}

// First time (if any) at which h2 breaks the bound h2(0) exp(-k1 t).
// rel_slack absorbs roundoff in the recorded norms.
inline std::optional<double> h_bound_violation(const DiagnosticsSeries& s,
                                               double c1 = 0.5,
                                               double rel_slack = 1e-6) {
    if (s.rows.empty()) throw std::invalid_argument("h_bound_violation: empty series");
    const double h2_0 = s.rows.front().h2;
    const double k1 = h_decay_rate(s.rows.front().v2, c1);
    for (const auto& r : s.rows) {
        const double bound = h2_0 * std::exp(-k1 * (r.t - s.rows.front().t));
        if (r.h2 > bound * (1.0 + rel_slack) + 1e-300) return r.t;
    }
    return std::nullopt;
}

struct W21Budget {
    double integral = 0.0; // trapezoid rule on the recorded l1_dxx^2 column
    double budget = 0.0;   // (1 + v2_0) v2_0, plus the stated relative slack
    bool ok = false;
};

// Checks the a-priori bound  integral of |u_xx|_L1^2 dt <= (1 + v2_0) v2_0.
// Requires the series to carry the L1 columns.
inline W21Budget w21_budget(const DiagnosticsSeries& s, double rel_slack = 1e-3) {
    if (!s.has_l1) throw std::invalid_argument("w21_budget: series lacks L1 columns");
    if (s.rows.size() < 2) throw std::invalid_argument("w21_budget: need at least two rows");
    W21Budget out;
    for (std::size_t i = 1; i < s.rows.size(); ++i) {
        const double dt = s.rows[i].t - s.rows[i - 1].t;
        const double a = s.rows[i - 1].l1_dxx, b = s.rows[i].l1_dxx;
        out.integral += 0.5 * dt * (a * a + b * b);
    }
    const double v2_0 = s.rows.front().v2;
    out.budget = (1.0 + v2_0) * v2_0 * (1.0 + rel_slack);
    out.ok = out.integral <= out.budget;
    return out;
}

struct DecayFit {
    double k0_hat = 0.0; // fitted exponential decay rate of v2
    double r2 = 0.0;     // coefficient of determination of the log-linear fit
    int n_rows = 0;      // rows that entered the fit
};

// Least-squares fit of log v2 against t over the trailing tail_fraction of
// the time window.  Needs at least ten rows with positive v2 in the tail.
inline DecayFit fit_decay(const DiagnosticsSeries& s, double tail_fraction = 0.5) {
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
        throw std::invalid_argument("fit_decay: tail_fraction must lie in (0, 1]");
    if (s.rows.empty()) throw std::invalid_argument("fit_decay: empty series");
    const double t0 = s.rows.front().t, t1 = s.rows.back().t;
    const double t_cut = t1 - tail_fraction * (t1 - t0);

    std::vector<double> ts, ys;
    for (const auto& r : s.rows) {
        if (r.t < t_cut) continue;
        if (!(r.v2 > 0.0)) throw std::invalid_argument("fit_decay: nonpositive v2 in fit window");
        ts.push_back(r.t);
        ys.push_back(std::log(r.v2));
    }
    if (ts.size() < 10) throw std::invalid_argument("fit_decay: fewer than 10 rows in fit window");

    const std::size_t n = ts.size();
    double mt = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) { mt += ts[i]; my += ys[i]; }
    mt /= double(n); my /= double(n);
    double stt = 0.0, sty = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dt = ts[i] - mt, dy = ys[i] - my;
        stt += dt * dt; sty += dt * dy; syy += dy * dy;
    }
    if (!(stt > 0.0)) throw std::invalid_argument("fit_decay: degenerate time column");

    DecayFit fit;
    fit.k0_hat = -sty / stt;
    fit.r2 = (syy > 0.0) ? (sty * sty) / (stt * syy) : 1.0;
    fit.n_rows = int(n);
    return fit;
}

} // namespace csf
