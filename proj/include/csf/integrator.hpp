#pragma once
// Jump-adapted time stepping.  Between jumps the state advances by Strang
// splitting: a half step of the exact small-jump multiplier, an SSP-RK3 step
// of the curvature drift, and another multiplier half step.  Jumps land on
// their exact arrival times and act as circle shifts.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csf/diagnostics.hpp"
#include "csf/dynamics.hpp"
#include "csf/errors.hpp"
#include "csf/levy.hpp"
#include "csf/spectral.hpp"

namespace csf {

struct InitSpec {
    enum class Preset { single_mode, two_mode, random_smooth };
    Preset preset = Preset::single_mode;
    int k = 1;              // wavenumber for the mode presets
    double amplitude = 1.0; // peak amplitude (mode presets) or coefficient scale
    double decay = 2.0;     // spectral decay exponent for random_smooth
    std::uint64_t seed = 1; // phase seed for random_smooth

    SpectralField build(int n_modes) const {
        switch (preset) {
            case Preset::single_mode:   return make_single_mode(n_modes, k, amplitude);
            case Preset::two_mode:      return make_two_mode(n_modes, k, amplitude);
            case Preset::random_smooth: return make_random_smooth(n_modes, decay, seed, amplitude);
        }
        throw ConfigError("unknown initial-condition preset");
    }
};

struct SimConfig {
    int n_modes = 64;
    double T = 1.0;
    double dt_max = 1e-3;
    double epsilon = 1.0;     // jump amplitude multiplier (zero disables transport)
    double delta = 0.1;       // small-jump cutoff: |z| <= delta runs in the multiplier
    LevyMeasureSpec measure;
    InitSpec init;
    std::uint64_t seed = 0;
    int record_every = 10;    // record a diagnostics row every this many flow steps
    bool drift_enabled = true;
    double c_stab = 0.4;      // explicit-step safety factor against the stiffest mode
    bool record_l1 = false;   // also record L1 norms of u_x and u_xx
    double c1 = 0.5;          // embedding constant used for the decay-bound overlay
    double tail_fraction = 0.5; // trailing window used by the decay-rate fit
    int snapshots = 0;        // physical-space snapshots, equally spaced over [0, T]
};

inline void validate(const SimConfig& c) {
    if (c.n_modes < 1) throw ConfigError("n_modes must be at least 1");
    if (!(c.T > 0.0)) throw ConfigError("T must be positive");
    if (!(c.dt_max > 0.0)) throw ConfigError("dt_max must be positive");
    if (c.epsilon < 0.0) throw ConfigError("epsilon must be positive");
    if (!(c.delta > 0.0 && c.delta <= 1.0)) throw ConfigError("delta must lie in (0, 1]");
    if (c.record_every < 1) throw ConfigError("record_every must be at least 1");
    if (!(c.c_stab > 0.0)) throw ConfigError("c_stab must be positive");
    if (!(c.c1 > 0.0)) throw ConfigError("c1 must be positive");
    if (!(c.tail_fraction > 0.0 && c.tail_fraction <= 1.0))
        throw ConfigError("tail_fraction must lie in (0, 1]");
    if (c.snapshots < 0) throw ConfigError("snapshots must be nonnegative");
    if (!(c.init.amplitude >= 0.0) || !std::isfinite(c.init.amplitude))
        throw ConfigError("init.amplitude must be finite and nonnegative");
    if (c.init.k < 1) throw ConfigError("init.k must be at least 1");
    if (auto why = validate(c.measure)) throw ConfigError(*why);
}

// Explicit-step limit: the drift linearizes to the heat equation near flat
// states, so the stiffest retained mode fixes the step.
inline double stable_dt(int n_modes, double dt_max, double c_stab = 0.4) {
    const double k_max = two_pi * n_modes;
    return std::min(dt_max, c_stab / (k_max * k_max));
}

struct TrajectoryState {
    SpectralField u;
    double t = 0.0;
    double cum_diss = 0.0;
    double cum_trunc = 0.0;
    std::uint64_t n_jumps = 0;
};

namespace detail {

inline SpectralField axpby(double a, const SpectralField& x, double b, const SpectralField& y) {
    SpectralField out = make_field(int(x.c.size()));
    for (std::size_t i = 0; i < x.c.size(); ++i) out.c[i] = a * x.c[i] + b * y.c[i];
    return out;
}

// Shu-Osher form of third-order strong-stability-preserving Runge-Kutta.
inline void ssp_rk3(SpectralField& u, double dt) {
    SpectralField u1 = axpby(1.0, u, dt, csf_drift(u));
    SpectralField u2 = axpby(0.75, u, 0.25, axpby(1.0, u1, dt, csf_drift(u1)));
    u = axpby(1.0 / 3.0, u, 2.0 / 3.0, axpby(1.0, u2, dt, csf_drift(u2)));
}

inline bool finite(const SpectralField& f) {
    for (const auto& c : f.c)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

} // namespace detail

// One Strang-split flow step of length dt.  Accumulates the dissipation
// integral by the trapezoid rule on the step endpoints and the small-jump
// damping from the mid-step state.
inline void step_flow(TrajectoryState& s, double dt, const std::vector<cplx>& D,
                      bool drift_enabled = true) {
    const double diss0 = drift_enabled ? dissipation_discrete(s.u) : 0.0;
    apply_multiplier_exact(s.u, D, 0.5 * dt);
    if (drift_enabled) detail::ssp_rk3(s.u, dt);
    s.cum_trunc += dt * trunc_dissipation_rate(s.u, D);
    apply_multiplier_exact(s.u, D, 0.5 * dt);
    if (drift_enabled) {
        const double diss1 = dissipation_discrete(s.u);
        s.cum_diss += dt * (diss0 + diss1); // twice the trapezoid average
    }
    s.t += dt;
    if (!detail::finite(s.u)) throw BlowupError(s.t);
}

// A jump of size z shifts the profile by epsilon * z; exact in spectral form.
inline void apply_jump(TrajectoryState& s, const JumpEvent& e, double epsilon) {
    s.u = shift(s.u, epsilon * e.z);
    s.t = e.t;
    s.n_jumps += 1;
}

struct Snapshot {
    double t = 0.0;
    PhysicalField field;
};

struct RunResult {
    DiagnosticsSeries series;
    SpectralField final_state;
    std::vector<JumpEvent> jumps;
    std::vector<Snapshot> snapshots;
    SmallMoments moments;   // small-jump moments at the configured cutoff
    double dt_used = 0.0;   // flow step actually taken between events
    std::uint64_t n_steps = 0;
};

// Integrates one path over [0, T].  The jump sequence is drawn up front, the
// flow is stepped with substeps shortened to land exactly on each arrival,
// and a diagnostics row is recorded at t = 0, after every jump, every
// record_every flow steps, and at t = T.
inline RunResult run(const SimConfig& cfg) {
    validate(cfg);

    RunResult out;
    out.jumps = sample_jumps(cfg.measure, cfg.delta, cfg.T, cfg.seed);
    out.moments = small_moments(cfg.measure, cfg.delta);
    out.dt_used = stable_dt(cfg.n_modes, cfg.dt_max, cfg.c_stab);

    const std::vector<cplx> D = compensator(cfg.measure, cfg.epsilon, cfg.delta, cfg.n_modes);

    TrajectoryState s;
    s.u = cfg.init.build(cfg.n_modes);

    out.series.has_l1 = cfg.record_l1;
    auto record = [&] {
        DiagnosticsRow r;
        r.t = s.t;
        r.h2 = norm_H2(s.u);
        r.v2 = norm_V2(s.u);
        r.cum_diss = s.cum_diss;
        r.cum_trunc = s.cum_trunc;
        r.n_jumps = s.n_jumps;
        if (cfg.record_l1) {
            r.l1_dx = norm_L1_dx(s.u);
            r.l1_dxx = norm_L1_dxx(s.u);
        }
        out.series.rows.push_back(r);
    };

    std::vector<double> snap_times;
    if (cfg.snapshots == 1) snap_times.push_back(cfg.T);
    else
        for (int i = 0; i < cfg.snapshots; ++i)
            snap_times.push_back(cfg.T * double(i) / double(cfg.snapshots - 1));
    std::size_t next_snap = 0;
    auto take_snapshots = [&] {
        while (next_snap < snap_times.size() &&
               s.t >= snap_times[next_snap] - 1e-12 * std::max(1.0, cfg.T)) {
            out.snapshots.push_back({s.t, to_physical(s.u)});
            ++next_snap;
        }
    };

    record();
    take_snapshots();

    int since_record = 0;
    auto advance_to = [&](double target) {
        const double tiny = 1e-12 * std::max(1.0, std::abs(target));
        while (target - s.t > tiny) {
            const double rem = target - s.t;
            const double dt = (rem <= out.dt_used * (1.0 + 1e-9)) ? rem : out.dt_used;
            step_flow(s, dt, D, cfg.drift_enabled);
            out.n_steps += 1;
            const bool landed = (target - s.t <= tiny);
            if (landed) s.t = target;
            if (!landed && ++since_record >= cfg.record_every) {
                record();
                since_record = 0;
            }
            take_snapshots();
        }
        s.t = target;
    };

    for (const auto& e : out.jumps) {
        advance_to(e.t);
        apply_jump(s, e, cfg.epsilon);
        record();
        since_record = 0;
        take_snapshots();
    }
    advance_to(cfg.T);
    if (out.series.rows.back().t < cfg.T - 1e-12 * std::max(1.0, cfg.T)) record();
    take_snapshots();

    out.final_state = s.u;
    return out;
}

} // namespace csf
