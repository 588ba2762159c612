#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "csf/diagnostics.hpp"
#include "csf/integrator.hpp"

using namespace csf;

namespace {

DiagnosticsSeries synthetic_decay(double v2_0, double rate, double T, int n_rows,
                                  double wobble = 0.0) {
    DiagnosticsSeries s;
    for (int i = 0; i < n_rows; ++i) {
        DiagnosticsRow r;
        r.t = T * double(i) / double(n_rows - 1);
        r.v2 = v2_0 * std::exp(-rate * r.t) * (1.0 + wobble * std::sin(50.0 * r.t));
        r.h2 = 0.25 * r.v2;
        s.rows.push_back(r);
    }
    return s;
}

} // namespace

TEST_CASE("decay fit recovers an exact exponential", "[diagnostics]") {
    const DiagnosticsSeries s = synthetic_decay(5.0, 3.0, 1.0, 101);
    const DecayFit fit = fit_decay(s, 0.5);
    REQUIRE(std::abs(fit.k0_hat - 3.0) < 1e-9);
    REQUIRE(fit.r2 > 1.0 - 1e-12);
    REQUIRE(fit.n_rows == 51); // rows with t >= 0.5
}

TEST_CASE("decay fit tolerates small multiplicative wobble", "[diagnostics]") {
    const DiagnosticsSeries s = synthetic_decay(5.0, 3.0, 1.0, 201, 0.01);
    const DecayFit fit = fit_decay(s, 0.5);
    REQUIRE(std::abs(fit.k0_hat - 3.0) < 0.05);
    REQUIRE(fit.r2 > 0.99);
}

TEST_CASE("decay fit rejects unusable input", "[diagnostics]") {
    REQUIRE_THROWS_AS(fit_decay(DiagnosticsSeries{}, 0.5), std::invalid_argument);

    const DiagnosticsSeries short_series = synthetic_decay(5.0, 3.0, 1.0, 12);
    REQUIRE_THROWS_AS(fit_decay(short_series, 0.25), std::invalid_argument); // 3 tail rows

    DiagnosticsSeries bad = synthetic_decay(5.0, 3.0, 1.0, 101);
    bad.rows[80].v2 = 0.0;
    REQUIRE_THROWS_AS(fit_decay(bad, 0.5), std::invalid_argument);

    const DiagnosticsSeries ok = synthetic_decay(5.0, 3.0, 1.0, 101);
    REQUIRE_THROWS_AS(fit_decay(ok, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(fit_decay(ok, 1.5), std::invalid_argument);
}

TEST_CASE("energy residual picks the worst row defect", "[diagnostics]") {
    DiagnosticsSeries s;
    s.rows.push_back({0.0, 0.0, 2.0, 0.0, 0.0, 0});
    s.rows.push_back({0.1, 0.0, 1.25, 0.5, 0.25, 0});     // closes exactly
    s.rows.push_back({0.2, 0.0, 1.0, 0.875, 0.0625, 0});  // defect -0.0625
    REQUIRE(energy_residual(s) == 0.0625);

    REQUIRE_THROWS_AS(energy_residual(DiagnosticsSeries{}), std::invalid_argument);
}

TEST_CASE("v2 monotonicity violations are located", "[diagnostics]") {
    DiagnosticsSeries s;
    s.rows.push_back({0.0, 0.0, 3.0, 0.0, 0.0, 0});
    s.rows.push_back({0.1, 0.0, 2.5, 0.0, 0.0, 0});
    s.rows.push_back({0.2, 0.0, 2.5 + 1e-9, 0.0, 0.0, 0}); // inside slack
    s.rows.push_back({0.3, 0.0, 2.6, 0.0, 0.0, 0});        // real increase

    const auto hit = v_monotonicity_violation(s, 1e-8);
    REQUIRE(hit.has_value());
    REQUIRE(*hit == 0.3);
    REQUIRE(!v_monotonicity_violation(s, 1.0).has_value());
}

TEST_CASE("guaranteed decay rate follows 1/(c1^2 (1 + v2))", "[diagnostics]") {
    REQUIRE(h_decay_rate(0.0) == 4.0);
    REQUIRE(h_decay_rate(3.0, 0.5) == 1.0);
    REQUIRE(h_decay_rate(1.0, 1.0) == 0.5);
    REQUIRE_THROWS_AS(h_decay_rate(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("decay bound flags the first offending row", "[diagnostics]") {
    DiagnosticsSeries good = synthetic_decay(4.0, 9.0, 1.0, 51);
    // v2(0) = 4 gives k1 = 1/(0.25 * 5) = 0.8; actual decay at rate 9 passes
    REQUIRE(!h_bound_violation(good, 0.5).has_value());

    DiagnosticsSeries flat;
    flat.rows.push_back({0.0, 1.0, 4.0, 0.0, 0.0, 0});
    flat.rows.push_back({0.5, 1.0, 4.0, 0.0, 0.0, 0}); // no decay at all
    const auto hit = h_bound_violation(flat, 0.5);
    REQUIRE(hit.has_value());
    REQUIRE(*hit == 0.5);

    REQUIRE_THROWS_AS(h_bound_violation(DiagnosticsSeries{}, 0.5), std::invalid_argument);
}

TEST_CASE("second-derivative budget integrates the recorded column", "[diagnostics]") {
    DiagnosticsSeries s;
    s.has_l1 = true;
    for (int i = 0; i <= 10; ++i) {
        DiagnosticsRow r;
        r.t = 0.1 * i;
        r.v2 = (i == 0) ? 1.0 : 0.5;
        r.l1_dxx = 0.5;
        s.rows.push_back(r);
    }
    const W21Budget b = w21_budget(s);
    REQUIRE(std::abs(b.integral - 0.25) < 1e-12);
    REQUIRE(std::abs(b.budget - 2.0 * 1.001) < 1e-12);
    REQUIRE(b.ok);

    for (auto& r : s.rows) r.l1_dxx = 2.0; // integral 4 > budget
    REQUIRE(!w21_budget(s).ok);

    DiagnosticsSeries no_l1 = s;
    no_l1.has_l1 = false;
    REQUIRE_THROWS_AS(w21_budget(no_l1), std::invalid_argument);

    DiagnosticsSeries stub;
    stub.has_l1 = true;
    stub.rows.push_back({});
    REQUIRE_THROWS_AS(w21_budget(stub), std::invalid_argument);
}

TEST_CASE("deterministic run satisfies every recorded bound", "[diagnostics]") {
    SimConfig cfg;
    cfg.n_modes = 32;
    cfg.T = 0.3;
    cfg.dt_max = 1e-3;
    cfg.init = {InitSpec::Preset::two_mode, 1, 0.5, 2.0, 1};
    cfg.record_every = 20;
    cfg.record_l1 = true;

    const RunResult res = run(cfg);
    const auto& s = res.series;
    const double v2_0 = s.rows.front().v2;

    REQUIRE(!v_monotonicity_violation(s, 1e-8 * v2_0).has_value());
    REQUIRE(!h_bound_violation(s, 0.5).has_value());
    REQUIRE(w21_budget(s).ok);

    // the tail is pure lowest-mode heat decay
    const DecayFit fit = fit_decay(s, 0.5);
    REQUIRE(std::abs(fit.k0_hat - 8.0 * pi * pi) / (8.0 * pi * pi) < 0.05);
    REQUIRE(fit.k0_hat > h_decay_rate(v2_0));
}
