#pragma once
// Continuous part of the dynamics: the curve-shortening drift, its dissipation
// functional, and the Fourier-multiplier compensator of sub-threshold jumps.

#include "csf/levy.hpp"
#include "csf/spectral.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace csf {

// A(u) = d/dx arctan(u_x) = u_xx / (1 + u_x^2), evaluated pseudo-spectrally:
// synthesize u_x on the oversampled grid, take arctan pointwise, analyze back
// and differentiate in Fourier space, keeping modes 1..N.
inline SpectralField csf_drift(const SpectralField& f) {
    auto ux = to_physical(derivative(f), dealias_grid(f.n_modes()));
    for (auto& v : ux.samples) v = std::atan(v);
    return derivative(to_spectral(ux, f.n_modes()));
}

// integral of u_xx^2 / (1 + u_x^2) dx, the instantaneous V-norm loss rate / 2.
inline double dissipation(const SpectralField& f) {
    const int M = dealias_grid(f.n_modes());
    const auto ux = to_physical(derivative(f), M);
    const auto uxx = to_physical(derivative(derivative(f)), M);
    double s = 0.0;
    for (int j = 0; j < M; ++j) {
        const double a = ux.samples[static_cast<std::size_t>(j)];
        const double b = uxx.samples[static_cast<std::size_t>(j)];
        s += b * b / (1.0 + a * a);
    }
    return s / static_cast<double>(M);
}

// The v2 dissipation of the dealiased semi-discrete system itself:
// -(grid mean of u_xxx arctan(u_x)) on the grid the drift is evaluated on.
// By the discrete Parseval identity this equals -1/2 dV2/dt of the integrated
// equations exactly, so the recorded energy ledger closes to pure
// time-discretization error; it approaches dissipation(f) as the spectral
// tail of 1/(1 + u_x^2) dies out.
inline double dissipation_discrete(const SpectralField& f) {
    const int M = dealias_grid(f.n_modes());
    const auto ux = to_physical(derivative(f), M);
    const auto uxxx = to_physical(derivative(derivative(derivative(f))), M);
    double s = 0.0;
    for (int j = 0; j < M; ++j)
        s += uxxx.samples[static_cast<std::size_t>(j)] *
             std::atan(ux.samples[static_cast<std::size_t>(j)]);
    return -s / static_cast<double>(M);
}

namespace detail {

// e^{ix} - 1 - ix with uniform relative accuracy: the real part via the
// half-angle identity, the imaginary part via its Taylor series once direct
// subtraction of sin(x) - x would cancel.
inline cplx expi_m1_mix(double x) {
    const double s = std::sin(0.5 * x);
    double im;
    if (std::abs(x) < 0.25) {
        const double x2 = x * x;
        im = x * x2 * (-1.0 / 6.0 + x2 * (1.0 / 120.0 + x2 * (-1.0 / 5040.0 + x2 / 362880.0)));
    } else {
        im = std::sin(x) - x;
    }
    return cplx{-2.0 * s * s, im};
}

// Adaptive Simpson to absolute tolerance; throws if the recursion bottoms out
// before the local error estimate is met.
template <typename F>
cplx adaptive_simpson(const F& f, double a, double b, cplx fa, cplx fm, cplx fb, cplx whole,
                      double tol, int depth) {
    const double m = 0.5 * (a + b);
    const cplx flm = f(0.5 * (a + m));
    const cplx frm = f(0.5 * (m + b));
    const cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const cplx delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0)
        throw std::runtime_error("compensator quadrature did not converge");
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
cplx adaptive_simpson(const F& f, double a, double b, double tol) {
    if (b <= a) return cplx{0.0, 0.0};
    const cplx fa = f(a);
    const cplx fm = f(0.5 * (a + b));
    const cplx fb = f(b);
    const cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 64);
}

} // namespace detail

// Per-mode drift multipliers D_k, k = 1..N, of the compensated dynamics:
//
//   D_k = -2 pi i k eps b(delta)
//         + integral over |z| <= delta of (e^{2 pi i k eps z} - 1 - 2 pi i k eps z) nu(dz).
//
// The first piece undoes the mean transport of realized jumps in (delta, 1];
// the second absorbs sub-threshold jumps at multiplier level. Re(D_k) <= 0
// always, so the exact exponential substep never amplifies a mode.
inline std::vector<cplx> compensator(const LevyMeasureSpec& m, double eps, double delta,
                                     int n_modes) {
    if (auto err = validate(m)) throw std::invalid_argument(*err);
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0, 1]");
    if (eps < 0.0) throw std::invalid_argument("epsilon must be nonnegative");
    if (n_modes < 1) throw std::invalid_argument("n_modes must be >= 1");

    const double b = small_moments(m, delta).b;
    std::vector<cplx> D(static_cast<std::size_t>(n_modes));
    for (int k = 1; k <= n_modes; ++k) {
        const double theta = two_pi * k * eps;
        cplx corr{0.0, 0.0};
        for (const auto& a : m.atoms)
            if (std::abs(a.z) <= delta) corr += a.rate * detail::expi_m1_mix(theta * a.z);
        if (m.density) {
            // Substitute w = z^{2-alpha}: the correction integrand
            // (e^{i theta z} - 1 - i theta z) c z^{-1-alpha}, which diverges at
            // z = 0 for alpha > 1, becomes bounded with the finite limit
            // -theta^2 c / (2 (2-alpha)) at w = 0, so the adaptive rule
            // converges for every alpha in (0, 2).
            const auto& d = *m.density;
            const double q = 2.0 - d.alpha;
            const double W = std::pow(std::min(delta, d.zmax), q);
            auto side = [&](double sign) {
                return detail::adaptive_simpson(
                    [&](double w) -> cplx {
                        if (w <= 0.0) return cplx{-0.5 * theta * theta * d.c / q, 0.0};
                        const double z = std::pow(w, 1.0 / q);
                        // z^{-1-alpha} dz/dw collapses to 1 / (q z^2)
                        return detail::expi_m1_mix(sign * theta * z) * d.c / (q * z * z);
                    },
                    0.0, W, 1e-10);
            };
            if (detail::side_active(d.side, true)) corr += side(1.0);
            if (detail::side_active(d.side, false)) corr += side(-1.0);
        }
        D[static_cast<std::size_t>(k - 1)] = corr - cplx{0.0, theta * b};
    }
    return D;
}

// c_k <- e^{D_k dt} c_k, the exact flow of the multiplier part over dt.
inline void apply_multiplier_exact(SpectralField& f, const std::vector<cplx>& D, double dt) {
    if (D.size() < f.c.size())
        throw std::invalid_argument("multiplier table shorter than the field");
    for (std::size_t i = 0; i < f.c.size(); ++i) f.c[i] *= std::exp(D[i] * dt);
}

// Instantaneous V-norm loss rate caused by Re(D_k) < 0 (sub-threshold mass):
// d/dt ||u||_V^2 = 2 sum_{k != 0} (2 pi |k|)^2 Re(D_k) |c_k|^2, reported with
// the opposite sign so it accumulates like a dissipation.
inline double trunc_dissipation_rate(const SpectralField& f, const std::vector<cplx>& D) {
    double s = 0.0;
    const std::size_t n = std::min(D.size(), f.c.size());
    for (std::size_t i = 0; i < n; ++i) {
        const double k = static_cast<double>(i + 1);
        s += std::pow(two_pi * k, 2) * D[i].real() * std::norm(f.c[i]);
    }
    return -4.0 * s;
}

} // namespace csf
