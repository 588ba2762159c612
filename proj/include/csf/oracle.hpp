#pragma once
// Low-tech reference implementations used to cross-check the spectral path:
// finite differences on a periodic grid and direct Gauss-Legendre quadrature
// of the compensator multipliers. Everything here is built from <cmath> up;
// no FFTs, no closed-form moment shortcuts, no code shared with the solver.

#include "csf/levy.hpp"   // measure description (data only)

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace csf::oracle {

using cplx = std::complex<double>;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct GridField {
    std::vector<double> u;   // samples at x_j = j h, h = 1 / u.size()

    int size() const { return static_cast<int>(u.size()); }
    double h() const { return 1.0 / static_cast<double>(u.size()); }
};

// One explicit Euler step of u_t = u_xx / (1 + u_x^2) with second-order
// central differences; the mean is re-zeroed afterwards to stay in the
// zero-mean class. Requires the parabolic CFL dt <= 0.4 h^2.
inline GridField fd_csf_step(const GridField& g, double dt) {
    const int M = g.size();
    if (M < 3) throw std::invalid_argument("fd_csf_step: grid too small");
    const double h = g.h();
    if (dt > 0.4 * h * h + 1e-18 * h * h)
        throw std::invalid_argument("fd_csf_step: dt violates the parabolic CFL dt <= 0.4 h^2");

    GridField out;
    out.u.resize(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j) {
        const double um = g.u[static_cast<std::size_t>((j + M - 1) % M)];
        const double uc = g.u[static_cast<std::size_t>(j)];
        const double up = g.u[static_cast<std::size_t>((j + 1) % M)];
        const double uxx = (up - 2.0 * uc + um) / (h * h);
        const double ux = (up - um) / (2.0 * h);
        out.u[static_cast<std::size_t>(j)] = uc + dt * uxx / (1.0 + ux * ux);
    }
    double mean = 0.0;
    for (double v : out.u) mean += v;
    mean /= static_cast<double>(M);
    for (double& v : out.u) v -= mean;
    return out;
}

// First-order upwind solution of phi_theta = a phi_x from theta = 0 to 1,
// i.e. the flow whose exact endpoint is phi(x) = g(x + a). Requires the
// advective CFL |a| dtheta <= h.
inline GridField transport_upwind(const GridField& g, double a, int n_steps) {
    const int M = g.size();
    if (M < 3) throw std::invalid_argument("transport_upwind: grid too small");
    if (n_steps < 1) throw std::invalid_argument("transport_upwind: need at least one step");
    const double h = g.h();
    const double dth = 1.0 / static_cast<double>(n_steps);
    if (std::abs(a) * dth > h * (1.0 + 1e-12))
        throw std::invalid_argument("transport_upwind: |a| dtheta exceeds the CFL limit h");

    GridField cur = g;
    GridField next;
    next.u.resize(static_cast<std::size_t>(M));
    const double lam = a * dth / h;
    for (int s = 0; s < n_steps; ++s) {
        for (int j = 0; j < M; ++j) {
            const double uc = cur.u[static_cast<std::size_t>(j)];
            if (a >= 0.0) {
                const double up = cur.u[static_cast<std::size_t>((j + 1) % M)];
                next.u[static_cast<std::size_t>(j)] = uc + lam * (up - uc);
            } else {
                const double um = cur.u[static_cast<std::size_t>((j + M - 1) % M)];
                next.u[static_cast<std::size_t>(j)] = uc + lam * (uc - um);
            }
        }
        std::swap(cur.u, next.u);
    }
    return cur;
}

namespace detail {

// 16-point Gauss-Legendre rule on [-1, 1], nodes by Newton iteration.
inline const std::pair<std::vector<double>, std::vector<double>>& gl16() {
    static const auto rule = [] {
        const int n = 16;
        std::vector<double> x(n), w(n);
        for (int i = 0; i < n; ++i) {
            double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 64; ++it) {
                double p0 = 1.0, p1 = t;
                for (int j = 2; j <= n; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (t * p1 - p0) / (t * t - 1.0);
                const double step = p1 / dp;
                t -= step;
                if (std::abs(step) < 1e-16) break;
            }
            x[static_cast<std::size_t>(i)] = t;
            w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
        return std::make_pair(x, w);
    }();
    return rule;
}

template <typename F>
cplx gl_integrate(const F& f, double a, double b) {
    const auto& [x, w] = gl16();
    const double mid = 0.5 * (a + b);
    const double rad = 0.5 * (b - a);
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(mid + rad * x[i]);
    return s * rad;
}

// Integrate f over [a, b] with panels sized so each spans at most ~3 radians
// of the oscillation e^{i omega z}.
template <typename F>
cplx gl_oscillatory(const F& f, double a, double b, double omega) {
    if (b <= a) return cplx{0.0, 0.0};
    const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(omega) * (b - a) / 3.0)));
    cplx s{0.0, 0.0};
    for (int p = 0; p < panels; ++p) {
        const double lo = a + (b - a) * p / panels;
        const double hi = a + (b - a) * (p + 1) / panels;
        s += gl_integrate(f, lo, hi);
    }
    return s;
}

// G(z, .)'s k-th multiplier through the eta-integral route
//   eps^2 z^2 int_0^1 (1 - eta) (2 pi i k)^2 e^{2 pi i k eps z eta} d eta,
// which the closed form e^{i theta z} - 1 - i theta z (theta = 2 pi k eps)
// must reproduce. Deliberately evaluated by quadrature, not the closed form.
inline cplx eta_route_multiplier(double eps, int k, double z) {
    const double theta = kTwoPi * k * eps;
    const cplx d2 = cplx{0.0, kTwoPi * k} * cplx{0.0, kTwoPi * k};   // (2 pi i k)^2
    return eps * eps * z * z * d2 *
           gl_oscillatory([&](double eta) { return (1.0 - eta) *
                                                   cplx{std::cos(theta * z * eta), std::sin(theta * z * eta)}; },
                          0.0, 1.0, theta * z);
}

} // namespace detail

// Independent evaluation of the compensator multiplier D_k: the correction
// integral over |z| <= delta via the eta-quadrature route and the transport
// term -2 pi i k eps b(delta) with b computed by quadrature as well.
inline cplx compensator_quadrature_check(const LevyMeasureSpec& m, double eps, double delta,
                                         int k) {
    if (k == 0) return cplx{0.0, 0.0};
    if (k < 0) throw std::invalid_argument("compensator check expects k >= 1");

    cplx corr{0.0, 0.0};
    double b = 0.0;
    for (const auto& a : m.atoms) {
        if (std::abs(a.z) <= delta) corr += a.rate * detail::eta_route_multiplier(eps, k, a.z);
        if (std::abs(a.z) > delta && std::abs(a.z) <= 1.0) b += a.rate * a.z;
    }
    if (m.density) {
        const auto& d = *m.density;
        const double theta = kTwoPi * k * eps;
        auto nu = [&](double z) { return d.c * std::pow(z, -1.0 - d.alpha); };

        // correction: integrate in w = z^{2-alpha}, where the integrand is
        // bounded (g(w) = multiplier(z) c / ((2-alpha) z^2)) and the tail of
        // the dyadic refinement toward 0 shrinks linearly in w for any alpha;
        // oscillation-sized subpanels tame e^{i theta z}
        const double q = 2.0 - d.alpha;
        auto corr_side = [&](double sign) {
            cplx s{0.0, 0.0};
            double w_hi = std::pow(std::min(delta, d.zmax), q);
            for (int level = 0; level < 60; ++level) {
                const double w_lo = 0.5 * w_hi;
                const double z_span = std::pow(w_hi, 1.0 / q) - std::pow(w_lo, 1.0 / q);
                const int sub = std::max(1, static_cast<int>(std::ceil(std::abs(theta) * z_span / 3.0)));
                for (int p = 0; p < sub; ++p) {
                    const double a0 = w_lo + (w_hi - w_lo) * p / sub;
                    const double a1 = w_lo + (w_hi - w_lo) * (p + 1) / sub;
                    s += detail::gl_integrate(
                        [&](double w) {
                            const double z = std::pow(w, 1.0 / q);
                            return detail::eta_route_multiplier(eps, k, sign * z) * nu(z) * z /
                                   (q * w);
                        },
                        a0, a1);
                }
                w_hi = w_lo;
            }
            return s;
        };
        // transport weight: smooth integrand, plain panels
        auto b_side = [&](double lo, double hi) {
            if (hi <= lo) return 0.0;
            cplx s{0.0, 0.0};
            const int panels = 16;
            for (int p = 0; p < panels; ++p) {
                const double a0 = lo + (hi - lo) * p / panels;
                const double a1 = lo + (hi - lo) * (p + 1) / panels;
                s += detail::gl_integrate([&](double z) { return cplx{z * nu(z), 0.0}; }, a0, a1);
            }
            return s.real();
        };

        if (d.side != DensitySide::negative) {
            corr += corr_side(1.0);
            b += b_side(delta, std::min(d.zmax, 1.0));
        }
        if (d.side != DensitySide::positive) {
            corr += corr_side(-1.0);
            b -= b_side(delta, std::min(d.zmax, 1.0));
        }
    }
    return corr - cplx{0.0, kTwoPi * k * eps * b};
}

} // namespace csf::oracle
