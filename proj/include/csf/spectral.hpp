#pragma once
// Zero-mean real fields on the unit circle, stored spectrally.
//
// A field u(x) = sum_{k=1}^{N} ( c_k e^{2 pi i k x} + conj(c_k) e^{-2 pi i k x} )
// keeps only its positive-frequency coefficients; the k = 0 mode does not
// exist in this representation, so every field has zero mean by construction
// and the negative frequencies are implied by realness.

#include "csf/fft.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace csf {

struct SpectralField {
    // c[k-1] holds mode k for k = 1 .. n_modes().
    std::vector<cplx> c;

    int n_modes() const { return static_cast<int>(c.size()); }
};

struct PhysicalField {
    // samples[j] = u(j / M) with M = samples.size(), a power of two.
    std::vector<double> samples;

    int size() const { return static_cast<int>(samples.size()); }
    double h() const { return 1.0 / static_cast<double>(samples.size()); }
};

inline SpectralField make_field(int n_modes) {
    if (n_modes < 1) throw std::invalid_argument("n_modes must be >= 1");
    SpectralField f;
    f.c.assign(static_cast<std::size_t>(n_modes), cplx{0.0, 0.0});
    return f;
}

// Default synthesis/analysis grid: oversampling factor 2 beyond the Nyquist
// count 2N+1, rounded up to a power of two.
inline int dealias_grid(int n_modes) {
    return static_cast<int>(detail::next_pow2(static_cast<std::size_t>(4 * n_modes)));
}

namespace detail {

inline void check_grid(int M, int n_modes) {
    if (!is_pow2(static_cast<std::size_t>(M)))
        throw std::invalid_argument("grid size must be a power of two, got " + std::to_string(M));
    if (M < 2 * n_modes + 1)
        throw std::invalid_argument("grid too small to resolve " + std::to_string(n_modes) +
                                    " modes: need M >= 2N+1, got " + std::to_string(M));
}

// Hermitian spectrum of length M from positive-frequency coefficients.
inline std::vector<cplx> embed_spectrum(const SpectralField& f, int M) {
    std::vector<cplx> s(static_cast<std::size_t>(M), cplx{0.0, 0.0});
    for (int k = 1; k <= f.n_modes(); ++k) {
        s[static_cast<std::size_t>(k)] = f.c[static_cast<std::size_t>(k - 1)];
        s[static_cast<std::size_t>(M - k)] = std::conj(f.c[static_cast<std::size_t>(k - 1)]);
    }
    return s;
}

} // namespace detail

// Synthesis on M uniform points. Exact for trigonometric polynomials of
// degree <= N as long as M >= 2N+1.
inline PhysicalField to_physical(const SpectralField& f, int M = 0) {
    if (M == 0) M = dealias_grid(f.n_modes());
    detail::check_grid(M, f.n_modes());
    auto s = detail::embed_spectrum(f, M);
    detail::fft(s, +1);
    PhysicalField p;
    p.samples.resize(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j) p.samples[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j)].real();
    return p;
}

// Analysis: coefficients of the trigonometric interpolant through the samples,
// truncated to modes 1..N. Exact inverse of to_physical when the samples came
// from a field with at most N modes.
inline SpectralField to_spectral(const PhysicalField& p, int n_modes) {
    const int M = p.size();
    detail::check_grid(M, n_modes);
    std::vector<cplx> s(p.samples.begin(), p.samples.end());
    detail::fft(s, -1);
    SpectralField f = make_field(n_modes);
    const double inv = 1.0 / static_cast<double>(M);
    for (int k = 1; k <= n_modes; ++k)
        f.c[static_cast<std::size_t>(k - 1)] = s[static_cast<std::size_t>(k)] * inv;
    return f;
}

inline SpectralField derivative(const SpectralField& f) {
    SpectralField d = f;
    for (int k = 1; k <= f.n_modes(); ++k)
        d.c[static_cast<std::size_t>(k - 1)] *= cplx{0.0, two_pi * k};
    return d;
}

// shift(f, a)(x) = u(x + a); an exact isometry of every Sobolev norm.
inline SpectralField shift(const SpectralField& f, double a) {
    SpectralField g = f;
    for (int k = 1; k <= f.n_modes(); ++k) {
        const double ang = two_pi * k * a;
        g.c[static_cast<std::size_t>(k - 1)] *= cplx{std::cos(ang), std::sin(ang)};
    }
    return g;
}

// Squared L2 norm, ||u||^2 = 2 sum |c_k|^2 (the factor 2 counts +/-k).
inline double norm_H2(const SpectralField& f) {
    double s = 0.0;
    for (const auto& ck : f.c) s += std::norm(ck);
    return 2.0 * s;
}

// Squared H1 seminorm, ||u'||^2 = 2 sum (2 pi k)^2 |c_k|^2.
inline double norm_V2(const SpectralField& f) {
    double s = 0.0;
    for (int k = 1; k <= f.n_modes(); ++k)
        s += std::pow(two_pi * k, 2) * std::norm(f.c[static_cast<std::size_t>(k - 1)]);
    return 2.0 * s;
}

inline double inner_H(const SpectralField& f, const SpectralField& g) {
    const int n = std::min(f.n_modes(), g.n_modes());
    double s = 0.0;
    for (int k = 1; k <= n; ++k)
        s += (f.c[static_cast<std::size_t>(k - 1)] * std::conj(g.c[static_cast<std::size_t>(k - 1)])).real();
    return 2.0 * s;
}

inline double inner_V(const SpectralField& f, const SpectralField& g) {
    const int n = std::min(f.n_modes(), g.n_modes());
    double s = 0.0;
    for (int k = 1; k <= n; ++k)
        s += std::pow(two_pi * k, 2) *
             (f.c[static_cast<std::size_t>(k - 1)] * std::conj(g.c[static_cast<std::size_t>(k - 1)])).real();
    return 2.0 * s;
}

// Truncation / zero-padding to n modes. Truncation contracts both norms.
inline SpectralField project(const SpectralField& f, int n_modes) {
    SpectralField g = make_field(n_modes);
    const int n = std::min(n_modes, f.n_modes());
    for (int k = 1; k <= n; ++k) g.c[static_cast<std::size_t>(k - 1)] = f.c[static_cast<std::size_t>(k - 1)];
    return g;
}

namespace detail {

// |f'| and |f''| have kinks, so their trapezoid quadrature converges only at
// O(h^2); a deliberately fine grid keeps the error well below every tolerance
// used in the tests. Still >= 4N as the coarse floor demands.
inline int l1_grid(int n_modes) {
    return static_cast<int>(next_pow2(std::max<std::size_t>(8192, 32 * static_cast<std::size_t>(n_modes))));
}

inline double grid_mean_abs(const SpectralField& f) {
    const auto p = to_physical(f, l1_grid(f.n_modes()));
    double s = 0.0;
    for (double v : p.samples) s += std::abs(v);
    return s / static_cast<double>(p.size());
}

} // namespace detail

// Periodic trapezoid quadrature of |du/dx| over one period.
inline double norm_L1_dx(const SpectralField& f) { return detail::grid_mean_abs(derivative(f)); }

// Periodic trapezoid quadrature of |d2u/dx2| over one period.
inline double norm_L1_dxx(const SpectralField& f) {
    return detail::grid_mean_abs(derivative(derivative(f)));
}

// --- Initial-condition factories -------------------------------------------

// amplitude * sin(2 pi k x), i.e. c_k = -i * amplitude / 2.
inline SpectralField make_single_mode(int n_modes, int k, double amplitude) {
    if (k < 1 || k > n_modes) throw std::invalid_argument("single_mode: need 1 <= k <= n_modes");
    SpectralField f = make_field(n_modes);
    f.c[static_cast<std::size_t>(k - 1)] = cplx{0.0, -0.5 * amplitude};
    return f;
}

// amplitude * ( sin(2 pi k x) + sin(4 pi k x) / 2 ).
inline SpectralField make_two_mode(int n_modes, int k, double amplitude) {
    if (k < 1 || 2 * k > n_modes) throw std::invalid_argument("two_mode: need 1 <= k and 2k <= n_modes");
    SpectralField f = make_field(n_modes);
    f.c[static_cast<std::size_t>(k - 1)] = cplx{0.0, -0.5 * amplitude};
    f.c[static_cast<std::size_t>(2 * k - 1)] = cplx{0.0, -0.25 * amplitude};
    return f;
}

// c_k = amplitude * k^{-decay} * e^{i phi_k} with phases drawn from the given
// seed; decay > 1/2 keeps the field in V with room to spare.
inline SpectralField make_random_smooth(int n_modes, double decay, std::uint64_t seed,
                                        double amplitude = 1.0) {
    SpectralField f = make_field(n_modes);
    std::mt19937_64 gen(seed);
    for (int k = 1; k <= n_modes; ++k) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        const double phase = two_pi * u;
        f.c[static_cast<std::size_t>(k - 1)] =
            amplitude * std::pow(static_cast<double>(k), -decay) * cplx{std::cos(phase), std::sin(phase)};
    }
    return f;
}

} // namespace csf
