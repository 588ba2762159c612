#pragma once
// Iterative radix-2 FFT, unnormalized. Grids in this project are small powers
// of two (at most a few thousand points), so a plain Cooley-Tukey loop with a
// cached twiddle table is plenty.

#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace csf {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// w[j] = exp(-2 pi i j / m), j = 0 .. m/2-1. Cached per thread so the trig
// cost is paid once per transform size, not once per call.
inline const std::vector<cplx>& twiddles(std::size_t m) {
    thread_local std::unordered_map<std::size_t, std::vector<cplx>> cache;
    auto it = cache.find(m);
    if (it == cache.end()) {
        std::vector<cplx> w(m / 2);
        for (std::size_t j = 0; j < m / 2; ++j) {
            double ang = -two_pi * static_cast<double>(j) / static_cast<double>(m);
            w[j] = cplx{std::cos(ang), std::sin(ang)};
        }
        it = cache.emplace(m, std::move(w)).first;
    }
    return it->second;
}

// In-place transform. sign = -1 gives sum_j a_j e^{-2 pi i jk/n} (analysis),
// sign = +1 the conjugate kernel (synthesis); neither applies the 1/n factor.
inline void fft(std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft: size must be a power of two");
    if (n == 1) return;

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const auto& w = twiddles(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                cplx tw = w[j * stride];
                if (sign > 0) tw = std::conj(tw);
                cplx lo = a[i + j];
                cplx hi = a[i + j + len / 2] * tw;
                a[i + j] = lo + hi;
                a[i + j + len / 2] = lo - hi;
            }
        }
    }
}

} // namespace detail
} // namespace csf
