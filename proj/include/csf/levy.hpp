#pragma once
// Pure-jump Levy measures on the real line and compound Poisson sampling of
// their super-threshold jumps.
//
// A measure is a finite list of atoms plus an optional two-sided truncated
// power-law density  c |z|^{-1-alpha} dz  on 0 < |z| <= zmax (alpha in (0,2),
// so the second-moment condition integral (z^2 AND 1) nu(dz) < infinity
// holds). Jumps with |z| > delta are realized; everything below delta is left
// to the integrator's compensator.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace csf {

struct Atom {
    double z;
    double rate;
};

enum class DensitySide { both, positive, negative };

struct PowerLawDensity {
    double c = 1.0;       // per-side coefficient of |z|^{-1-alpha}
    double alpha = 0.5;
    double zmax = 1.0;
    DensitySide side = DensitySide::both;
};

struct LevyMeasureSpec {
    std::vector<Atom> atoms;
    std::optional<PowerLawDensity> density;
};

struct JumpEvent {
    double t;
    double z;
};

struct SmallMoments {
    double b;    // integral of z over delta < |z| <= 1
    double s2;   // integral of z^2 over |z| <= delta
};

inline std::optional<std::string> validate(const LevyMeasureSpec& m) {
    for (const auto& a : m.atoms) {
        if (a.z == 0.0) return "atom at zero is not allowed (nu({0}) must be 0)";
        if (!(a.rate > 0.0)) return "nonpositive atom rate";
        if (!std::isfinite(a.z) || !std::isfinite(a.rate)) return "non-finite atom";
    }
    if (m.density) {
        const auto& d = *m.density;
        if (!(d.c > 0.0)) return "density coefficient c must be positive";
        if (!(d.alpha > 0.0)) return "alpha must be positive";
        if (!(d.alpha < 2.0)) return "second-moment condition fails: alpha must be < 2";
        if (!(d.zmax > 0.0)) return "zmax must be positive";
    }
    return std::nullopt;
}

namespace detail {

inline bool side_active(DensitySide s, bool positive) {
    return s == DensitySide::both || (positive ? s == DensitySide::positive
                                               : s == DensitySide::negative);
}

// nu((delta, zmax]) for one side of the density; closed form of the power law.
inline double side_rate(const PowerLawDensity& d, double delta) {
    if (delta >= d.zmax) return 0.0;
    return d.c * (std::pow(delta, -d.alpha) - std::pow(d.zmax, -d.alpha)) / d.alpha;
}

// integral of z^{-alpha} over (lo, hi], the first-moment kernel of one side.
inline double side_first_moment(const PowerLawDensity& d, double lo, double hi) {
    if (hi <= lo) return 0.0;
    if (d.alpha == 1.0) return d.c * std::log(hi / lo);
    return d.c * (std::pow(hi, 1.0 - d.alpha) - std::pow(lo, 1.0 - d.alpha)) / (1.0 - d.alpha);
}

} // namespace detail

// Total rate of realized jumps, nu({ |z| > delta }).
inline double total_rate(const LevyMeasureSpec& m, double delta) {
    if (auto err = validate(m)) throw std::invalid_argument(*err);
    if (delta < 0.0) throw std::invalid_argument("delta must be nonnegative");
    if (m.density && delta == 0.0)
        throw std::domain_error("infinite jump rate: delta = 0 with an active density");
    double r = 0.0;
    for (const auto& a : m.atoms)
        if (std::abs(a.z) > delta) r += a.rate;
    if (m.density) {
        if (detail::side_active(m.density->side, true)) r += detail::side_rate(*m.density, delta);
        if (detail::side_active(m.density->side, false)) r += detail::side_rate(*m.density, delta);
    }
    return r;
}

// b(delta) and s2(delta): the compensator's transport weight and the reported
// scale of the neglected sub-threshold fluctuations.
inline SmallMoments small_moments(const LevyMeasureSpec& m, double delta) {
    if (auto err = validate(m)) throw std::invalid_argument(*err);
    if (!(delta >= 0.0 && delta <= 1.0))
        throw std::invalid_argument("small_moments: delta must lie in [0, 1]");
    SmallMoments out{0.0, 0.0};
    for (const auto& a : m.atoms) {
        const double az = std::abs(a.z);
        if (az > delta && az <= 1.0) out.b += a.z * a.rate;
        if (az <= delta) out.s2 += a.z * a.z * a.rate;
    }
    if (m.density) {
        const auto& d = *m.density;
        const double hi = std::min(d.zmax, 1.0);
        if (detail::side_active(d.side, true)) out.b += detail::side_first_moment(d, delta, hi);
        if (detail::side_active(d.side, false)) out.b -= detail::side_first_moment(d, delta, hi);
        // z^2 * c z^{-1-alpha} integrates to c z^{2-alpha}/(2-alpha); alpha < 2
        // makes this finite, which is exactly the second-moment condition.
        const double cap = std::min(delta, d.zmax);
        const double s2side = d.c * std::pow(cap, 2.0 - d.alpha) / (2.0 - d.alpha);
        if (detail::side_active(d.side, true)) out.s2 += s2side;
        if (detail::side_active(d.side, false)) out.s2 += s2side;
    }
    return out;
}

// --- Seed derivation and uniform streams ------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Named substream of a master seed. Arrival times and jump sizes draw from
// separate substreams so extending the horizon extends an event list instead
// of reshuffling it.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(splitmix64(master ^ 0x6C62272E07BB0142ULL) + stream);
}

inline constexpr std::uint64_t kArrivalStream = 1;
inline constexpr std::uint64_t kSizeStream = 2;
inline constexpr std::uint64_t kPathStreamBase = 0x70617468;   // ensemble paths

struct UniformStream {
    std::mt19937_64 gen;

    explicit UniformStream(std::uint64_t seed) : gen(seed) {}

    // in [0, 1); the explicit mantissa mapping keeps the draw sequence
    // independent of any library distribution implementation
    double next() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
};

namespace detail {

// One realized-jump size category: either an atom or one density side.
struct SizeCategory {
    double weight;
    bool is_atom;
    double atom_z;
    bool negative;   // density side sign
};

inline std::vector<SizeCategory> size_categories(const LevyMeasureSpec& m, double delta) {
    std::vector<SizeCategory> cats;
    for (const auto& a : m.atoms)
        if (std::abs(a.z) > delta) cats.push_back({a.rate, true, a.z, false});
    if (m.density) {
        const double r = side_rate(*m.density, delta);
        if (r > 0.0 && side_active(m.density->side, true)) cats.push_back({r, false, 0.0, false});
        if (r > 0.0 && side_active(m.density->side, false)) cats.push_back({r, false, 0.0, true});
    }
    return cats;
}

// Inverse CDF of the power law restricted to (delta, zmax].
inline double power_law_inverse_cdf(const PowerLawDensity& d, double delta, double u) {
    const double lo = std::pow(delta, -d.alpha);
    const double hi = std::pow(d.zmax, -d.alpha);
    return std::pow(lo - u * (lo - hi), -1.0 / d.alpha);
}

} // namespace detail

// Realized jumps of size |z| > delta on (0, T], time-ordered. Deterministic in
// the seed; a longer horizon reproduces the shorter one's events as a prefix.
inline std::vector<JumpEvent> sample_jumps(const LevyMeasureSpec& m, double delta, double T,
                                           std::uint64_t seed) {
    const double rate = total_rate(m, delta);
    std::vector<JumpEvent> events;
    if (rate <= 0.0 || T <= 0.0) return events;

    auto cats = detail::size_categories(m, delta);
    double wsum = 0.0;
    for (const auto& c : cats) wsum += c.weight;

    UniformStream arrivals(substream_seed(seed, kArrivalStream));
    UniformStream sizes(substream_seed(seed, kSizeStream));

    double t = 0.0;
    for (;;) {
        t += -std::log1p(-arrivals.next()) / rate;
        if (t > T) break;
        double pick = sizes.next() * wsum;
        std::size_t idx = 0;
        for (; idx + 1 < cats.size(); ++idx) {
            if (pick < cats[idx].weight) break;
            pick -= cats[idx].weight;
        }
        const auto& cat = cats[idx];
        double z;
        if (cat.is_atom) {
            z = cat.atom_z;
        } else {
            z = detail::power_law_inverse_cdf(*m.density, delta, sizes.next());
            if (cat.negative) z = -z;
        }
        events.push_back({t, z});
    }
    return events;
}

} // namespace csf
