#pragma once
// Flat key=value configuration files.  '#' starts a comment, blank lines are
// skipped, unknown and duplicate keys are hard errors.  Every key has a
// default, so the empty file is a valid configuration.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "csf/errors.hpp"
#include "csf/integrator.hpp"

namespace csf {

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline double parse_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        throw ConfigError("bad number for " + key + ": '" + v + "'");
    }
    if (used != v.size()) throw ConfigError("bad number for " + key + ": '" + v + "'");
    return x;
}

inline long long parse_int(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    long long x = 0;
    try {
        x = std::stoll(v, &used);
    } catch (const std::exception&) {
        throw ConfigError("bad integer for " + key + ": '" + v + "'");
    }
    if (used != v.size()) throw ConfigError("bad integer for " + key + ": '" + v + "'");
    return x;
}

inline std::uint64_t parse_seed(const std::string& key, const std::string& v) {
    // stoull accepts and wraps a leading minus; forbid it outright
    if (!v.empty() && v[0] == '-') throw ConfigError("bad seed for " + key + ": '" + v + "'");
    std::size_t used = 0;
    std::uint64_t x = 0;
    try {
        x = std::stoull(v, &used);
    } catch (const std::exception&) {
        throw ConfigError("bad seed for " + key + ": '" + v + "'");
    }
    if (used != v.size()) throw ConfigError("bad seed for " + key + ": '" + v + "'");
    return x;
}

inline bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("bad boolean for " + key + ": '" + v + "' (use true/false)");
}

// "z:rate, z:rate, ..." -> atom list
inline std::vector<Atom> parse_atoms(const std::string& v) {
    std::vector<Atom> atoms;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("empty atom entry in measure.atoms");
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos)
            throw ConfigError("atom entry '" + item + "' is not z:rate");
        Atom a;
        a.z = parse_double("measure.atoms", trim(item.substr(0, colon)));
        a.rate = parse_double("measure.atoms", trim(item.substr(colon + 1)));
        atoms.push_back(a);
    }
    if (atoms.empty()) throw ConfigError("measure.atoms given but empty");
    return atoms;
}

inline DensitySide parse_side(const std::string& v) {
    if (v == "both") return DensitySide::both;
    if (v == "positive") return DensitySide::positive;
    if (v == "negative") return DensitySide::negative;
    throw ConfigError("bad measure.density.side '" + v + "' (both/positive/negative)");
}

inline InitSpec::Preset parse_preset(const std::string& v) {
    if (v == "single_mode") return InitSpec::Preset::single_mode;
    if (v == "two_mode") return InitSpec::Preset::two_mode;
    if (v == "random_smooth") return InitSpec::Preset::random_smooth;
    throw ConfigError("bad init.preset '" + v +
                      "' (single_mode/two_mode/random_smooth)");
}

} // namespace detail

// Parses configuration text.  The result is validated before it is returned.
inline SimConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        if (!kv.emplace(key, val).second) throw ConfigError("duplicate key: " + key);
    }

    SimConfig cfg;
    bool density_touched = false;
    PowerLawDensity density;

    for (const auto& [key, val] : kv) {
        if (key == "n_modes") cfg.n_modes = int(detail::parse_int(key, val));
        else if (key == "T") cfg.T = detail::parse_double(key, val);
        else if (key == "dt_max") cfg.dt_max = detail::parse_double(key, val);
        else if (key == "epsilon") cfg.epsilon = detail::parse_double(key, val);
        else if (key == "delta") cfg.delta = detail::parse_double(key, val);
        else if (key == "seed") cfg.seed = detail::parse_seed(key, val);
        else if (key == "record_every") cfg.record_every = int(detail::parse_int(key, val));
        else if (key == "drift_enabled") cfg.drift_enabled = detail::parse_bool(key, val);
        else if (key == "c_stab") cfg.c_stab = detail::parse_double(key, val);
        else if (key == "record_l1") cfg.record_l1 = detail::parse_bool(key, val);
        else if (key == "c1") cfg.c1 = detail::parse_double(key, val);
        else if (key == "tail_fraction") cfg.tail_fraction = detail::parse_double(key, val);
        else if (key == "snapshots") cfg.snapshots = int(detail::parse_int(key, val));
        else if (key == "init.preset") cfg.init.preset = detail::parse_preset(val);
        else if (key == "init.k") cfg.init.k = int(detail::parse_int(key, val));
        else if (key == "init.amplitude") cfg.init.amplitude = detail::parse_double(key, val);
        else if (key == "init.decay") cfg.init.decay = detail::parse_double(key, val);
        else if (key == "init.seed") cfg.init.seed = detail::parse_seed(key, val);
        else if (key == "measure.atoms") cfg.measure.atoms = detail::parse_atoms(val);
        else if (key == "measure.density.c") { density.c = detail::parse_double(key, val); density_touched = true; }
        else if (key == "measure.density.alpha") { density.alpha = detail::parse_double(key, val); density_touched = true; }
        else if (key == "measure.density.zmax") { density.zmax = detail::parse_double(key, val); density_touched = true; }
        else if (key == "measure.density.side") { density.side = detail::parse_side(val); density_touched = true; }
        else throw ConfigError("unknown key: " + key);
    }
    if (density_touched) cfg.measure.density = density;

    validate(cfg);
    return cfg;
}

inline SimConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

namespace detail {

inline std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace detail

// Canonical echo of every setting; parsing it back reproduces the config.
inline std::string serialize_config(const SimConfig& c) {
    std::ostringstream out;
    out << "n_modes = " << c.n_modes << "\n";
    out << "T = " << detail::fmt_double(c.T) << "\n";
    out << "dt_max = " << detail::fmt_double(c.dt_max) << "\n";
    out << "epsilon = " << detail::fmt_double(c.epsilon) << "\n";
    out << "delta = " << detail::fmt_double(c.delta) << "\n";
    out << "seed = " << c.seed << "\n";
    out << "record_every = " << c.record_every << "\n";
    out << "drift_enabled = " << (c.drift_enabled ? "true" : "false") << "\n";
    out << "c_stab = " << detail::fmt_double(c.c_stab) << "\n";
    out << "record_l1 = " << (c.record_l1 ? "true" : "false") << "\n";
    out << "c1 = " << detail::fmt_double(c.c1) << "\n";
    out << "tail_fraction = " << detail::fmt_double(c.tail_fraction) << "\n";
    out << "snapshots = " << c.snapshots << "\n";
    const char* preset =
        c.init.preset == InitSpec::Preset::single_mode ? "single_mode" :
        c.init.preset == InitSpec::Preset::two_mode    ? "two_mode"
                                                       : "random_smooth";
    out << "init.preset = " << preset << "\n";
    out << "init.k = " << c.init.k << "\n";
    out << "init.amplitude = " << detail::fmt_double(c.init.amplitude) << "\n";
    out << "init.decay = " << detail::fmt_double(c.init.decay) << "\n";
    out << "init.seed = " << c.init.seed << "\n";
    if (!c.measure.atoms.empty()) {
        out << "measure.atoms = ";
        for (std::size_t i = 0; i < c.measure.atoms.size(); ++i) {
            if (i) out << ", ";
            out << detail::fmt_double(c.measure.atoms[i].z) << ":"
                << detail::fmt_double(c.measure.atoms[i].rate);
        }
        out << "\n";
    }
    if (c.measure.density) {
        const auto& d = *c.measure.density;
        out << "measure.density.c = " << detail::fmt_double(d.c) << "\n";
        out << "measure.density.alpha = " << detail::fmt_double(d.alpha) << "\n";
        out << "measure.density.zmax = " << detail::fmt_double(d.zmax) << "\n";
        const char* side = d.side == DensitySide::both ? "both"
                           : d.side == DensitySide::positive ? "positive"
                                                             : "negative";
        out << "measure.density.side = " << side << "\n";
    }
    return out.str();
}

} // namespace csf
