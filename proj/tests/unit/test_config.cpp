#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "csf/config.hpp"

using namespace csf;

namespace {

void expect_reject(const std::string& text, const std::string& what) {
    try {
        parse_config(text);
        FAIL("expected rejection mentioning: " << what << "\nfor input:\n" << text);
    } catch (const ConfigError& e) {
        INFO("message: " << e.what());
        REQUIRE(std::string(e.what()).find(what) != std::string::npos);
    }
}

} // namespace

TEST_CASE("empty input yields the documented defaults", "[config]") {
    const SimConfig c = parse_config("");
    REQUIRE(c.n_modes == 64);
    REQUIRE(c.T == 1.0);
    REQUIRE(c.dt_max == 1e-3);
    REQUIRE(c.epsilon == 1.0);
    REQUIRE(c.delta == 0.1);
    REQUIRE(c.seed == 0);
    REQUIRE(c.record_every == 10);
    REQUIRE(c.drift_enabled);
    REQUIRE(c.c_stab == 0.4);
    REQUIRE(!c.record_l1);
    REQUIRE(c.c1 == 0.5);
    REQUIRE(c.tail_fraction == 0.5);
    REQUIRE(c.snapshots == 0);
    REQUIRE(c.init.preset == InitSpec::Preset::single_mode);
    REQUIRE(c.measure.atoms.empty());
    REQUIRE(!c.measure.density.has_value());
}

TEST_CASE("comments, blank lines and spacing are tolerated", "[config]") {
    const SimConfig c = parse_config(
        "# leading comment\n"
        "\n"
        "  n_modes =  16   # trailing comment\n"
        "\tT=0.25\n"
        "drift_enabled = false\n");
    REQUIRE(c.n_modes == 16);
    REQUIRE(c.T == 0.25);
    REQUIRE(!c.drift_enabled);
}

TEST_CASE("every field can be set and round-trips through serialization", "[config]") {
    const std::string text =
        "n_modes = 24\n"
        "T = 0.7\n"
        "dt_max = 5e-4\n"
        "epsilon = 0.3\n"
        "delta = 0.25\n"
        "seed = 987654321\n"
        "record_every = 4\n"
        "drift_enabled = false\n"
        "c_stab = 0.5\n"
        "record_l1 = true\n"
        "c1 = 0.4\n"
        "tail_fraction = 0.3\n"
        "snapshots = 4\n"
        "init.preset = random_smooth\n"
        "init.k = 2\n"
        "init.amplitude = 0.1\n"
        "init.decay = 2.75\n"
        "init.seed = 11\n"
        "measure.atoms = 0.5:2.0, -0.125:1.5\n"
        "measure.density.c = 0.6\n"
        "measure.density.alpha = 1.1\n"
        "measure.density.zmax = 0.9\n"
        "measure.density.side = positive\n";

    const SimConfig a = parse_config(text);
    REQUIRE(a.n_modes == 24);
    REQUIRE(a.measure.atoms.size() == 2);
    REQUIRE(a.measure.atoms[1].z == -0.125);
    REQUIRE(a.measure.atoms[1].rate == 1.5);
    REQUIRE(a.measure.density.has_value());
    REQUIRE(a.measure.density->side == DensitySide::positive);
    REQUIRE(a.init.preset == InitSpec::Preset::random_smooth);

    const SimConfig b = parse_config(serialize_config(a));
    REQUIRE(b.n_modes == a.n_modes);
    REQUIRE(b.T == a.T);
    REQUIRE(b.dt_max == a.dt_max);
    REQUIRE(b.epsilon == a.epsilon);
    REQUIRE(b.delta == a.delta);
    REQUIRE(b.seed == a.seed);
    REQUIRE(b.record_every == a.record_every);
    REQUIRE(b.drift_enabled == a.drift_enabled);
    REQUIRE(b.c_stab == a.c_stab);
    REQUIRE(b.record_l1 == a.record_l1);
    REQUIRE(b.c1 == a.c1);
    REQUIRE(b.tail_fraction == a.tail_fraction);
    REQUIRE(b.snapshots == a.snapshots);
    REQUIRE(b.init.preset == a.init.preset);
    REQUIRE(b.init.k == a.init.k);
    REQUIRE(b.init.amplitude == a.init.amplitude);
    REQUIRE(b.init.decay == a.init.decay);
    REQUIRE(b.init.seed == a.init.seed);
    REQUIRE(b.measure.atoms.size() == a.measure.atoms.size());
    for (std::size_t i = 0; i < a.measure.atoms.size(); ++i) {
        REQUIRE(b.measure.atoms[i].z == a.measure.atoms[i].z);
        REQUIRE(b.measure.atoms[i].rate == a.measure.atoms[i].rate);
    }
    REQUIRE(b.measure.density->c == a.measure.density->c);
    REQUIRE(b.measure.density->alpha == a.measure.density->alpha);
    REQUIRE(b.measure.density->zmax == a.measure.density->zmax);
    REQUIRE(b.measure.density->side == a.measure.density->side);
}

TEST_CASE("non-representable decimals survive the round trip exactly", "[config]") {
    const SimConfig a = parse_config("T = 0.1\ndt_max = 1e-3\nepsilon = 0.30000000000000004\n");
    const SimConfig b = parse_config(serialize_config(a));
    REQUIRE(a.T == b.T);
    REQUIRE(a.epsilon == b.epsilon);
}

TEST_CASE("unknown, duplicate and malformed keys are rejected", "[config]") {
    expect_reject("n_nodes = 3\n", "unknown key: n_nodes");
    expect_reject("T = 1\nT = 2\n", "duplicate key: T");
    expect_reject("just some words\n", "expected key = value");
    expect_reject("= 5\n", "empty key");
}

TEST_CASE("bad values carry the offending key and text", "[config]") {
    expect_reject("T = fast\n", "bad number for T");
    expect_reject("n_modes = 3.5\n", "bad integer for n_modes");
    expect_reject("drift_enabled = yes\n", "bad boolean");
    expect_reject("init.preset = sin\n", "bad init.preset");
    expect_reject("measure.density.side = up\n", "bad measure.density.side");
    expect_reject("seed = -1\n", "bad seed");
}

TEST_CASE("semantic validation runs on parsed configs", "[config]") {
    expect_reject("epsilon = -1\n", "epsilon must be positive");
    expect_reject("delta = 0\n", "delta");
    expect_reject("measure.atoms = 0:1\n", "atom at zero");
    expect_reject("measure.atoms = 0.5:-2\n", "nonpositive atom rate");
    expect_reject("measure.density.alpha = 2.5\n", "alpha must be < 2");
    expect_reject("record_every = 0\n", "record_every");
}

TEST_CASE("atom lists demand the z:rate shape", "[config]") {
    expect_reject("measure.atoms = 0.5\n", "not z:rate");
    expect_reject("measure.atoms = \n", "empty");
    expect_reject("measure.atoms = 0.5:1, ,0.2:1\n", "empty atom entry");

    const SimConfig c = parse_config("measure.atoms = 0.35:8.0,-0.35:8\n");
    REQUIRE(c.measure.atoms.size() == 2);
    REQUIRE(c.measure.atoms[0].z == 0.35);
    REQUIRE(c.measure.atoms[1].rate == 8.0);
}

TEST_CASE("touching any density key activates the density with defaults", "[config]") {
    const SimConfig c = parse_config("measure.density.alpha = 0.9\n");
    REQUIRE(c.measure.density.has_value());
    REQUIRE(c.measure.density->alpha == 0.9);
    REQUIRE(c.measure.density->c == 1.0);
    REQUIRE(c.measure.density->zmax == 1.0);
    REQUIRE(c.measure.density->side == DensitySide::both);
}

TEST_CASE("missing config files are a config error", "[config]") {
    REQUIRE_THROWS_AS(load_config("/no/such/file.cfg"), ConfigError);
}
