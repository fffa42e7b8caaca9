#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "fiscomp/config.hpp"

using namespace fiscomp;

TEST_CASE("config round trip is the identity on canonical form") {
    RunConfig cfg;
    cfg.mc.seed = 777;
    cfg.mc.n_draws = 1234;
    cfg.model.phi = 0.625;
    cfg.model.rho_drag = 2.5e-4;
    cfg.out_dir = "some/dir";
    cfg.write_csv = true;
    const std::string text = render_config(cfg);
    const RunConfig parsed = parse_config_string(text);
    CHECK(render_config(parsed) == text);
    CHECK(parsed.model.phi == cfg.model.phi);
    CHECK(parsed.model.rho_drag == cfg.model.rho_drag);
    CHECK(parsed.mc.seed == cfg.mc.seed);
    CHECK(parsed.mc.n_draws == cfg.mc.n_draws);
    CHECK(parsed.out_dir == cfg.out_dir);
    CHECK(parsed.write_csv == cfg.write_csv);
    CHECK(parsed.mc.ranges.phi.lo == cfg.mc.ranges.phi.lo);
    CHECK(parsed.mc.stress_ranges.d0.hi == cfg.mc.stress_ranges.d0.hi);
}

TEST_CASE("defaults render and reparse") {
    const RunConfig cfg;
    const RunConfig parsed = parse_config_string(render_config(cfg));
    CHECK(parsed.model.rho_drag == cfg.model.rho_drag);
    CHECK(parsed.model.horizon == 20);
    CHECK(parsed.model.shock == 5.0);
    CHECK(parsed.mc.n_draws == 3000);
    CHECK(parsed.mc.stress_draws == 500);
}

TEST_CASE("unknown keys are rejected by name") {
    try {
        parse_config_string("[model]\nbogus_key = 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("bogus_key") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config_string("[nonsense]\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_string("key_before_section = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_string("[model]\nbeta 0.9\n"), ConfigError);
}

TEST_CASE("out-of-range model values are rejected") {
    RunConfig cfg;
    std::string text = render_config(cfg);
    SUBCASE("structurally impossible cbar") {
        const auto pos = text.find("cbar = ");
        text.replace(pos, text.find('\n', pos) - pos, "cbar = 1.2");
        CHECK_THROWS_AS(parse_config_string(text), ConfigError);
    }
    SUBCASE("outside the documented interval") {
        const auto pos = text.find("cbar = ");
        text.replace(pos, text.find('\n', pos) - pos, "cbar = 0.95");
        CHECK_THROWS_AS(parse_config_string(text), ConfigError);
    }
    SUBCASE("malformed number") {
        const auto pos = text.find("beta = ");
        text.replace(pos, text.find('\n', pos) - pos, "beta = fast");
        CHECK_THROWS_AS(parse_config_string(text), ConfigError);
    }
    SUBCASE("malformed interval") {
        const auto section = text.find("[mc_ranges]");
        const auto pos = text.find("beta = ", section);
        text.replace(pos, text.find('\n', pos) - pos, "beta = 0.9 0.95 0.99");
        CHECK_THROWS_AS(parse_config_string(text), ConfigError);
    }
}

TEST_CASE("config file IO") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "fiscomp_cfg_test";
    fs::create_directories(dir);
    const fs::path path = dir / "run.ini";
    RunConfig cfg;
    cfg.mc.seed = 31415;
    write_config_file(cfg, path);
    const RunConfig loaded = load_config_file(path);
    CHECK(loaded.mc.seed == 31415);
    CHECK_THROWS_AS(load_config_file(dir / "missing.ini"), IoError);
    fs::remove_all(dir);
}

TEST_CASE("comments and blank lines are ignored") {
    RunConfig cfg;
    const std::string text = "# leading comment\n\n" + render_config(cfg) + "\n# trailing\n";
    CHECK_NOTHROW(parse_config_string(text));
}
