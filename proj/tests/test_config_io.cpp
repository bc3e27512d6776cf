#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "bnkit/config.hpp"
#include "bnkit/io.hpp"

using namespace bnkit;

TEST_SUITE_BEGIN("config_io");

TEST_CASE("toml subset parsing") {
    const std::string text = R"(
# a comment
[model]
alpha = 0.01   # inline comment
kappa = 0.4

[dispersion]
kind = "renormalized_mass"
m_ren = 1.2
)";
    auto kv = parse_toml_lite(text);
    CHECK(kv.at("model.alpha") == "0.01");
    CHECK(kv.at("model.kappa") == "0.4");
    CHECK(kv.at("dispersion.kind") == "renormalized_mass");
    CHECK(kv.at("dispersion.m_ren") == "1.2");

    CHECK_THROWS_AS(parse_toml_lite("[bad\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_toml_lite("novalue\n"), std::invalid_argument);
}

TEST_CASE("config defaults, overrides, and typed accessors") {
    Config cfg;
    CHECK(cfg.alpha() == doctest::Approx(1.0 / 137.0));
    CHECK(cfg.kappa() == 0.5);
    CHECK(cfg.n_radial() == 64);
    CHECK(cfg.dispersion_kind() == "free");

    cfg.set("dispersion.kind=renormalized_mass");
    cfg.set("dispersion.m_ren=1.25");
    cfg.set("grid.n_radial=32");
    CHECK(cfg.dispersion().kind == DispersionModel::Kind::RenormalizedMass);
    CHECK(cfg.dispersion().m_ren == 1.25);
    CHECK(cfg.n_radial() == 32);

    CHECK_THROWS_AS(cfg.set("oops"), std::invalid_argument);

    // from_text validates: kappa > Lambda must throw
    CHECK_THROWS_AS(Config::from_text("[model]\nkappa = 2\nLambda = 1\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(Config::from_text("[schedule]\nbeta = 0.5\n"), std::invalid_argument);
    CHECK_THROWS_AS(Config::from_text("[dispersion]\nkind = \"weird\"\n"),
                    std::invalid_argument);
}

TEST_CASE("config hash tracks effective values only") {
    Config a, b;
    CHECK(a.hash() == b.hash());
    b.set("model.alpha=0.008");
    CHECK(a.hash() != b.hash());
    // output directory and thread count do not affect the hash
    Config c;
    c.set("run.out=/tmp/somewhere");
    c.set("run.threads=7");
    CHECK(c.hash() == a.hash());
}

TEST_CASE("g17 formatting round-trips doubles") {
    for (double v : {1.0 / 3.0, 2.718281828459045e-12, -9.87654321e17, 0.1}) {
        const std::string s = format_g17(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("csv writer enforces shape and formats deterministically") {
    CsvWriter csv({"a", "b"});
    csv.cell(0.1).cell(std::string("x"));
    csv.end_row();
    CHECK(csv.str() == "a,b\n0.10000000000000001,x\n");
    CsvWriter bad({"a", "b"});
    bad.cell(1.0);
    CHECK_THROWS_AS(bad.end_row(), std::logic_error);
}

TEST_CASE("atomic file writes land complete") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "bnkit_io_test";
    fs::create_directories(dir);
    const fs::path p = dir / "file.csv";
    write_file_atomic(p, "hello\n");
    CHECK(read_file(p) == "hello\n");
    write_file_atomic(p, "replaced\n");
    CHECK(read_file(p) == "replaced\n");
    fs::remove_all(dir);
}

TEST_SUITE_END();
