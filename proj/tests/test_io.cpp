#include "doctest.h"

#include "rd3/errors.hpp"
#include "rd3/io.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

using namespace rd3;

namespace {

std::string tmpdir() {
    const auto d = std::filesystem::temp_directory_path() / "rd3_test_io";
    std::filesystem::create_directories(d);
    return d.string();
}

}  // namespace

TEST_CASE("number formatting round-trips") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int k = 0; k < 2000; ++k) {
        const double x = U(rng) * std::pow(10.0, (k % 40) - 20);
        CHECK(std::stod(io::fmt(x)) == x);
    }
    CHECK(std::strtod(io::fmt(std::numeric_limits<double>::denorm_min()).c_str(), nullptr) == std::numeric_limits<double>::denorm_min());
}

TEST_CASE("csv round trip") {
    io::Table t;
    t.header = {"x", "u", "p"};
    std::mt19937_64 rng(5);
    std::normal_distribution<double> N;
    for (int i = 0; i < 100; ++i) t.rows.push_back({N(rng), N(rng) * 1e-9, N(rng) * 1e12});
    const auto path = tmpdir() + "/t.csv";
    io::write_csv(path, t);
    const auto r = io::read_csv(path);
    CHECK(r.header == t.header);
    CHECK(r.rows == t.rows);
    CHECK_THROWS_AS(io::read_csv(tmpdir() + "/missing.csv"), IoError);
}

TEST_CASE("config parsing and overrides") {
    const auto path = tmpdir() + "/c.cfg";
    {
        std::ofstream f(path);
        f << "# comment\n\neps = 0.02\nA0=0.4   # trailing\nD=2.5\nname = run1\nintervals=300\n";
    }
    auto cfg = io::read_config(path);
    CHECK(io::get(cfg, "eps", 0.0) == 0.02);
    CHECK(io::get(cfg, "A0", 0.0) == 0.4);
    CHECK(io::get_str(cfg, "name", "") == "run1");
    CHECK(io::get_int(cfg, "intervals", 0) == 300);
    CHECK(io::get(cfg, "L", 7.0) == 7.0);
    io::apply_overrides(cfg, {"A0=0.5", "B1=-1"});
    const auto p = io::params_from(cfg);
    CHECK(p.eps == 0.02);
    CHECK(p.A0 == 0.5);
    CHECK(p.B1 == -1.0);
    CHECK(p.D == 2.5);
    CHECK(p.L == 5.0);
    CHECK_THROWS_AS(io::apply_overrides(cfg, {"novalue"}), DomainError);
    CHECK_THROWS_AS(io::get(cfg, "name", 0.0), DomainError);
    CHECK_THROWS_AS(io::get_int(cfg, "eps", 0), DomainError);
    CHECK_THROWS_AS(io::read_config(tmpdir() + "/missing.cfg"), IoError);
}

TEST_CASE("params json") {
    const auto p = SystemParams::with_small_bc(0.01, 0.3, 1.0, -0.5, 3.0, 5.0);
    const auto j = io::to_json(p);
    CHECK(j.at("eps").get<double>() == 0.01);
    CHECK(j.at("C1").get<double>() == -0.5);
    CHECK(j.at("L").get<double>() == 5.0);
}
