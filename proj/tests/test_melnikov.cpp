#include "doctest.h"
#include "oracles.hpp"

#include "rd3/errors.hpp"
#include "rd3/kernels.hpp"
#include "rd3/melnikov.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <random>

using namespace rd3;

TEST_CASE("M: values, oddness, extended precision") {
    CHECK(melnikov_M(0.0, 1.3, -0.7, 3, 5) == 0.0);
    CHECK(melnikov_M(5.0, 1.3, -0.7, 3, 5) == doctest::Approx(0.6).epsilon(1e-14));
    using big = boost::multiprecision::cpp_bin_float_50;
    const big z = 2, L = 5, D = 3;
    const big ref = sinh(z) / sinh(L) - big(3) / 10 * sinh(z / D) / sinh(L / D);
    CHECK(std::abs(melnikov_M(2.0, 1.0, -0.3, 3, 5) - ref.convert_to<double>()) < 1e-15);

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> U(-10, 10), Z(-5, 5);
    for (int k = 0; k < 1000; ++k) {
        const double a = U(rng), b = U(rng), zz = Z(rng);
        CHECK(melnikov_M(-zz, a, b, 3, 5) == doctest::Approx(-melnikov_M(zz, a, b, 3, 5)).epsilon(1e-14));
    }
}

TEST_CASE("D-tilde and D-hat ordering") {
    for (double D : {1.5, 3.0, 7.0})
        for (double L : {1.0, 5.0, 12.0}) {
            CHECK(dtilde(D, L) > 0.0);
            CHECK(dtilde(D, L) < 1.0);
            CHECK(dhat(D, L) > 1.0);
        }
    CHECK(dtilde(3, 5) == doctest::Approx(0.10320876430838825).epsilon(1e-14));
}

TEST_CASE("roots: C1 = 0 symmetric root and pitchfork pair") {
    const double Dt = dtilde(3, 5);
    for (double B1 : {-3.0, -0.5, 0.0, 2.0}) {
        const auto a = find_roots(1.0, B1, 0.0, 3, 5);
        bool half = false;
        for (const auto& r : a.roots) half = half || std::abs(r.x - 2.5) < 1e-12;
        CHECK(half);
    }
    const auto a = find_roots(1.0, -0.5, 0.0, 3, 5);
    REQUIRE(a.count() == 3);
    CHECK(a.roots[0].x + a.roots[2].x == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(a.roots[1].x == doctest::Approx(2.5));
    const auto b = find_roots(1.0, -0.9 * Dt, 0.0, 3, 5);
    CHECK(b.count() == 1);
}

TEST_CASE("roots: residual and stability flag") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> U(-10, 10);
    const MelnikovGrid grid(3, 5);
    for (int k = 0; k < 300; ++k) {
        const double a = U(rng), b = U(rng), c = U(rng) / 5;
        for (const auto& r : grid.find_roots(a, b, c).roots) {
            const double z = 5 - 2 * r.x;
            CHECK(std::abs(melnikov_M(z, a, b, 3, 5) + c) < 1e-10 * (std::abs(a) + std::abs(b) + std::abs(c)));
            if (r.multiplicity == 1)
                CHECK((r.stability == Stability::Stable) == (melnikov_dM(z, a, b, 3, 5) < 0));
        }
    }
}

TEST_CASE("roots: dense bisection oracle at (8, -2), C1 = -1") {
    const auto a = find_roots(8.0, -2.0, -1.0, 3, 5);
    std::vector<double> ref;
    const int n = 1000000;
    auto g = [](double x) { return melnikov_M(5 - 2 * x, 8.0, -2.0, 3, 5) - 1.0; };
    double prev = g(0.5 * 5.0 / n);
    for (int k = 1; k < n; ++k) {
        const double x = 5.0 * (k + 0.5) / n;
        const double cur = g(x);
        if ((cur > 0) != (prev > 0)) {
            double lo = x - 5.0 / n, hi = x;
            for (int it = 0; it < 60; ++it) {
                const double m = 0.5 * (lo + hi);
                ((g(m) > 0) == (prev > 0) ? lo : hi) = m;
            }
            ref.push_back(0.5 * (lo + hi));
        }
        prev = cur;
    }
    REQUIRE(a.count() == static_cast<int>(ref.size()));
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(a.roots[i].x == doctest::Approx(ref[i]).epsilon(1e-12));
}

TEST_CASE("roots: necessary condition and large-A1 asymptote") {
    CHECK(find_roots(0.0, 0.0, -1.0, 3, 5).count() == 0);
    const double C1 = -1, L = 5;
    auto err = [&](double A1) {
        const auto a = find_roots(A1, 1.0, C1, 3, L);
        REQUIRE(a.count() == 1);
        return std::abs(a.roots[0].x - (L / 2 + C1 * std::sinh(L) / (2 * A1)));
    };
    // O(A1^-2): a tenfold A1 reduces the error about a hundredfold
    const double r = err(1000.0) / err(100.0);
    CHECK(r < 0.015);
    CHECK(r > 0.005);
}

TEST_CASE("roots: count oracle over 1000 random draws") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> U(-10, 10);
    const MelnikovGrid grid(3, 5);
    int mismatch = 0;
    for (int k = 0; k < 1000; ++k) {
        const double a = U(rng), b = U(rng), c = U(rng) / 4;
        const auto r = grid.find_roots(a, b, c);
        int simple = 0;
        for (const auto& x : r.roots) simple += x.multiplicity == 1;
        if (r.boundary_root) continue;
        if (simple != oracle::dense_root_count(a, b, c, 3, 5)) ++mismatch;
    }
    CHECK(mismatch == 0);
}

TEST_CASE("saddle-node curve") {
    const double C1 = -1, D = 3, L = 5, Dh = dhat(D, L);
    for (int s : {1, -1}) {
        const auto [a, b] = saddle_node_curve(s * L, C1, D, L);
        CHECK(a == doctest::Approx(s * C1 / (Dh - 1)).epsilon(1e-12));
        CHECK(b == doctest::Approx(-s * C1 * Dh / (Dh - 1)).epsilon(1e-12));
        CHECK(b == doctest::Approx(-s * C1 - a).epsilon(1e-12));
    }
    const auto [a0, b0] = saddle_node_curve(1e-4, C1, D, L);
    CHECK(b0 / a0 == doctest::Approx(-dtilde(D, L)).epsilon(1e-6));
    const auto [a, b] = saddle_node_curve(2.5, C1, D, L);
    CHECK(std::abs(melnikov_M(2.5, a, b, D, L) + C1) < 1e-12);
    CHECK(std::abs(melnikov_dM(2.5, a, b, D, L)) < 1e-12 * (std::abs(a) + std::abs(b)));
    CHECK_THROWS_AS(saddle_node_curve(0.0, C1, D, L), DomainError);
}

TEST_CASE("pitchfork window and triple root") {
    const auto w0 = pitchfork_window(0.0, 3, 5);
    CHECK(w0.first == 0.0);
    CHECK(w0.second == 0.0);
    const double Dt = dtilde(3, 5);
    const auto w1 = pitchfork_window(1.0, 3, 5);
    CHECK(w1.first == -1.0);
    CHECK(w1.second == doctest::Approx(-Dt));

    const double Bp = pitchfork_B1(1.0, 3, 5, -0.5, 0.0);
    CHECK(std::abs(Bp + Dt) < 1e-8);
    const auto a = find_roots(1.0, -Dt, 0.0, 3, 5);
    REQUIRE(a.count() == 1);
    CHECK(a.roots[0].multiplicity == 3);
    CHECK(a.roots[0].stability == Stability::Degenerate);
}

TEST_CASE("region map: serial and OpenMP kernels agree") {
    const MelnikovGrid grid(3, 5, 1024);
    const BoundarySet bounds(-1, 3, 5);
    std::vector<double> ax;
    for (int i = 0; i < 24; ++i) ax.push_back(-10 + 20 * (i + 0.5) / 24);
    const auto s = kernels::region_map_serial(grid, bounds, ax, ax, -1);
    const auto p = kernels::region_map_omp(grid, bounds, ax, ax, -1);
    REQUIRE(s.size() == p.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        CHECK(s[k].count == p[k].count);
        CHECK(s[k].distance == p[k].distance);
    }
    const auto info = classify_region(5.0, 5.0, -1.0, 3, 5);
    CHECK(info.count >= 0);
}
