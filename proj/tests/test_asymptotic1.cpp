#include "doctest.h"

#include "rd3/asymptotic1.hpp"
#include "rd3/errors.hpp"

using namespace rd3;

namespace {

template <class F>
double fd(F f, double x, double h = 1e-4) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

}  // namespace

TEST_CASE("one-pulse: plateau and extremum") {
    const auto p = SystemParams::with_small_bc(0.01, 0.3, 1.0, 0.0, 3.0, 5.0);
    const auto s = build_one_pulse(p, 1, 5.0);
    CHECK(s.plateau == doctest::Approx(std::sqrt(0.7)).epsilon(1e-15));
    CHECK(s.fast.extremal() == doctest::Approx(std::sqrt(0.6) - std::sqrt(0.7)).epsilon(1e-13));
    CHECK(s.state(0.0, false).u == doctest::Approx(std::sqrt(0.6) - std::sqrt(0.7)).epsilon(1e-9));
    CHECK(s.has_corrections);
    CHECK(s.warnings.empty());
}

TEST_CASE("one-pulse: sign symmetry") {
    const auto p = SystemParams::with_small_bc(0.01, 0.3, 1.0, 0.0, 3.0, 5.0);
    const auto a = build_one_pulse(p, 1, 5.0), b = build_one_pulse(p, -1, 5.0);
    for (double x = -5; x <= 5; x += 0.173) {
        const auto ya = a.state(x), yb = b.state(x);
        for (int i = 0; i < 6; ++i) CHECK(std::abs(ya[i] + yb[i]) < 1e-12);
    }
}

TEST_CASE("one-pulse: existence window and preconditions") {
    auto p = SystemParams::with_small_bc(0.01, 0.7, 1.0, 0.0, 3.0, 5.0);
    CHECK_THROWS_AS(build_one_pulse(p, 1, 5.0), ExistenceError);
    p.A0 = 0.0;
    CHECK_THROWS_AS(build_one_pulse(p, 1, 5.0), ExistenceError);
    p.A0 = 0.3;
    p.B0 = 0.1;
    CHECK_THROWS_AS(build_one_pulse(p, 1, 5.0), DomainError);
    // within sqrt(eps) of the window edge: built with a warning
    const auto q = SystemParams::with_small_bc(0.01, 2.0 / 3.0 - 0.05, 1.0, 0.0, 3.0, 5.0);
    CHECK_FALSE(build_one_pulse(q, 1, 5.0).warnings.empty());
}

TEST_CASE("slow-manifold correction") {
    const auto p = SystemParams::with_small_bc(0.01, 0.3, 0.0, 0.0, 3.0, 5.0);
    const double v = std::sqrt(0.7);
    const auto [u0, p0] = slow_manifold_correction(p, v, 0.0, v, 0.0, 1);
    CHECK(std::abs(u0) < 1e-15);
    CHECK(std::abs(p0) < 1e-15);
    const auto [u1, p1] = slow_manifold_correction(p, v, 1.0, v, 0.0, 1);
    CHECK(p1 == doctest::Approx(0.3 / (1 - 3 * 0.7)).epsilon(1e-12));
    const auto [u2, p2] = slow_manifold_correction(p, v, -1.0, v, 0.0, 1);
    CHECK(p2 == doctest::Approx(-p1));
    (void)u1;
    (void)u2;
}

TEST_CASE("correction profiles: constants, jumps, derivatives") {
    const auto p = SystemParams::with_small_bc(0.01, 0.3, 1.0, -0.5, 3.0, 5.0);
    const auto c = correction_profiles(p, 1, 5.0);
    CHECK(c.M == doctest::Approx(std::sqrt(2 * 0.7 / (2 - 0.9))).epsilon(1e-15));
    CHECK(c.N == doctest::Approx(0.3 / (2 - 0.9)).epsilon(1e-15));
    const double d = 1e-12;
    CHECK(c.q1(d) - c.q1(-d) == doctest::Approx(c.J1).epsilon(1e-9));
    CHECK(c.r1(d) - c.r1(-d) == doctest::Approx(c.J1 / c.D).epsilon(1e-9));
    CHECK(std::abs(c.v1(d) - c.v1(-d)) < 1e-9);
    CHECK(std::abs(c.w1(d) - c.w1(-d)) < 1e-9);
    CHECK(std::abs(c.q1(5.0)) < 1e-14);
    CHECK(std::abs(c.r1(-5.0)) < 1e-14);
    for (double x : {-4.1, -2.0, -0.3, 0.7, 3.3}) {
        CHECK(fd([&](double t) { return c.v1(t); }, x) == doctest::Approx(c.q1(x)).epsilon(1e-8));
        CHECK(fd([&](double t) { return c.w1(t); }, x) * c.D == doctest::Approx(c.r1(x)).epsilon(1e-8));
    }

    auto small = SystemParams::with_small_bc(0.01, 1e-10, 0.0, 0.0, 3.0, 5.0);
    const auto c0 = correction_profiles(small, 1, 5.0);
    CHECK(c0.M == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(c0.N == doctest::Approx(0.0).epsilon(1e-9));
}
