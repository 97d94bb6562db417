#include "doctest.h"
#include "oracles.hpp"

#include "rd3/errors.hpp"
#include "rd3/fastslow.hpp"
#include "rd3/quadrature.hpp"

#include <boost/math/tools/roots.hpp>

using namespace rd3;

namespace {

double bisect_cubic(double K, double lo, double hi) {
    auto f = [K](double u) { return u * u * u - u + K; };
    boost::math::tools::eps_tolerance<double> tol(52);
    std::uintmax_t it = 200;
    const auto r = boost::math::tools::bisect(f, lo, hi, tol, it);
    return 0.5 * (r.first + r.second);
}

}  // namespace

TEST_CASE("slow manifold: K and branch roots") {
    SystemParams p = SystemParams::with_small_bc(0.01, 0.5, 3.0, 1.0, 3.0, 5.0);
    CHECK(k_of(p, 0.0, 0.0) == 0.0);
    CHECK(k_of(p, 0.7, -5.0) == doctest::Approx(0.35));
    CHECK(k_of(p, std::sqrt(0.5), 0.0) == doctest::Approx(0.5 * std::sqrt(0.5)));

    CHECK(slow_manifold_u(0.0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(slow_manifold_u(kFoldK, 1) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-7));
    const double um = slow_manifold_u(0.2, -1);
    CHECK(um < -1.0 / std::sqrt(3.0));
    CHECK(um == doctest::Approx(bisect_cubic(0.2, -2.0, -1.0 / std::sqrt(3.0))).epsilon(1e-14));
    CHECK_THROWS_AS(slow_manifold_u(0.5, 1), DomainError);
}

TEST_CASE("heteroclinic: explicit tanh front") {
    for (int sign : {1, -1}) {
        const auto h = FastConnection::heteroclinic(sign);
        const auto [u0, p0] = h(0.0);
        CHECK(std::abs(u0) < 1e-15);
        CHECK(p0 == doctest::Approx(sign / std::sqrt(2.0)));
        CHECK(h(60.0).first == doctest::Approx(sign).epsilon(1e-15));
        for (double xi = -20; xi <= 20; xi += 0.37) {
            const auto [u, p] = h(xi);
            // first integral p^2 = (1 - u^2)^2 / 2 and p = u_xi
            CHECK(std::abs(p * p - 0.5 * (1 - u * u) * (1 - u * u)) < 1e-15);
            const double d = 1e-3;
            const double fd = (-h(xi + 2 * d).first + 8 * h(xi + d).first - 8 * h(xi - d).first + h(xi - 2 * d).first) /
                              (12 * d);
            CHECK(std::abs(fd - p) < 1e-11);
            // u_xixi = u^3 - u via the p derivative
            const double fdp = (-h(xi + 2 * d).second + 8 * h(xi + d).second - 8 * h(xi - d).second +
                                h(xi - 2 * d).second) /
                               (12 * d);
            CHECK(std::abs(fdp - (u * u * u - u)) < 1e-11);
        }
    }
}

TEST_CASE("homoclinic: extremal point limits") {
    CHECK(persisting_extremal(1e-10, 1) == doctest::Approx(-1.0).epsilon(1e-4));
    CHECK(persisting_extremal(1e-10, -1) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(persisting_extremal(2.0 / 3.0, 1) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(persisting_extremal(0.3, 1) == doctest::Approx(std::sqrt(0.6) - std::sqrt(0.7)).epsilon(1e-14));
    const auto h = FastConnection::homoclinic(0.3 * std::sqrt(0.7));
    CHECK(h.extremal() == doctest::Approx(std::sqrt(0.6) - std::sqrt(0.7)).epsilon(1e-13));
    CHECK(h.base() == doctest::Approx(std::sqrt(0.7)).epsilon(1e-14));
}

TEST_CASE("homoclinic: existence window") {
    CHECK_THROWS_AS(FastConnection::homoclinic(0.0), DomainError);
    CHECK_THROWS_AS(FastConnection::homoclinic(0.39), DomainError);
    CHECK_NOTHROW(FastConnection::homoclinic(0.38));
}

TEST_CASE("homoclinic: energy conservation and symmetry") {
    for (double K : {0.05, 0.2, 0.35}) {
        const auto h = FastConnection::homoclinic(K);
        const auto hm = FastConnection::homoclinic(-K);
        const double E0 = h.energy(h.base(), 0.0);
        for (double xi = -25; xi <= 25; xi += 0.5) {
            const auto [u, p] = h(xi);
            CHECK(std::abs(h.energy(u, p) - E0) < 1e-12);
            const auto [um, pm] = hm(xi);
            CHECK(std::abs(um + u) < 1e-14);
            CHECK(std::abs(pm + p) < 1e-14);
            const auto [ur, pr] = h(-xi);
            CHECK(std::abs(ur - u) < 1e-14);
            CHECK(std::abs(pr + p) < 1e-14);
        }
        CHECK(hm.J1() == doctest::Approx(-h.J1()).epsilon(1e-14));
    }
}

TEST_CASE("homoclinic: J1 closed form against quadrature") {
    for (double K : {0.1, 0.3 * std::sqrt(0.7), 0.35}) {
        const auto h = FastConnection::homoclinic(K);
        const double q = 2.0 * integrate_adaptive([&](double xi) { return h.base() - h(xi).first; }, 0.0, 60.0, 1e-14);
        CHECK(h.J1() == doctest::Approx(q).epsilon(1e-11));
    }
}

TEST_CASE("homoclinic: profile against shooting") {
    std::vector<double> xis;
    for (double xi = -12.0; xi <= 0.0; xi += 0.25) xis.push_back(xi);
    const auto h = FastConnection::homoclinic(0.2);
    const auto ref = oracle::shoot_homoclinic(0.2, xis);
    REQUIRE(ref.size() == xis.size());
    double worst = 0;
    for (std::size_t k = 0; k < xis.size(); ++k) {
        const auto [u, p] = h(xis[k]);
        worst = std::max({worst, std::abs(u - ref[k][0]), std::abs(p - ref[k][1])});
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("reduced slow flow") {
    const auto p = SystemParams::with_small_bc(0.01, 0.4, 1.0, 0.0, 3.0, 5.0);
    const double u0 = std::sqrt(0.6);
    const auto d0 = reduced_slow_rhs(p, {u0, 0.0, u0, 0.0}, 1);
    for (double x : d0) CHECK(std::abs(x) < 1e-14);

    SystemParams z = p;
    z.A0 = 0.0;
    const auto d1 = reduced_slow_rhs(z, {0.3, 0.2, -0.1, 0.6}, 1);
    CHECK(d1[0] == doctest::Approx(0.2));
    CHECK(d1[1] == doctest::Approx(0.3 - 1.0));
    CHECK(d1[2] == doctest::Approx(0.6 / 3.0));
    CHECK(d1[3] == doctest::Approx((-0.1 - 1.0) / 3.0));

    const std::array<double, 4> s{0.5, 0.3, -0.2, 0.1};
    const auto d = reduced_slow_rhs(p, s, 1);
    const double u = bisect_cubic(0.4 * 0.5, 1.0 / std::sqrt(3.0), 2.0);
    CHECK(d[0] == doctest::Approx(0.3));
    CHECK(d[1] == doctest::Approx(0.5 - u).epsilon(1e-13));
    CHECK(d[2] == doctest::Approx(0.1 / 3.0));
    CHECK(d[3] == doctest::Approx((-0.2 - u) / 3.0).epsilon(1e-13));
}
