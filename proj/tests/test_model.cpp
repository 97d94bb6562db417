#include "doctest.h"
#include "oracles.hpp"

#include "rd3/errors.hpp"
#include "rd3/model.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <random>

using namespace rd3;

TEST_CASE("params: validation and decomposition") {
    auto p = SystemParams::with_small_bc(0.01, 0.3, 1.0, -2.0, 3.0, 5.0);
    CHECK(p.small_bc());
    CHECK(p.A() == 0.3);
    CHECK(p.B() == 0.01);
    CHECK(p.C() == -0.02);
    p.validate();
    p.D = 1.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p.D = 3.0;
    p.eps = 0.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p.eps = 0.01;
    p.L = NAN;
    CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("equilibria: closed-form cases") {
    SystemParams p;
    auto e = equilibria(p);
    REQUIRE(e.size() == 3);
    CHECK(e[0].ue == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(std::abs(e[1].ue) < 1e-15);
    CHECK(e[2].ue == doctest::Approx(1.0).epsilon(1e-15));

    p.A0 = 2.0 / 3.0;
    e = equilibria(p);
    REQUIRE(e.size() == 3);
    CHECK(e[2].ue == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
}

TEST_CASE("equilibria: residual and companion-matrix cross-check") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int k = 0; k < 500; ++k) {
        SystemParams p;
        p.A0 = U(rng);
        p.B0 = 0.5 * U(rng);
        p.C0 = 0.5 * U(rng);
        const double a = 1 - p.A() - p.B();
        const auto e = equilibria(p);
        Eigen::Matrix3d comp = Eigen::Matrix3d::Zero();
        comp(0, 1) = a;
        comp(0, 2) = -p.C();
        comp(1, 0) = 1;
        comp(2, 1) = 1;
        Eigen::EigenSolver<Eigen::Matrix3d> es(comp, false);
        std::vector<double> real;
        for (int i = 0; i < 3; ++i)
            if (std::abs(es.eigenvalues()(i).imag()) < 1e-9) real.push_back(es.eigenvalues()(i).real());
        int total = 0;
        for (const auto& q : e) {
            CHECK(std::abs(q.ue * q.ue * q.ue - q.ue * a + p.C()) < 1e-13);
            total += q.multiplicity;
        }
        CHECK(total == static_cast<int>(real.size()));
    }
}

TEST_CASE("equilibria: fold reports a double root") {
    // t^3 - t + 2/(3 sqrt 3) has a double root at 1/sqrt 3
    const auto r = depressed_cubic_roots(-1.0, 2.0 / (3.0 * std::sqrt(3.0)));
    REQUIRE(r.roots.size() == 2);
    CHECK(r.multiplicity[1] == 2);
    CHECK(r.roots[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(r.roots[0] == doctest::Approx(-2.0 / std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("linearize: leading order and imaginary fast pair") {
    SystemParams p;
    p.eps = 0.0;
    p.A0 = 0.5;
    const auto lin = linearize(p, std::sqrt(0.5));
    CHECK(std::abs(lin.eigenvalues[0] * lin.eigenvalues[0] - 0.5) < 1e-14);
    for (int i = 2; i < 6; ++i) CHECK(std::abs(lin.eigenvalues[i]) < 1e-8);
    CHECK(lin.fast == FastType::Hyperbolic);

    const auto r = SystemParams::with_small_bc(0.01, 0.9, 0.0, 0.0, 3.0, 5.0);
    const auto l3 = linearize(r, std::sqrt(0.1));
    CHECK(l3.fast == FastType::Elliptic);
    CHECK(std::abs(l3.eigenvalues[0].real()) < 1e-12);
}

TEST_CASE("linearize: six roots against the 6x6 Jacobian") {
    const auto p = SystemParams::with_small_bc(0.01, 0.5, 1.0, 0.0, 3.0, 5.0);
    const auto e = equilibria(p);
    const double ue = e.back().ue;
    const auto lin = linearize(p, ue);
    auto ref = oracle::jacobian_eigenvalues(p, ue);
    for (auto& z : ref) z *= p.eps;  // fast scaling mu = eps lambda
    double scale = 0;
    for (auto z : ref) scale = std::max(scale, std::abs(z));
    CHECK(oracle::set_distance(lin.eigenvalues, ref) < 1e-9 * scale);
    CHECK(oracle::set_distance(ref, lin.eigenvalues) < 1e-9 * scale);
}

TEST_CASE("hamiltonian: values and gradient") {
    SystemParams p;
    CHECK(hamiltonian(p, PhasePoint{}) == 0.0);
    CHECK(hamiltonian(p, PhasePoint{1, 0, 1, 0, 1, 0}) == doctest::Approx(0.25));

    p.A0 = 0.3;
    p.B0 = 0.1;
    p.C0 = 0.05;
    using big = boost::multiprecision::cpp_bin_float_50;
    const PhasePoint s{1, 0, 1, 0, 1, 0};
    const big A = 0.3, B = 0.1, C = 0.05, one = 1;
    const big ref = -one / 4 + one / 2 - (-A / 2 - B / 2 + (A + B + C));
    CHECK(std::abs(hamiltonian(p, s) - ref.convert_to<double>()) < 1e-15);

    // gradient by central differences and the orthogonality grad H . f = 0
    const PhasePoint y{0.3, -0.2, 0.5, 0.1, -0.4, 0.7};
    const PhasePoint g = hamiltonian_gradient(p, y);
    const PhasePoint f = slow_rhs(p, y);
    double dot = 0;
    for (int i = 0; i < 6; ++i) {
        PhasePoint a = y, b = y;
        a[i] += 1e-6;
        b[i] -= 1e-6;
        CHECK((hamiltonian(p, a) - hamiltonian(p, b)) / 2e-6 == doctest::Approx(g[i]).epsilon(1e-8));
    }
    for (int i = 0; i < 6; ++i) dot += g[i] * f[i];
    CHECK(std::abs(dot) < 1e-12);
}

TEST_CASE("turing curve: leading order and first correction") {
    CHECK(turing_curve(0.0, 5.0, 1.0, 1) == doctest::Approx(2.0 / 3.0));
    CHECK(turing_curve(0.01, 1.0, 0.0, 1) ==
          doctest::Approx(2.0 / 3.0 + 0.01 * (2 * std::sqrt(2.0) / (3 * std::sqrt(3.0)) - 1)).epsilon(1e-15));
}

TEST_CASE("degenerate flag near 3 ue^2 = 1") {
    const auto p = SystemParams::with_small_bc(0.01, 2.0 / 3.0, 0.0, 0.0, 3.0, 5.0);
    const auto lin = linearize(p, 1.0 / std::sqrt(3.0));
    CHECK(lin.degenerate);
    CHECK(lin.fast == FastType::TuringDegenerate);
}
