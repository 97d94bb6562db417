#pragma once

// Independent reference computations used by the unit and acceptance tests.

#include "rd3/fastslow.hpp"
#include "rd3/melnikov.hpp"
#include "rd3/model.hpp"

#include <Eigen/Eigenvalues>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using State2 = std::array<double, 2>;

/// Eigenvalues of the 6x6 Jacobian of the first-order system at (ue, v = w = ue).
inline std::array<std::complex<double>, 6> jacobian_eigenvalues(const rd3::SystemParams& P, double ue) {
    const double e = P.eps, A = P.A(), B = P.B(), D = P.D;
    Eigen::Matrix<double, 6, 6> J = Eigen::Matrix<double, 6, 6>::Zero();
    // x-derivatives of (u, p, v, q, w, r)
    J(0, 1) = 1.0 / e;
    J(1, 0) = (3 * ue * ue - 1) / e;
    J(1, 2) = A / e;
    J(1, 4) = B / e;
    J(2, 3) = 1.0;
    J(3, 0) = -1.0;
    J(3, 2) = 1.0;
    J(4, 5) = 1.0 / D;
    J(5, 0) = -1.0 / D;
    J(5, 4) = 1.0 / D;
    Eigen::EigenSolver<Eigen::Matrix<double, 6, 6>> es(J, false);
    std::array<std::complex<double>, 6> out;
    for (int i = 0; i < 6; ++i) out[i] = es.eigenvalues()(i);
    return out;
}

/// Largest distance from an element of `a` to its nearest element of `b`.
template <class C1, class C2>
double set_distance(const C1& a, const C2& b) {
    double worst = 0.0;
    for (const auto& x : a) {
        double best = 1e300;
        for (const auto& y : b) best = std::min(best, std::abs(std::complex<double>(x) - std::complex<double>(y)));
        worst = std::max(worst, best);
    }
    return worst;
}

/// Number of sign changes of M(L - 2x) + C1 on n uniform samples of (0, L).
inline int dense_root_count(double A1, double B1, double C1, double D, double L, int n = 50000) {
    int count = 0;
    double prev = rd3::melnikov_M(L - 2.0 * (L / n) * 0.5, A1, B1, D, L) + C1;
    for (int k = 1; k < n; ++k) {
        const double x = L * (k + 0.5) / n;
        const double g = rd3::melnikov_M(L - 2.0 * x, A1, B1, D, L) + C1;
        if ((g > 0) != (prev > 0)) ++count;
        prev = g;
    }
    return count;
}

/// Homoclinic of u'' = u^3 - u + K by shooting along the unstable direction
/// of the base point; returns (u, p) at the requested xi <= 0 with the
/// extremum placed at xi = 0.
inline std::vector<State2> shoot_homoclinic(double K, const std::vector<double>& xis) {
    namespace ode = boost::numeric::odeint;
    const auto fc = rd3::FastConnection::homoclinic(K);
    const double u0 = fc.base(), lam = fc.rate();
    const double side = fc.extremal() < u0 ? -1.0 : 1.0;
    const double delta = 1e-9;
    auto rhs = [K](const State2& y, State2& dy, double) {
        dy[0] = y[1];
        dy[1] = y[0] * y[0] * y[0] - y[0] + K;
    };
    auto stepper = ode::make_dense_output(1e-15, 1e-15, ode::runge_kutta_dopri5<State2>());
    State2 y0{u0 + side * delta, side * lam * delta};
    stepper.initialize(y0, 0.0, 0.01);
    // advance until p changes sign (extremum of u)
    double t_ext = 0.0;
    for (;;) {
        const auto [t0, t1] = stepper.do_step(rhs);
        if (stepper.current_state()[1] * side <= 0.0) {
            double a = t0, b = t1;
            State2 ym;
            for (int k = 0; k < 200 && b - a > 1e-15 * (1 + std::abs(b)); ++k) {
                const double m = 0.5 * (a + b);
                stepper.calc_state(m, ym);
                (ym[1] * side > 0 ? a : b) = m;
            }
            t_ext = 0.5 * (a + b);
            break;
        }
        if (t1 > 500) return {};
    }
    // second pass with output at the requested times
    std::vector<double> times;
    for (double xi : xis) times.push_back(t_ext + xi);
    std::vector<State2> out;
    auto st2 = ode::make_dense_output(1e-15, 1e-15, ode::runge_kutta_dopri5<State2>());
    State2 y = y0;
    // integrate_times starts at the first listed time, so lead with t = 0
    std::vector<double> sorted = times;
    sorted.push_back(0.0);
    std::sort(sorted.begin(), sorted.end());
    std::vector<State2> at(sorted.size());
    std::size_t k = 0;
    ode::integrate_times(st2, rhs, y, sorted.begin(), sorted.end(), 0.01,
                         [&](const State2& s, double) { at[k++] = s; });
    for (double t : times) {
        const auto it = std::lower_bound(sorted.begin() + 1, sorted.end(), t);
        out.push_back(at[it - sorted.begin()]);
    }
    return out;
}

/// x-span of the slow orbit u' = -A0 q/(3u^2-1), q' = ((1-A0)u - u^3)/A0
/// from (-1, q*) back to u = -1.
inline double time_of_flight(double q_star, double A0) {
    namespace ode = boost::numeric::odeint;
    auto rhs = [A0](const State2& y, State2& dy, double) {
        dy[0] = -A0 * y[1] / (3 * y[0] * y[0] - 1);
        dy[1] = ((1 - A0) * y[0] - y[0] * y[0] * y[0]) / A0;
    };
    auto stepper = ode::make_dense_output(1e-15, 1e-15, ode::runge_kutta_dopri5<State2>());
    stepper.initialize(State2{-1.0, q_star}, 0.0, 1e-3);
    bool left = false;  // u has moved away from -1
    for (;;) {
        const auto [t0, t1] = stepper.do_step(rhs);
        const double u = stepper.current_state()[0];
        if (!left && std::abs(u + 1) > 1e-3) left = true;
        if (left) {
            State2 ya;
            stepper.calc_state(t0, ya);
            if ((ya[0] + 1) * (u + 1) <= 0.0) {
                double a = t0, b = t1;
                const double sa = ya[0] + 1;
                State2 ym;
                for (int k = 0; k < 200 && b - a > 1e-15 * (1 + b); ++k) {
                    const double m = 0.5 * (a + b);
                    stepper.calc_state(m, ym);
                    ((ym[0] + 1) * sa > 0 ? a : b) = m;
                }
                return 0.5 * (a + b);
            }
        }
        if (t1 > 1e4) return NAN;
    }
}

}  // namespace oracle
