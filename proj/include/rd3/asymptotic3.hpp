#pragma once

#include "rd3/model.hpp"

#include <memory>
#include <string>
#include <vector>

namespace rd3 {

/// V(u) = (u^2/4)(A0(2 - 3u^2) - 2(u^2 - 1)^2) and its derivative.
double potential_V(double u, double A0);
double potential_dV(double u, double A0);
/// E(u, q) = A0^2 q^2 / 2 + V(u).
double energy_E(double u, double q, double A0);
/// Energy level (A0/4)(2 A0 q*^2 - 1) through (-1, q*).
double energy_level(double q_star, double A0);

enum class A0Case { Aneg, Asmall, Alarge };
std::string to_string(A0Case c);
A0Case a0_case(double A0);

/// Supremum of |q*| for which the slow orbit returns to u = -1.
double qstar_bound(double A0);

/// Turning point of the I3 orbit: E(u, 0) = E* inside the case bracket.
double turning_point(double q_star, double A0);

/// Half-period L as a function of q*; RangeError outside the admissible interval.
double half_length(double q_star, double A0);

/// 6 log((sqrt6 + sqrt(9A0-2)) / (sqrt2 + sqrt(9A0-6))), A0 >= 2/3.
double l_max(double A0);
/// A0 >= 2/3 with l_max(A0) = L.
double a0_for_lmax(double L);

/// q* < 0 with half_length(q*) = L.
double solve_for_qstar(double L, double A0);

/// Slow orbit on I3 parameterised by s, u = u_t + sigma s^2, with
/// cumulative tables for the x(u) inversion and the w, r kernels.
class SlowPhaseOrbit;

/// Two-transition solution at A0 != 0 with interfaces at -+L/2.
class TwoPulseLargeSolution {
public:
    TwoPulseLargeSolution(double A0, double D, double L, double eps);
    ~TwoPulseLargeSolution();
    TwoPulseLargeSolution(const TwoPulseLargeSolution&);
    TwoPulseLargeSolution& operator=(const TwoPulseLargeSolution&);

    double A0() const { return A0_; }
    double D() const { return D_; }
    double L() const { return L_; }
    double eps() const { return eps_; }
    double q_star() const { return qs_; }
    double E_star() const { return Es_; }
    double turning() const { return ut_; }
    A0Case a0case() const { return case_; }

    /// Leading-order slow state on the segment containing x (u, q, v, w, r; p = 0).
    PhasePoint slow_state(double x) const;
    /// Composite with tanh layers at -+L/2.
    PhasePoint state(double x) const;

    /// r at the interface x** = L/2 (left limit) and x* = -L/2.
    double r_2star() const;
    double r_star() const;

private:
    double A0_, D_, L_, eps_;
    double qs_, Es_, ut_;
    A0Case case_;
    std::unique_ptr<SlowPhaseOrbit> orbit_;
    double I0_ = 0.0;  // int_0^{L/2} sinh((L - 2 xi)/(2D)) u(xi) dxi
};

TwoPulseLargeSolution build_two_pulse_large(double A0, double D, double L, double eps);

}  // namespace rd3
