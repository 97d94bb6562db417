#pragma once

#include "rd3/melnikov.hpp"
#include "rd3/model.hpp"

#include <utility>
#include <vector>

namespace rd3 {

enum class Segment { I1, I3, I5 };

struct SlowValues {
    double u0 = 0, v = 0, q = 0, w = 0, r = 0;
};

/// Leading-order slow profile on I1 = [-L, -x**], I3 = [-x**, x**] or I5 = [x**, L].
SlowValues slow_segment(Segment seg, double x, double x2, double D, double L);

struct JumpValues {
    double v = 0, q = 0, w = 0, r = 0;
};

/// Two-transition solution for A, B, C all of order eps.
struct TwoPulseSmallSolution {
    double A1 = 0, B1 = 0, C1 = 0, D = 3, L = 5, eps = 0.01;
    double x_star = 0, x_2star = 0;
    JumpValues at_star, at_2star;  // slow values at x* and x**
    Stability stability = Stability::Stable;

    SystemParams params() const;
    PhasePoint state(double x) const;
    /// Leading-order mass 2L - 4 x**.
    double mass() const { return 2.0 * L - 4.0 * x_2star; }
};

TwoPulseSmallSolution build_two_pulse_small(double A1, double B1, double C1, double D, double L, double eps,
                                            int root_index);

struct LimitDiagnostics {
    std::vector<std::pair<double, double>> x2_vs_L;  // (L, smallest root x**) on a doubling L sweep
    double x2 = 0;                                   // root nearest L/2 at the given L
    double x2_asymptote = 0;                         // L/2 + C1 sinh(L)/(2 A1)
    double v2 = 0;                                   // v** at that root
    double v2_asymptote = 0;                         // -C1/A1
};

LimitDiagnostics limit_checks(double A1, double B1, double C1, double D, double L);

}  // namespace rd3
