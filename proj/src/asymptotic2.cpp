#include "rd3/asymptotic2.hpp"

#include "rd3/errors.hpp"

#include <cmath>
#include <limits>

namespace rd3 {

SlowValues slow_segment(Segment seg, double x, double x2, double D, double L) {
    const double sL = std::sinh(L), sLD = std::sinh(L / D);
    const double tol = 1e-12 * L;
    SlowValues s;
    switch (seg) {
        case Segment::I1: {
            if (x < -L - tol || x > -x2 + tol) throw IntervalError("slow_segment: x outside I1");
            const double a = 2.0 * std::sinh(x2) / sL, b = 2.0 * std::sinh(x2 / D) / sLD;
            s.u0 = 1.0;
            s.v = 1.0 - a * std::cosh(L + x);
            s.q = -a * std::sinh(L + x);
            s.w = 1.0 - b * std::cosh((L + x) / D);
            s.r = -b / D * std::sinh((L + x) / D);
            break;
        }
        case Segment::I3: {
            if (std::abs(x) > x2 + tol) throw IntervalError("slow_segment: x outside I3");
            const double a = 2.0 * std::sinh(L - x2) / sL, b = 2.0 * std::sinh((L - x2) / D) / sLD;
            s.u0 = -1.0;
            s.v = -1.0 + a * std::cosh(x);
            s.q = a * std::sinh(x);
            s.w = -1.0 + b * std::cosh(x / D);
            s.r = b / D * std::sinh(x / D);
            break;
        }
        case Segment::I5: {
            if (x < x2 - tol || x > L + tol) throw IntervalError("slow_segment: x outside I5");
            const double a = 2.0 * std::sinh(x2) / sL, b = 2.0 * std::sinh(x2 / D) / sLD;
            s.u0 = 1.0;
            s.v = 1.0 - a * std::cosh(L - x);
            s.q = a * std::sinh(L - x);
            s.w = 1.0 - b * std::cosh((L - x) / D);
            s.r = b / D * std::sinh((L - x) / D);
            break;
        }
    }
    return s;
}

SystemParams TwoPulseSmallSolution::params() const {
    SystemParams P = SystemParams::all_small(eps, A1, B1, C1, D, L);
    return P;
}

PhasePoint TwoPulseSmallSolution::state(double x) const {
    const double x2 = x_2star;
    const double s = std::sqrt(2.0) * eps;
    const double a = (x - x2) / s, b = (x + x2) / s;
    PhasePoint y;
    y.u = 1.0 + std::tanh(a) - std::tanh(b);
    const double sa = 1.0 / std::cosh(a), sb = 1.0 / std::cosh(b);
    y.p = (sa * sa - sb * sb) / std::sqrt(2.0);
    Segment seg = x < -x2 ? Segment::I1 : (x > x2 ? Segment::I5 : Segment::I3);
    const auto sv = slow_segment(seg, x, x2, D, L);
    y.v = sv.v;
    y.q = sv.q;
    y.w = sv.w;
    y.r = sv.r;
    return y;
}

TwoPulseSmallSolution build_two_pulse_small(double A1, double B1, double C1, double D, double L, double eps,
                                            int root_index) {
    const auto an = find_roots(A1, B1, C1, D, L);
    if (root_index < 0 || root_index >= an.count()) {
        if (an.boundary_root) throw BoundaryRootError("build_two_pulse_small: Melnikov root at the end of (0, L)");
        throw NoRootError("build_two_pulse_small: Melnikov condition has too few roots");
    }
    TwoPulseSmallSolution s;
    s.A1 = A1;
    s.B1 = B1;
    s.C1 = C1;
    s.D = D;
    s.L = L;
    s.eps = eps;
    const auto& root = an.roots[root_index];
    const double x2 = root.x;
    s.x_2star = x2;
    s.x_star = -x2;
    s.stability = root.stability;
    const double sL = std::sinh(L), sLD = std::sinh(L / D);
    s.at_2star.v = std::sinh(L - 2 * x2) / sL;
    s.at_2star.q = 2 * std::sinh(x2) / sL * std::sinh(L - x2);
    s.at_2star.w = std::sinh((L - 2 * x2) / D) / sLD;
    s.at_2star.r = 2 * std::sinh(x2 / D) / (D * sLD) * std::sinh((L - x2) / D);
    s.at_star = {s.at_2star.v, -s.at_2star.q, s.at_2star.w, -s.at_2star.r};
    return s;
}

LimitDiagnostics limit_checks(double A1, double B1, double C1, double D, double L) {
    LimitDiagnostics d;
    for (double Lk = L; Lk <= 16.0 * L; Lk *= 2.0) {
        const auto an = find_roots(A1, B1, C1, D, Lk);
        d.x2_vs_L.push_back({Lk, an.count() ? an.roots.front().x : std::numeric_limits<double>::quiet_NaN()});
    }
    const auto an = find_roots(A1, B1, C1, D, L);
    d.x2_asymptote = L / 2 + C1 * std::sinh(L) / (2 * A1);
    d.x2 = std::numeric_limits<double>::quiet_NaN();
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : an.roots)
        if (std::abs(r.x - L / 2) < best) {
            best = std::abs(r.x - L / 2);
            d.x2 = r.x;
        }
    d.v2 = std::sinh(L - 2 * d.x2) / std::sinh(L);
    d.v2_asymptote = -C1 / A1;
    return d;
}

}  // namespace rd3
