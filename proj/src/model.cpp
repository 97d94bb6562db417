#include "rd3/model.hpp"

#include "rd3/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rd3 {

namespace {

bool all_finite(std::initializer_list<double> xs) {
    return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

double polish_cubic(double t, double p, double q) {
    for (int it = 0; it < 2; ++it) {
        const double f = (t * t + p) * t + q;
        const double df = 3.0 * t * t + p;
        if (df == 0.0) break;
        const double tn = t - f / df;
        const double fn = (tn * tn + p) * tn + q;
        if (!(std::abs(fn) < std::abs(f))) break;
        t = tn;
    }
    return t;
}

using cplx = std::complex<double>;

cplx eval_cubic(const std::array<double, 4>& c, cplx s) {
    return ((c[0] * s + c[1]) * s + c[2]) * s + c[3];
}

cplx eval_cubic_d(const std::array<double, 4>& c, cplx s) {
    return (3.0 * c[0] * s + 2.0 * c[1]) * s + c[2];
}

// Roots of c0 s^3 + c1 s^2 + c2 s + c3 via the companion matrix, Newton-polished.
std::array<cplx, 3> cubic_roots_complex(const std::array<double, 4>& c) {
    Eigen::Matrix3d comp = Eigen::Matrix3d::Zero();
    comp(0, 0) = -c[1] / c[0];
    comp(0, 1) = -c[2] / c[0];
    comp(0, 2) = -c[3] / c[0];
    comp(1, 0) = 1.0;
    comp(2, 1) = 1.0;
    Eigen::EigenSolver<Eigen::Matrix3d> es(comp, false);
    std::array<cplx, 3> r;
    for (int i = 0; i < 3; ++i) {
        cplx s = es.eigenvalues()(i);
        for (int it = 0; it < 4; ++it) {
            const cplx f = eval_cubic(c, s);
            const cplx df = eval_cubic_d(c, s);
            if (std::abs(df) == 0.0) break;
            const cplx sn = s - f / df;
            if (!(std::abs(eval_cubic(c, sn)) < std::abs(f))) break;
            s = sn;
        }
        r[i] = s;
    }
    return r;
}

}  // namespace

void SystemParams::validate() const {
    if (!all_finite({eps, A0, A1, B0, B1, C0, C1, D, L}))
        throw DomainError("SystemParams: non-finite field");
    if (!(eps > 0.0)) throw DomainError("SystemParams: eps must be positive");
    if (!(D > 1.0)) throw DomainError("SystemParams: D must exceed 1");
    if (!(L > 0.0)) throw DomainError("SystemParams: L must be positive");
}

SystemParams SystemParams::with_small_bc(double eps, double A, double B1, double C1, double D, double L) {
    SystemParams s;
    s.eps = eps;
    s.A0 = A;
    s.B1 = B1;
    s.C1 = C1;
    s.D = D;
    s.L = L;
    return s;
}

SystemParams SystemParams::all_small(double eps, double A1, double B1, double C1, double D, double L) {
    SystemParams s;
    s.eps = eps;
    s.A1 = A1;
    s.B1 = B1;
    s.C1 = C1;
    s.D = D;
    s.L = L;
    return s;
}

double& PhasePoint::operator[](int i) {
    switch (i) {
        case 0: return u;
        case 1: return p;
        case 2: return v;
        case 3: return q;
        case 4: return w;
        default: return r;
    }
}

double PhasePoint::operator[](int i) const { return const_cast<PhasePoint&>(*this)[i]; }

bool PhasePoint::finite() const { return all_finite({u, p, v, q, w, r}); }

PhasePoint slow_rhs(const SystemParams& P, const PhasePoint& y) {
    const double A = P.A(), B = P.B(), C = P.C();
    PhasePoint d;
    d.u = y.p / P.eps;
    d.p = (y.u * y.u * y.u - y.u + A * y.v + B * y.w + C) / P.eps;
    d.v = y.q;
    d.q = y.v - y.u;
    d.w = y.r / P.D;
    d.r = (y.w - y.u) / P.D;
    return d;
}

double hamiltonian(const SystemParams& P, const PhasePoint& s) {
    const double A = P.A(), B = P.B(), C = P.C();
    const double u2 = s.u * s.u;
    return 0.5 * s.p * s.p - 0.25 * u2 * u2 + 0.5 * u2 -
           (0.5 * A * s.q * s.q + 0.5 * B * s.r * s.r - 0.5 * A * s.v * s.v - 0.5 * B * s.w * s.w +
            (A * s.v + B * s.w + C) * s.u);
}

PhasePoint hamiltonian_gradient(const SystemParams& P, const PhasePoint& s) {
    const double A = P.A(), B = P.B(), C = P.C();
    PhasePoint g;
    g.u = s.u - s.u * s.u * s.u - (A * s.v + B * s.w + C);
    g.p = s.p;
    g.v = A * (s.v - s.u);
    g.q = -A * s.q;
    g.w = B * (s.w - s.u);
    g.r = -B * s.r;
    return g;
}

CubicRoots depressed_cubic_roots(double p, double q) {
    CubicRoots out;
    if (p == 0.0 && q == 0.0) {
        out.roots = {0.0};
        out.multiplicity = {3};
        return out;
    }
    const double scale = 4.0 * std::abs(p * p * p) + 27.0 * q * q;
    const double disc = -(4.0 * p * p * p + 27.0 * q * q);
    if (std::abs(disc) <= 1e-12 * scale) {
        // fold: simple root 3q/p, double root -3q/(2p)
        const double simple = polish_cubic(3.0 * q / p, p, q);
        const double dbl = -1.5 * q / p;
        if (simple < dbl) {
            out.roots = {simple, dbl};
            out.multiplicity = {1, 2};
        } else {
            out.roots = {dbl, simple};
            out.multiplicity = {2, 1};
        }
        return out;
    }
    if (disc > 0.0) {
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(1.5 * q / p * std::sqrt(-3.0 / p), -1.0, 1.0);
        const double th = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            out.roots.push_back(polish_cubic(m * std::cos(th - 2.0 * std::numbers::pi * k / 3.0), p, q));
        std::sort(out.roots.begin(), out.roots.end());
        out.multiplicity = {1, 1, 1};
        return out;
    }
    double t;
    if (p < 0.0) {
        const double arg = -1.5 * std::abs(q) / p * std::sqrt(-3.0 / p);
        t = -2.0 * std::copysign(1.0, q) * std::sqrt(-p / 3.0) * std::cosh(std::acosh(std::max(arg, 1.0)) / 3.0);
    } else if (p > 0.0) {
        t = -2.0 * std::sqrt(p / 3.0) * std::sinh(std::asinh(1.5 * q / p * std::sqrt(3.0 / p)) / 3.0);
    } else {
        t = std::cbrt(-q);
    }
    out.roots = {polish_cubic(t, p, q)};
    out.multiplicity = {1};
    return out;
}

std::string to_string(FastType t) {
    switch (t) {
        case FastType::Hyperbolic: return "FastHyperbolic";
        case FastType::Elliptic: return "FastElliptic";
        default: return "TuringDegenerate";
    }
}

std::string to_string(PairType t) {
    switch (t) {
        case PairType::Hyperbolic: return "hyperbolic";
        case PairType::Elliptic: return "elliptic";
        default: return "complex";
    }
}

double degenerate_threshold(double eps) { return std::sqrt(std::max(eps, 0.0)); }

std::array<double, 4> characteristic_cubic(const SystemParams& P, double ue) {
    const double e2 = P.eps * P.eps, e4 = e2 * e2, D2 = P.D * P.D;
    const double A = P.A(), B = P.B();
    const double k = 3.0 * ue * ue - 1.0;
    return {D2,
            -(e2 + D2 * (k + e2)),
            (k + e2) * e2 + D2 * k * e2 + A * D2 * e2 + B * e2,
            -(k + A + B) * e4};
}

Linearization linearize(const SystemParams& P, double ue) {
    const auto c = characteristic_cubic(P, ue);
    auto s = cubic_roots_complex(c);
    // largest |s| first
    std::sort(s.begin(), s.end(), [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });

    const double a = c[1] / c[0], b = c[2] / c[0], d = c[3] / c[0];
    const double disc = 18 * a * b * d - 4 * a * a * a * d + a * a * b * b - 4 * b * b * b - 27 * d * d;
    const bool has_complex = disc < 0.0;

    Linearization lin;
    for (int i = 0; i < 3; ++i) {
        cplx root = s[i];
        if (!has_complex) root = cplx(root.real(), 0.0);
        const cplx lam = std::sqrt(root);
        lin.eigenvalues[2 * i] = lam;
        lin.eigenvalues[2 * i + 1] = -lam;
    }

    auto pair_type = [&](cplx si, bool complex_member) {
        if (complex_member) return PairType::Complex;
        return si.real() > 0.0 ? PairType::Hyperbolic : PairType::Elliptic;
    };
    // index of the real s when a complex pair is present
    int real_idx = 0;
    if (has_complex) {
        for (int i = 1; i < 3; ++i)
            if (std::abs(s[i].imag()) < std::abs(s[real_idx].imag())) real_idx = i;
    }
    const double k = 3.0 * ue * ue - 1.0;
    lin.degenerate = std::abs(k) < degenerate_threshold(P.eps);
    int fast_idx = has_complex ? real_idx : 0;
    if (lin.degenerate)
        lin.fast = FastType::TuringDegenerate;
    else
        lin.fast = s[fast_idx].real() > 0.0 ? FastType::Hyperbolic : FastType::Elliptic;
    int j = 0;
    for (int i = 0; i < 3; ++i) {
        if (i == fast_idx) continue;
        lin.slow[j++] = pair_type(s[i], has_complex && i != real_idx);
    }
    return lin;
}

std::vector<Equilibrium> equilibria(const SystemParams& P) {
    const auto cr = depressed_cubic_roots(-(1.0 - P.A() - P.B()), P.C());
    std::vector<Equilibrium> out;
    for (std::size_t i = 0; i < cr.roots.size(); ++i) {
        Equilibrium e;
        e.ue = cr.roots[i];
        e.multiplicity = cr.multiplicity[i];
        e.lin = linearize(P, e.ue);
        out.push_back(e);
    }
    return out;
}

double turing_curve(double eps, double B1, double C1, int sign) {
    const double s = sign >= 0 ? 1.0 : -1.0;
    return 2.0 / 3.0 + eps * (2.0 * std::sqrt(2.0) / (3.0 * std::sqrt(3.0)) - (B1 + s * std::sqrt(3.0) * C1));
}

}  // namespace rd3
