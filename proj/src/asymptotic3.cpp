#include "rd3/asymptotic3.hpp"

#include "rd3/errors.hpp"
#include "rd3/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>

namespace rd3 {

namespace {

constexpr double kInvSqrt3 = 0.57735026918962576451;

// coefficients of V = c6 u^6 + c4 u^4 + c2 u^2
struct VPoly {
    double c6, c4, c2;
    explicit VPoly(double A0) : c6(-0.5), c4(1.0 - 0.75 * A0), c2(0.5 * (A0 - 1.0)) {}
};

// (b^n - a^n)/(b - a), exact also for a == b
double pow_dd(double a, double b, int n) {
    double s = 0.0, ak = 1.0;
    for (int k = 0; k < n; ++k) {
        s += ak * std::pow(b, n - 1 - k);
        ak *= a;
    }
    return s;
}

double V_dd(double a, double b, double A0) {
    const VPoly c(A0);
    return c.c6 * pow_dd(a, b, 6) + c.c4 * pow_dd(a, b, 4) + c.c2 * pow_dd(a, b, 2);
}

template <class F>
double toms(F f, double lo, double hi) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) throw NotFound("root not bracketed");
    boost::uintmax_t iters = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(53);
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
    return 0.5 * (r.first + r.second);
}

const GaussRule& panel_rule() {
    static const GaussRule r = gauss_legendre(10);
    return r;
}

}  // namespace

double potential_V(double u, double A0) {
    const double u2 = u * u;
    return 0.25 * u2 * (A0 * (2.0 - 3.0 * u2) - 2.0 * (u2 - 1.0) * (u2 - 1.0));
}

double potential_dV(double u, double A0) { return u * (1.0 - 3.0 * u * u) * (u * u - 1.0 + A0); }

double energy_E(double u, double q, double A0) { return 0.5 * A0 * A0 * q * q + potential_V(u, A0); }

double energy_level(double q_star, double A0) { return 0.25 * A0 * (2.0 * A0 * q_star * q_star - 1.0); }

std::string to_string(A0Case c) {
    switch (c) {
        case A0Case::Aneg: return "A0<0";
        case A0Case::Asmall: return "0<A0<2/3";
        default: return "A0>=2/3";
    }
}

A0Case a0_case(double A0) {
    if (A0 == 0.0) throw DomainError("A0 = 0 belongs to the all-small regime");
    if (A0 < 0.0) return A0Case::Aneg;
    return A0 < 2.0 / 3.0 ? A0Case::Asmall : A0Case::Alarge;
}

double qstar_bound(double A0) {
    if (a0_case(A0) == A0Case::Alarge) return std::sqrt(2.0 * (9.0 * A0 - 2.0) / (27.0 * A0 * A0));
    return std::sqrt((2.0 - A0) / 2.0);
}

double turning_point(double q_star, double A0) {
    const A0Case c = a0_case(A0);
    if (!(std::abs(q_star) < qstar_bound(A0))) throw RangeError("turning_point: q* outside admissible range");
    if (q_star == 0.0) return -1.0;
    const double Es = energy_level(q_star, A0);
    double other = c == A0Case::Alarge ? -kInvSqrt3 : -std::sqrt(1.0 - A0);
    auto f = [&](double u) { return potential_V(u, A0) - Es; };
    return toms(f, std::min(-1.0, other), std::max(-1.0, other));
}

class SlowPhaseOrbit {
public:
    SlowPhaseOrbit(double A0, double ut, double D, int panels) : A0_(A0), ut_(ut), D_(D) {
        sigma_ = (-1.0 - ut) >= 0 ? 1.0 : -1.0;
        smax_ = std::sqrt(std::abs(-1.0 - ut));
        n_ = panels;
        sk_.resize(n_ + 1);
        X_.assign(n_ + 1, 0.0);
        Ic_.assign(n_ + 1, 0.0);
        Is_.assign(n_ + 1, 0.0);
        for (int k = 0; k <= n_; ++k) sk_[k] = smax_ * k / n_;
        for (int k = 0; k < n_; ++k) {
            const auto c = partial(k, sk_[k + 1]);
            X_[k + 1] = c[0];
            Ic_[k + 1] = c[1];
            Is_[k + 1] = c[2];
        }
    }

    double u_of_s(double s) const { return ut_ + sigma_ * s * s; }
    double speed(double s) const { return std::sqrt(-2.0 * sigma_ * V_dd(ut_, u_of_s(s), A0_)); }
    double g(double s) const {
        const double u = u_of_s(s);
        return 2.0 * (3.0 * u * u - 1.0) / speed(s);
    }
    double half() const { return X_.back(); }
    double smax() const { return smax_; }

    // X, Ic, Is at s inside panel k
    std::array<double, 3> partial(int k, double s) const {
        const auto& R = panel_rule();
        const double a = sk_[k], h = s - a;
        double X = 0.0, ic = 0.0, is = 0.0;
        for (std::size_t j = 0; j < R.nodes.size(); ++j) {
            const double t = a + h * R.nodes[j];
            double Xt = 0.0;
            for (std::size_t m = 0; m < R.nodes.size(); ++m)
                Xt += R.weights[m] * g(a + (t - a) * R.nodes[m]);
            Xt = X_[k] + (t - a) * Xt;
            const double gt = g(t), ut = u_of_s(t);
            X += R.weights[j] * gt;
            ic += R.weights[j] * std::cosh(Xt / D_) * ut * gt;
            is += R.weights[j] * std::sinh(Xt / D_) * ut * gt;
        }
        return {X_[k] + h * X, Ic_[k] + h * ic, Is_[k] + h * is};
    }

    int panel_of_x(double x) const {
        auto it = std::upper_bound(X_.begin(), X_.end(), x);
        int k = static_cast<int>(it - X_.begin()) - 1;
        return std::clamp(k, 0, n_ - 1);
    }

    double X_at(int k, double s) const {
        const auto& R = panel_rule();
        const double a = sk_[k], h = s - a;
        double X = 0.0;
        for (std::size_t j = 0; j < R.nodes.size(); ++j) X += R.weights[j] * g(a + h * R.nodes[j]);
        return X_[k] + h * X;
    }

    // s with X(s) = x, 0 <= x <= half
    std::pair<int, double> invert(double x) const {
        x = std::clamp(x, 0.0, half());
        const int k = panel_of_x(x);
        double lo = sk_[k], hi = sk_[k + 1];
        double s = lo + (hi - lo) * (x - X_[k]) / (X_[k + 1] - X_[k]);
        for (int it = 0; it < 30; ++it) {
            const double F = X_at(k, s) - x;
            if (F > 0) hi = s; else lo = s;
            double sn = s - F / g(s);
            if (!(sn > lo && sn < hi)) sn = 0.5 * (lo + hi);
            if (std::abs(sn - s) <= 1e-15 * smax_) {
                s = sn;
                break;
            }
            s = sn;
        }
        return {k, s};
    }

private:
    double A0_, ut_, D_, sigma_, smax_;
    int n_;
    std::vector<double> sk_, X_, Ic_, Is_;
};

double half_length(double q_star, double A0) {
    const double ut = turning_point(q_star, A0);
    if (ut == -1.0) return 0.0;
    const double sigma = (-1.0 - ut) >= 0 ? 1.0 : -1.0;
    const double smax = std::sqrt(std::abs(-1.0 - ut));
    auto g = [&](double s) {
        const double u = ut + sigma * s * s;
        return 2.0 * (3.0 * u * u - 1.0) / std::sqrt(-2.0 * sigma * V_dd(ut, u, A0));
    };
    // GK error estimates stall on the near-constant integrand at small amplitude
    thread_local boost::math::quadrature::tanh_sinh<double> ts;
    return 2.0 * ts.integrate(g, 0.0, smax, 1e-14);
}

double l_max(double A0) {
    if (A0 < 2.0 / 3.0) throw DomainError("l_max: defined for A0 >= 2/3");
    return 6.0 * std::log((std::sqrt(6.0) + std::sqrt(9.0 * A0 - 2.0)) /
                          (std::sqrt(2.0) + std::sqrt(std::max(9.0 * A0 - 6.0, 0.0))));
}

double a0_for_lmax(double L) {
    if (!(L > 0.0) || L >= l_max(2.0 / 3.0)) throw NotFound("a0_for_lmax: L outside (0, L_max(2/3))");
    double hi = 1.0;
    while (l_max(hi) > L) hi *= 2.0;
    return toms([&](double a) { return l_max(a) - L; }, 2.0 / 3.0, hi);
}

double solve_for_qstar(double L, double A0) {
    const A0Case c = a0_case(A0);
    if (!(L > 0.0)) throw DomainError("solve_for_qstar: L must be positive");
    if (c == A0Case::Alarge && L > l_max(A0) - 1e-4)
        throw ExistenceError("solve_for_qstar: L beyond L_max(A0)");
    const double qb = qstar_bound(A0);
    auto f = [&](double q) { return half_length(q, A0) - L; };
    double hi = 0.5 * qb;
    int k = 1;
    while (f(hi) < 0.0) {
        ++k;
        if (k > 50) throw ExistenceError("solve_for_qstar: half_length never reaches L");
        hi = qb * (1.0 - std::ldexp(1.0, -k));
    }
    return -toms(f, 0.0, hi);
}

TwoPulseLargeSolution::TwoPulseLargeSolution(double A0, double D, double L, double eps)
    : A0_(A0), D_(D), L_(L), eps_(eps) {
    case_ = a0_case(A0);
    if (!(D > 1.0) || !(eps > 0.0)) throw DomainError("build_two_pulse_large: need D > 1, eps > 0");
    qs_ = solve_for_qstar(L, A0);
    Es_ = energy_level(qs_, A0);
    ut_ = turning_point(qs_, A0);
    orbit_ = std::make_unique<SlowPhaseOrbit>(A0, ut_, D, 256);
    const auto [k, s] = orbit_->invert(L / 2);
    const auto c = orbit_->partial(k, s);
    I0_ = std::sinh(L / (2 * D)) * c[1] - std::cosh(L / (2 * D)) * c[2];
}

TwoPulseLargeSolution::~TwoPulseLargeSolution() = default;

TwoPulseLargeSolution::TwoPulseLargeSolution(const TwoPulseLargeSolution& o)
    : A0_(o.A0_), D_(o.D_), L_(o.L_), eps_(o.eps_), qs_(o.qs_), Es_(o.Es_), ut_(o.ut_), case_(o.case_),
      orbit_(std::make_unique<SlowPhaseOrbit>(*o.orbit_)), I0_(o.I0_) {}

TwoPulseLargeSolution& TwoPulseLargeSolution::operator=(const TwoPulseLargeSolution& o) {
    if (this != &o) {
        TwoPulseLargeSolution tmp(o);
        std::swap(A0_, tmp.A0_);
        std::swap(D_, tmp.D_);
        std::swap(L_, tmp.L_);
        std::swap(eps_, tmp.eps_);
        std::swap(qs_, tmp.qs_);
        std::swap(Es_, tmp.Es_);
        std::swap(ut_, tmp.ut_);
        std::swap(case_, tmp.case_);
        std::swap(orbit_, tmp.orbit_);
        std::swap(I0_, tmp.I0_);
    }
    return *this;
}

PhasePoint TwoPulseLargeSolution::slow_state(double x) const {
    const double L = L_, D = D_;
    // reduce to I3 = [-L/2, L/2]; outer intervals by (u,q,w,r)(x) = -(u,q,w,r)(x -+ L)
    double sg = 1.0;
    if (x > L / 2) {
        x -= L;
        sg = -1.0;
    } else if (x < -L / 2) {
        x += L;
        sg = -1.0;
    }
    const double ax = std::abs(x);
    const auto [k, s] = orbit_->invert(ax);
    const auto c = orbit_->partial(k, s);
    const double u = orbit_->u_of_s(s);
    const double qabs = s * orbit_->speed(s) / std::abs(A0_);
    const double ic = x >= 0 ? c[1] : -c[1];
    const double is = c[2];
    const double ch = std::cosh(L / (2 * D));
    const double cx = std::cosh(x / D), sx = std::sinh(x / D);
    PhasePoint y;
    y.u = sg * u;
    y.q = sg * (x >= 0 ? qabs : -qabs);
    y.v = (y.u - y.u * y.u * y.u) / A0_;
    y.w = sg * (cx * I0_ / (D * ch) - (sx * ic - cx * is) / D);
    y.r = sg * (sx * I0_ / (D * ch) - (cx * ic - sx * is) / D);
    y.p = 0.0;
    return y;
}

PhasePoint TwoPulseLargeSolution::state(double x) const {
    PhasePoint y = slow_state(x);
    const double du = 3.0 * y.u * y.u - 1.0;
    if (std::abs(du) > 1e-3) y.p = -eps_ * A0_ * y.q / du;
    const double s = std::sqrt(2.0) * eps_;
    const double a = (x + L_ / 2) / s, b = (x - L_ / 2) / s;
    auto sgn = [](double t) { return t > 0 ? 1.0 : (t < 0 ? -1.0 : 0.0); };
    y.u += (-std::tanh(a) + sgn(a)) + (std::tanh(b) - sgn(b));
    const double sa = 1.0 / std::cosh(a), sb = 1.0 / std::cosh(b);
    y.p += (-sa * sa + sb * sb) / std::sqrt(2.0);
    return y;
}

double TwoPulseLargeSolution::r_2star() const { return slow_state(L_ / 2).r; }
double TwoPulseLargeSolution::r_star() const { return slow_state(-L_ / 2).r; }

TwoPulseLargeSolution build_two_pulse_large(double A0, double D, double L, double eps) {
    return TwoPulseLargeSolution(A0, D, L, eps);
}

}  // namespace rd3
