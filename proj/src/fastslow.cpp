#include "rd3/fastslow.hpp"

#include "rd3/errors.hpp"
#include "rd3/quadrature.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <numbers>

namespace rd3 {

namespace {

const GaussRule& tail_rule() {
    static const GaussRule r = gauss_legendre(24);
    return r;
}

}  // namespace

bool SlowManifoldBranch::contains(double u0) const {
    return sign * u0 >= 1.0 / std::sqrt(3.0) + delta;
}

double k_of(const SystemParams& P, double v, double w) { return P.A0 * v + P.B0 * w + P.C0; }

double slow_manifold_u(double K, int branch) {
    const double s = branch >= 0 ? 1.0 : -1.0;
    if (s * K > kFoldK * (1.0 + 1e-14))
        throw DomainError("slow_manifold_u: K beyond the fold of the requested branch");
    if (s * K >= kFoldK) return s / std::sqrt(3.0);
    const auto cr = depressed_cubic_roots(-1.0, K);
    return s > 0 ? cr.roots.back() : cr.roots.front();
}

FastConnection FastConnection::heteroclinic(int sign) {
    FastConnection c;
    c.kind_ = ConnectionKind::Heteroclinic;
    c.sign_ = sign >= 0 ? 1 : -1;
    c.K_ = 0.0;
    c.base_ = c.sign_;
    c.uext_ = c.sign_;
    c.lam_ = std::sqrt(2.0);
    return c;
}

FastConnection FastConnection::homoclinic(double K) {
    if (!(std::abs(K) > 0.0 && std::abs(K) < kFoldK))
        throw DomainError("fast_homoclinic: requires 0 < |K| < 2/(3 sqrt 3)");
    FastConnection c;
    c.kind_ = ConnectionKind::Homoclinic;
    c.sign_ = K > 0 ? 1 : -1;
    c.K_ = K;
    // work with the + branch, K > 0; the other follows by (u, p, K) -> -(u, p, K)
    const double u0 = slow_manifold_u(std::abs(K), 1);
    const double s = std::sqrt(2.0 - 2.0 * u0 * u0);
    c.base_ = c.sign_ * u0;
    c.uext_ = c.sign_ * (s - u0);
    c.lam_ = std::sqrt(3.0 * u0 * u0 - 1.0);
    c.ymax_ = 2.0 * u0 - s;
    c.d_ = 2.0 * s;
    c.sq0_ = std::sqrt(2.0) * c.lam_;
    c.gmax_ = c.tail_integral(std::sqrt(c.ymax_));
    return c;
}

double FastConnection::tail_integral(double tau) const {
    const double ymax = ymax_, d = d_, sq0 = sq0_;
    auto k = [&](double t) {
        const double rt = std::sqrt(t * t + d);
        return 2.0 * (ymax + t * t + d) / (rt * sq0 * (sq0 + t * rt));
    };
    return integrate_panels(k, 0.0, tau, 2, tail_rule());
}

double FastConnection::xi_of_y(double y) const {
    const double tau = std::sqrt(std::max(ymax_ - y, 0.0));
    return std::log(ymax_ / y) / lam_ + std::sqrt(2.0) * tail_integral(tau);
}

std::pair<double, double> FastConnection::operator()(double xi) const {
    const double sg = sign_;
    if (kind_ == ConnectionKind::Heteroclinic) {
        const double a = xi / std::sqrt(2.0);
        const double sech = 1.0 / std::cosh(a);
        return {sg * std::tanh(a), sg * sech * sech / std::sqrt(2.0)};
    }
    const double ax = std::abs(xi);
    if (lam_ * ax > 700.0) return {base_, 0.0};
    double y;
    if (ax == 0.0) {
        y = ymax_;
    } else {
        const double lny = std::log(ymax_);
        double lo = lny - lam_ * ax;
        double hi = std::min(lny, lny - lam_ * (ax - std::sqrt(2.0) * gmax_));
        auto f = [&](double phi) { return xi_of_y(std::exp(phi)) - ax; };
        double flo = f(lo), fhi = f(hi);
        if (flo <= 0.0) {
            y = std::exp(lo);
        } else if (fhi >= 0.0) {
            y = std::exp(hi);
        } else {
            boost::uintmax_t iters = 100;
            auto tol = boost::math::tools::eps_tolerance<double>(52);
            auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
            y = std::exp(0.5 * (r.first + r.second));
        }
    }
    const double t2 = std::max(ymax_ - y, 0.0);
    const double p = y / std::sqrt(2.0) * std::sqrt(t2 * (t2 + d_));
    const double u = base_ - sg * y;
    return {u, sg * (xi >= 0 ? p : -p)};
}

double FastConnection::J1() const {
    if (kind_ != ConnectionKind::Homoclinic) throw DomainError("J1: heteroclinic has no finite J1");
    return sign_ * 4.0 * std::sqrt(2.0) * std::asinh(std::sqrt(ymax_ / d_));
}

double FastConnection::energy(double u, double p) const {
    const double u2 = u * u;
    return 0.5 * p * p - 0.25 * u2 * u2 + 0.5 * u2 - K_ * u;
}

double persisting_extremal(double A0, int sign) {
    const double s = sign >= 0 ? 1.0 : -1.0;
    return s * (std::sqrt(2.0 * A0) - std::sqrt(1.0 - A0));
}

std::array<double, 4> reduced_slow_rhs(const SystemParams& P, const std::array<double, 4>& s, int branch) {
    const double u0 = slow_manifold_u(k_of(P, s[0], s[2]), branch);
    return {s[1], s[0] - u0, s[3] / P.D, (s[2] - u0) / P.D};
}

}  // namespace rd3
