#include "rd3/asymptotic1.hpp"

#include "rd3/errors.hpp"

#include <cmath>

namespace rd3 {

namespace {

double sgnx(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

// Slow-manifold u for forcing K on the given branch; the composite may leave
// the branch domain only through the fold, which the builder excludes.
double manifold_u(double K, int sign) { return slow_manifold_u(K, sign); }

void require_hypothesis(const SystemParams& P) {
    if (!P.small_bc()) throw DomainError("one-pulse builder requires B = eps*B1 and C = eps*C1");
}

}  // namespace

double CorrectionProfiles::v1(double x) const {
    return c + alpha * std::cosh(M * (std::abs(x) - L));
}

double CorrectionProfiles::q1(double x) const {
    return alpha * M * std::sinh(M * (std::abs(x) - L)) * sgnx(x);
}

double CorrectionProfiles::w1(double x) const {
    const double s = std::abs(x) - L;
    return c + beta * std::cosh(M * s) + gamma * std::cosh(s / D);
}

double CorrectionProfiles::r1(double x) const {
    const double s = std::abs(x) - L;
    return D * (beta * M * std::sinh(M * s) + gamma * std::sinh(s / D) / D) * sgnx(x);
}

CorrectionProfiles correction_profiles(const SystemParams& P, int sign, double L) {
    require_hypothesis(P);
    const double A = P.A();
    if (!(A > 0.0 && A < 2.0 / 3.0)) throw ExistenceError("correction_profiles: A outside (0, 2/3)");
    const double ub = (sign >= 0 ? 1.0 : -1.0) * std::sqrt(1.0 - A);
    CorrectionProfiles cp;
    cp.D = P.D;
    cp.L = L;
    cp.M = std::sqrt(2.0 * (1.0 - A) / (2.0 - 3.0 * A));
    cp.N = A / (2.0 - 3.0 * A);
    const double D2M2 = P.D * P.D * cp.M * cp.M;
    if (std::abs(D2M2 - 1.0) < 1e-6) throw ResonanceError("correction_profiles: D*M = 1");
    cp.J1 = FastConnection::homoclinic(A * ub).J1();
    cp.c = -(P.C1 + ub * P.B1) / (2.0 * (1.0 - A));
    cp.alpha = -cp.J1 / (2.0 * cp.M * std::sinh(cp.M * L));
    cp.beta = cp.N * cp.alpha / (D2M2 - 1.0);
    cp.gamma = -cp.J1 * ((cp.M * cp.M - cp.N) * P.D * P.D - 1.0) /
               (2.0 * P.D * (D2M2 - 1.0) * std::sinh(L / P.D));
    return cp;
}

std::pair<double, double> slow_manifold_correction(const SystemParams& P, double v, double q, double w, double,
                                                   int branch) {
    const double u0 = slow_manifold_u(P.A0 * v, branch);
    const double den = 1.0 - 3.0 * u0 * u0;
    if (std::abs(den) < degenerate_threshold(P.eps))
        throw DomainError("slow_manifold_correction: too close to the fold u0 = +-1/sqrt(3)");
    return {(P.B1 * w + P.C1) / den, P.A() * q / den};
}

OnePulseSolution build_one_pulse(const SystemParams& P, int sign, double L) {
    require_hypothesis(P);
    OnePulseSolution s;
    s.params = P;
    s.params.L = L;
    s.sign = sign >= 0 ? 1 : -1;
    s.A = P.A();
    s.L = L;
    const double A = s.A;
    if (!(A > 0.0 && A < 2.0 / 3.0)) throw ExistenceError("build_one_pulse: A must lie in (0, 2/3)");
    const double margin = degenerate_threshold(P.eps);
    if (A < margin || A > 2.0 / 3.0 - margin)
        s.warnings.push_back("A within sqrt(eps) of the existence window ends; expansions degrade");
    s.plateau = s.sign * std::sqrt(1.0 - A);
    s.fast = FastConnection::homoclinic(A * s.plateau);
    try {
        s.corr = correction_profiles(P, s.sign, L);
        s.has_corrections = true;
    } catch (const ResonanceError& e) {
        s.warnings.push_back(e.what());
    }
    return s;
}

PhasePoint OnePulseSolution::slow_state(double x, bool corrected) const {
    const SystemParams& P = params;
    PhasePoint y;
    y.v = y.w = plateau;
    if (corrected && has_corrections) {
        y.v += P.eps * corr.v1(x);
        y.q = P.eps * corr.q1(x);
        y.w += P.eps * corr.w1(x);
        y.r = P.eps * corr.r1(x);
        y.u = manifold_u(P.A() * y.v + P.B() * y.w + P.C(), sign);
        y.p = P.eps * P.A() * y.q / (1.0 - 3.0 * y.u * y.u);
    } else {
        y.u = plateau;
    }
    return y;
}

PhasePoint OnePulseSolution::state(double x, bool corrected) const {
    PhasePoint y = slow_state(x, corrected);
    // nearest periodic image of the pulse
    double xc = x;
    if (xc > L) xc -= 2 * L;
    if (xc < -L) xc += 2 * L;
    const auto [uf, pf] = fast(xc / params.eps);
    y.u += uf - plateau;
    y.p += pf;
    return y;
}

}  // namespace rd3
