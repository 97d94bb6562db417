#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace rd3 {

/// Constants of the stationary three-component system
///
///   0 = eps^2 u'' + u - u^3 - (A v + B w + C)
///   0 = v'' + u - v
///   0 = D^2 w'' + u - w
///
/// on the periodic domain [-L, L]. Each coupling constant is stored in its
/// regular expansion A = A0 + eps*A1 (same for B, C), so the full values are
/// always consistent with their decomposition. The time constants tau and
/// theta of the evolution problem play no role for stationary patterns and
/// are not represented.
struct SystemParams {
    double eps = 0.01;
    double A0 = 0.0, A1 = 0.0;
    double B0 = 0.0, B1 = 0.0;
    double C0 = 0.0, C1 = 0.0;
    double D = 3.0;
    double L = 5.0;

    double A() const { return A0 + eps * A1; }
    double B() const { return B0 + eps * B1; }
    double C() const { return C0 + eps * C1; }

    /// B and C of order eps (B0 = C0 = 0).
    bool small_bc() const { return B0 == 0.0 && C0 == 0.0; }

    /// Throws DomainError unless eps > 0, D > 1, L > 0 and all fields finite.
    void validate() const;

    /// A given at order one, B = eps*B1 and C = eps*C1.
    static SystemParams with_small_bc(double eps, double A, double B1, double C1, double D, double L);
    /// All three couplings of order eps: A = eps*A1, B = eps*B1, C = eps*C1.
    static SystemParams all_small(double eps, double A1, double B1, double C1, double D, double L);
};

/// State of the first-order system with p = eps u_x, q = v_x, r = D w_x.
struct PhasePoint {
    double u = 0.0, p = 0.0, v = 0.0, q = 0.0, w = 0.0, r = 0.0;

    static constexpr int size = 6;
    double& operator[](int i);
    double operator[](int i) const;
    bool finite() const;
};

/// First-order right-hand side in the slow variable x.
PhasePoint slow_rhs(const SystemParams& params, const PhasePoint& y);

/// Conserved quantity of the first-order system.
double hamiltonian(const SystemParams& params, const PhasePoint& pt);

/// Gradient of `hamiltonian` with respect to (u, p, v, q, w, r).
PhasePoint hamiltonian_gradient(const SystemParams& params, const PhasePoint& pt);

/// Real roots of t^3 + p t + q = 0, sorted ascending. A double root at the
/// fold is listed once with multiplicity 2.
struct CubicRoots {
    std::vector<double> roots;
    std::vector<int> multiplicity;
};
CubicRoots depressed_cubic_roots(double p, double q);

enum class FastType { Hyperbolic, Elliptic, TuringDegenerate };
enum class PairType { Hyperbolic, Elliptic, Complex };

std::string to_string(FastType t);
std::string to_string(PairType t);

struct Linearization {
    std::array<std::complex<double>, 6> eigenvalues;
    FastType fast = FastType::Hyperbolic;
    /// Labels of the two slow +-pairs, larger modulus first.
    std::array<PairType, 2> slow{PairType::Hyperbolic, PairType::Hyperbolic};
    /// 3 ue^2 - 1 is within the degenerate band; the fast/slow split is not meaningful.
    bool degenerate = false;
};

struct Equilibrium {
    double ue = 0.0;
    int multiplicity = 1;
    Linearization lin;
};

/// |3 ue^2 - 1| below this value marks the fast-slow decomposition as broken.
double degenerate_threshold(double eps);

/// All real equilibria ue (1, 0, 1, 0, 1, 0), ue^3 - ue (1 - A - B) + C = 0, ascending.
std::vector<Equilibrium> equilibria(const SystemParams& params);

/// Coefficients (c3, c2, c1, c0) of the characteristic polynomial as a cubic in s = mu^2.
std::array<double, 4> characteristic_cubic(const SystemParams& params, double ue);

/// Six roots of the characteristic polynomial of the linearisation about ue,
/// in the fast scaling mu = eps*lambda (lambda the x-rate).
Linearization linearize(const SystemParams& params, double ue);

/// Leading-order Hamiltonian-Hopf (Turing) curve in A for B = eps*B1, C = eps*C1.
/// `sign` (+1 or -1) selects the +-sqrt(3) C1 branch.
double turing_curve(double eps, double B1, double C1, int sign);

}  // namespace rd3
