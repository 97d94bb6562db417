#pragma once

#include "rd3/model.hpp"

#include <array>
#include <utility>

namespace rd3 {

/// Fold value of u - u^3 on the hyperbolic branches.
inline const double kFoldK = 2.0 / (3.0 * 1.7320508075688772);

/// Truncated slow manifold M0^+ or M0^- (|u0| >= 1/sqrt(3) + delta).
struct SlowManifoldBranch {
    int sign = 1;
    double delta = 0.1;

    bool contains(double u0) const;
};

/// K(v, w) = A0 v + B0 w + C0.
double k_of(const SystemParams& params, double v, double w);

/// Root of u^3 - u + K = 0 on the branch sign*u >= 1/sqrt(3).
double slow_manifold_u(double K, int branch);

enum class ConnectionKind { Heteroclinic, Homoclinic };

/// Solution of the reduced fast system u'' = u^3 - u + K, parameterised by
/// the fast variable xi. Homoclinics have their extremum at xi = 0,
/// heteroclinics their zero crossing.
class FastConnection {
public:
    static FastConnection heteroclinic(int sign);
    static FastConnection homoclinic(double K);

    ConnectionKind kind() const { return kind_; }
    double K() const { return K_; }
    /// Base point u0 (homoclinic) or +-1 end state at xi -> +inf (heteroclinic).
    double base() const { return base_; }
    double extremal() const { return uext_; }
    /// Linearisation rate sqrt(3 u0^2 - 1) at the base point.
    double rate() const { return lam_; }

    /// (u, p) at xi.
    std::pair<double, double> operator()(double xi) const;

    /// Integral of (u0 - u) over the whole line (homoclinic only).
    double J1() const;

    /// Fast Hamiltonian p^2/2 - u^4/4 + u^2/2 - K u.
    double energy(double u, double p) const;

private:
    double xi_of_y(double y) const;  // xi >= 0 as a function of y = |u0 - u|
    double tail_integral(double tau) const;

    ConnectionKind kind_ = ConnectionKind::Heteroclinic;
    int sign_ = 1;
    double K_ = 0.0, base_ = 1.0, uext_ = 0.0, lam_ = 0.0;
    double ymax_ = 0.0, d_ = 0.0, sq0_ = 0.0, gmax_ = 0.0;
};

/// Extremal u of the homoclinic to u0 = sign*sqrt(1-A0) (persisting equilibrium).
double persisting_extremal(double A0, int sign);

/// Right-hand side of the reduced slow system on the given branch, state (v, q, w, r).
std::array<double, 4> reduced_slow_rhs(const SystemParams& params, const std::array<double, 4>& s, int branch);

}  // namespace rd3
