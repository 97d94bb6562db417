#pragma once

#include "rd3/model.hpp"

#include <Eigen/SparseCore>

#include <array>
#include <vector>

namespace rd3 {

/// Gauss-Legendre collocation tableau with s stages.
struct Tableau {
    int s = 0;
    std::vector<double> c, b;
    std::vector<double> a;  // row-major s x s

    double A(int j, int l) const { return a[j * s + l]; }
};

Tableau gauss_tableau(int s);

/// Lagrange weights of the interpolant through {0, c_1, ..., c_s} at t in [0, 1].
std::vector<double> lagrange_weights(const Tableau& tab, double t);

/// Structural nonzeros of the 6x6 Jacobian of f + sigma grad H, per row.
extern const std::array<std::vector<int>, 6> kJacMask;

/// Periodic collocation system on a fixed mesh.
///
/// Unknowns per interval i: node value y_i followed by the s stage values;
/// then the unfolding scalar sigma and, for continuation, the parameter A.
/// Rows per interval: continuity (6) then stages (6 s); then the phase row
/// and, for continuation, the arclength row. The right-hand side is
/// f + sigma grad H, so sigma vanishes exactly on periodic solutions.
class CollocationSystem {
public:
    CollocationSystem(const SystemParams& params, std::vector<double> mesh, const Tableau& tab, bool with_param);

    int intervals() const { return N_; }
    int stages() const { return tab_.s; }
    int size() const { return n_; }
    int node(int i) const { return (i % N_) * blk_; }
    int stage(int i, int j) const { return i * blk_ + 6 * (j + 1); }
    int sigma_index() const { return N_ * blk_; }
    int param_index() const { return N_ * blk_ + 1; }
    int phase_row() const { return N_ * blk_; }
    int arc_row() const { return N_ * blk_ + 1; }
    bool with_param() const { return with_param_; }
    const std::vector<double>& mesh() const { return x_; }
    const Tableau& tableau() const { return tab_; }
    const SystemParams& params() const { return P_; }
    void set_params(const SystemParams& p) { P_ = p; }

    /// Phase condition int <y'_ref, y - y_ref> = 0 from reference stage values;
    /// disabled (sigma pinned to 0) when the reference derivative vanishes.
    void set_phase_reference(const Eigen::VectorXd& zref);
    bool phase_active() const { return phase_active_; }

    /// Arclength row sum_k coef_k z_k + coefA A = rhs over stage unknowns.
    void set_arclength(const Eigen::VectorXd& coef_stage, double coefA, double rhs);

    /// Evaluate residual and Jacobian values; `parallel` selects the OpenMP kernel.
    void evaluate(const Eigen::VectorXd& z, Eigen::VectorXd& F, bool parallel = true);
    Eigen::SparseMatrix<double>& jacobian() { return J_; }
    const Eigen::SparseMatrix<double>& jacobian() const { return J_; }

    /// Residual only (same kernel, Jacobian values discarded).
    Eigen::VectorXd residual(const Eigen::VectorXd& z, bool parallel = true);

    /// Number of Jacobian slots written per interval.
    int slots_per_interval() const { return K_; }

    /// Kernel entry point used by the serial and OpenMP drivers.
    void fill_interval(int i, const double* z, double* F, double* vals, double* part) const;

    /// Current right-hand side f + sigma grad H at a state.
    PhasePoint rhs(const PhasePoint& y, double sigma, double A) const;

private:
    void build_pattern();

    SystemParams P_;
    std::vector<double> x_;
    Tableau tab_;
    bool with_param_;
    int N_, blk_, n_, K_ = 0;
    std::vector<int> slot_;        // value-array position of each slot
    std::vector<double> vals_;     // slot values
    std::vector<double> part_;     // per-interval partial sums (phase, arc)
    Eigen::SparseMatrix<double> J_;

    bool phase_active_ = false;
    std::vector<double> fref_;  // N*s*6 reference derivative at stages
    double phase_const_ = 0.0;
    std::vector<double> arc_;   // N*s*6
    double arcA_ = 0.0, arc_rhs_ = 0.0;
};

}  // namespace rd3
