#pragma once

#include "rd3/collocation.hpp"
#include "rd3/model.hpp"

#include <Eigen/Core>

#include <functional>
#include <string>
#include <vector>

namespace rd3 {

using Profile = std::function<PhasePoint(double)>;

struct SolverOptions {
    int intervals = 500;
    int stages = 4;
    int max_iter = 25;
    double tol = 1e-10;
    int remesh_passes = 1;
    bool parallel = true;
};

/// Discretised periodic solution on [-L, L].
struct PeriodicOrbit {
    SystemParams params;
    std::vector<double> mesh;
    Tableau tab;
    Eigen::VectorXd z;  // collocation vector (nodes, stages, sigma[, A])
    double sigma = 0.0;
    double mass = 0.0;
    double residual_norm = 0.0;
    int iterations = 0;

    int intervals() const { return static_cast<int>(mesh.size()) - 1; }
    PhasePoint node(int i) const;
    PhasePoint stage(int i, int j) const;
    /// Collocation polynomial evaluated at x (periodically wrapped).
    PhasePoint at(double x) const;
    /// Nodes and stage points in increasing x, with states.
    std::vector<std::pair<double, PhasePoint>> samples() const;
    /// (max H - min H) over nodes and stages, relative to the size of the H terms.
    double hamiltonian_drift() const;
    /// Zero crossings of u.
    std::vector<double> zero_crossings() const;
    /// x of the extremum of u farthest from its mean.
    double extremum_position() const;
};

/// Mass int u dx by the stage quadrature.
double orbit_mass(const std::vector<double>& mesh, const Tableau& tab, const Eigen::VectorXd& z);

/// N+1 nodes on [-L, L] equidistributing 1 + alpha(|du| + |dp|) over the samples.
std::vector<double> equidistribute(const std::vector<std::pair<double, PhasePoint>>& samples, double L, int N);

std::vector<double> mesh_from_profile(const Profile& seed, double L, int N);

/// Collocation vector of a profile on a mesh (sigma = 0).
Eigen::VectorXd discretize(const Profile& seed, const std::vector<double>& mesh, const Tableau& tab,
                           bool with_param, double A);

/// Re-sample an orbit on a new mesh.
PeriodicOrbit remesh(const PeriodicOrbit& orbit, const std::vector<double>& mesh);

struct NewtonStats {
    int iterations = 0;
    double residual = 0.0;
    int det_sign = 0;
};

/// Damped Newton on the collocation system in place. Throws NoConvergence or SingularJacobian.
NewtonStats newton(CollocationSystem& sys, Eigen::VectorXd& z, int max_iter, double tol, bool parallel);

/// Converged orbit from an asymptotic or constant seed, with adaptive remeshing.
PeriodicOrbit newton_solve(const Profile& seed, const SystemParams& params, const SolverOptions& opts = {});
PeriodicOrbit newton_solve(const PeriodicOrbit& seed, const SystemParams& params, const SolverOptions& opts = {});

/// Onset of the complex quadruple of the equilibrium on branch `branch`
/// (+1 largest root, -1 smallest) between A_lo and A_hi, within `tol`.
double detect_hamiltonian_hopf(SystemParams params, double A_lo, double A_hi, int branch = 1, double tol = 1e-10);

/// Eigenvalue configuration of the equilibrium: true if a complex quadruple is present.
bool has_complex_quadruple(const SystemParams& params, int branch);

}  // namespace rd3
