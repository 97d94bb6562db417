#pragma once

#include <string>
#include <utility>
#include <vector>

namespace rd3 {

/// M(z) = A1 sinh(z)/sinh(L) + B1 sinh(z/D)/sinh(L/D).
double melnikov_M(double z, double A1, double B1, double D, double L);
double melnikov_dM(double z, double A1, double B1, double D, double L);

/// D sinh(L/D)/sinh(L) and D tanh(L/D)/tanh(L).
double dtilde(double D, double L);
double dhat(double D, double L);

enum class Stability { Stable, Unstable, Degenerate };
std::string to_string(Stability s);

struct MelnikovRoot {
    double x = 0.0;  // x** in (0, L)
    int multiplicity = 1;
    Stability stability = Stability::Stable;
};

struct MelnikovAnalysis {
    double A1 = 0, B1 = 0, C1 = 0, D = 3, L = 5;
    std::vector<MelnikovRoot> roots;  // ascending in x**
    double dtilde = 0, dhat = 0;
    /// A root reached the ends of (0, L) and was dropped.
    bool boundary_root = false;

    int count() const { return static_cast<int>(roots.size()); }
};

/// Sampled basis of M on the uniform x-grid used for bracketing. Built once
/// per (D, L) and reused for many (A1, B1, C1).
class MelnikovGrid {
public:
    static constexpr int kDefaultCells = 4096;

    MelnikovGrid(double D, double L, int cells = kDefaultCells);

    double D() const { return D_; }
    double L() const { return L_; }
    int cells() const { return n_; }

    MelnikovAnalysis find_roots(double A1, double B1, double C1) const;
    /// Root count only; same bracketing as find_roots without refinement.
    int count_roots(double A1, double B1, double C1) const;

private:
    double D_, L_;
    int n_;
    std::vector<double> s1_, s2_, c1_, c2_;  // sinh and cosh bases at z_i = L - 2 x_i
};

/// All solutions x** in (0, L) of M(L - 2x**) + C1 = 0 with stability tags.
MelnikovAnalysis find_roots(double A1, double B1, double C1, double D, double L);

enum class Boundary { LinePlus, LineMinus, SaddleNode };
std::string to_string(Boundary b);

/// Saddle-node curve (A1*(z), B1*(z)); DomainError at z = 0.
std::pair<double, double> saddle_node_curve(double z, double C1, double D, double L);

/// Polyline samples of all region boundaries in the (A1, B1) plane, clipped to a box.
class BoundarySet {
public:
    BoundarySet(double C1, double D, double L, double box = 10.0, int samples = 20000);

    /// Distance to the nearest boundary and which one it is.
    std::pair<double, Boundary> nearest(double A1, double B1) const;

private:
    double C1_;
    std::vector<std::vector<std::pair<double, double>>> branches_;
};

struct RegionInfo {
    int count = 0;
    Boundary nearest = Boundary::SaddleNode;
    double distance = 0.0;
};

RegionInfo classify_region(double A1, double B1, double C1, double D, double L);

/// Ordered pair (min, max) of {-D~ A1, -A1}.
std::pair<double, double> pitchfork_window(double A1, double D, double L);

/// B1 at which the root x** = L/2 (C1 = 0) changes stability, by bisection on
/// the stability flag over [lo, hi]. Throws NotFound if not bracketed.
double pitchfork_B1(double A1, double D, double L, double lo, double hi, double tol = 1e-13);

}  // namespace rd3
