#pragma once

#include "rd3/fastslow.hpp"
#include "rd3/model.hpp"

#include <string>
#include <utility>
#include <vector>

namespace rd3 {

/// First-order slow profiles (v1, q1, w1, r1) on (-L, L), even in x for
/// v1, w1 and odd for q1, r1, with jumps J1 and J1/D across the pulse at 0.
struct CorrectionProfiles {
    double M = 0, N = 0, J1 = 0, D = 3, L = 5;
    double c = 0;                    // constant particular part of v1 and w1
    double alpha = 0, beta = 0, gamma = 0;

    double v1(double x) const;
    double q1(double x) const;
    double w1(double x) const;
    double r1(double x) const;
};

/// One-transition periodic solution: slow plateau sign*sqrt(1-A) with a fast
/// homoclinic excursion centred at x = 0.
struct OnePulseSolution {
    SystemParams params;
    int sign = 1;
    double A = 0, L = 0;
    double plateau = 0;  // v_s = w_s = sign*sqrt(1-A)
    FastConnection fast;
    bool has_corrections = false;
    CorrectionProfiles corr;
    std::vector<std::string> warnings;

    /// Slow outer state (u on the slow manifold) at first order in eps when
    /// corrections are available, leading order otherwise.
    PhasePoint slow_state(double x, bool corrected = true) const;
    /// Uniform composite: slow + fast - plateau.
    PhasePoint state(double x, bool corrected = true) const;
};

OnePulseSolution build_one_pulse(const SystemParams& params, int sign, double L);

/// (u1_hat, p1_hat) on the branch `branch`; DomainError near the folds.
std::pair<double, double> slow_manifold_correction(const SystemParams& params, double v, double q, double w,
                                                   double r, int branch);

CorrectionProfiles correction_profiles(const SystemParams& params, int sign, double L);

}  // namespace rd3
