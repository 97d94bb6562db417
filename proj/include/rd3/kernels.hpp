#pragma once

#include "rd3/collocation.hpp"
#include "rd3/melnikov.hpp"

#include <vector>

namespace rd3::kernels {

/// Collocation residual and Jacobian-value fill over all intervals.
/// `vals` holds slots_per_interval() entries per interval, `part` two partial sums per interval.
void collocation_fill_serial(const CollocationSystem& sys, const double* z, double* F, double* vals, double* part);
void collocation_fill_omp(const CollocationSystem& sys, const double* z, double* F, double* vals, double* part);

struct RegionCell {
    double A1 = 0, B1 = 0;
    int count = 0;
    Boundary nearest = Boundary::SaddleNode;
    double distance = 0;
};

/// Root counts and nearest boundary over the tensor grid A1s x B1s (row-major in B1, A1 fastest).
std::vector<RegionCell> region_map_serial(const MelnikovGrid& grid, const BoundarySet& bounds,
                                          const std::vector<double>& A1s, const std::vector<double>& B1s,
                                          double C1);
std::vector<RegionCell> region_map_omp(const MelnikovGrid& grid, const BoundarySet& bounds,
                                       const std::vector<double>& A1s, const std::vector<double>& B1s, double C1);

int max_threads();

}  // namespace rd3::kernels
