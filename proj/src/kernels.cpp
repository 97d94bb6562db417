#include "rd3/kernels.hpp"

#include <omp.h>

namespace rd3::kernels {

void collocation_fill_serial(const CollocationSystem& sys, const double* z, double* F, double* vals, double* part) {
    const int N = sys.intervals(), K = sys.slots_per_interval();
    for (int i = 0; i < N; ++i) sys.fill_interval(i, z, F, vals + static_cast<long>(i) * K, part + 2 * i);
}

void collocation_fill_omp(const CollocationSystem& sys, const double* z, double* F, double* vals, double* part) {
    const int N = sys.intervals(), K = sys.slots_per_interval();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < N; ++i) sys.fill_interval(i, z, F, vals + static_cast<long>(i) * K, part + 2 * i);
}

namespace {

RegionCell cell(const MelnikovGrid& grid, const BoundarySet& bounds, double A1, double B1, double C1) {
    RegionCell c;
    c.A1 = A1;
    c.B1 = B1;
    c.count = grid.find_roots(A1, B1, C1).count();
    const auto nb = bounds.nearest(A1, B1);
    c.distance = nb.first;
    c.nearest = nb.second;
    return c;
}

}  // namespace

std::vector<RegionCell> region_map_serial(const MelnikovGrid& grid, const BoundarySet& bounds,
                                          const std::vector<double>& A1s, const std::vector<double>& B1s,
                                          double C1) {
    const long na = static_cast<long>(A1s.size()), nb = static_cast<long>(B1s.size());
    std::vector<RegionCell> out(na * nb);
    for (long k = 0; k < na * nb; ++k) out[k] = cell(grid, bounds, A1s[k % na], B1s[k / na], C1);
    return out;
}

std::vector<RegionCell> region_map_omp(const MelnikovGrid& grid, const BoundarySet& bounds,
                                       const std::vector<double>& A1s, const std::vector<double>& B1s, double C1) {
    const long na = static_cast<long>(A1s.size()), nb = static_cast<long>(B1s.size());
    std::vector<RegionCell> out(na * nb);
#pragma omp parallel for schedule(dynamic, 64)
    for (long k = 0; k < na * nb; ++k) out[k] = cell(grid, bounds, A1s[k % na], B1s[k / na], C1);
    return out;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace rd3::kernels
