#pragma once

#include <functional>
#include <vector>

namespace rd3 {

/// Gauss-Legendre rule on [0, 1], nodes ascending.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

/// Fixed rule mapped to [a, b].
double integrate(const std::function<double(double)>& f, double a, double b, const GaussRule& rule);

/// Fixed rule on `panels` equal sub-intervals of [a, b].
double integrate_panels(const std::function<double(double)>& f, double a, double b, int panels,
                        const GaussRule& rule);

/// Adaptive Gauss-Kronrod (31 points) to relative tolerance `tol`.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol = 1e-13);

}  // namespace rd3
