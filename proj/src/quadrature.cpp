#include "rd3/quadrature.hpp"

#include "rd3/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <cmath>

namespace rd3 {

GaussRule gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: n must be positive");
    // boost returns the non-negative zeros of P_n
    const auto pos = boost::math::legendre_p_zeros<double>(n);
    std::vector<double> x;
    for (double z : pos) {
        x.push_back(z);
        if (z != 0.0) x.push_back(-z);
    }
    std::sort(x.begin(), x.end());
    GaussRule r;
    for (double z : x) {
        const double dp = boost::math::legendre_p_prime(n, z);
        r.nodes.push_back(0.5 * (z + 1.0));
        r.weights.push_back(1.0 / ((1.0 - z * z) * dp * dp));
    }
    return r;
}

double integrate(const std::function<double(double)>& f, double a, double b, const GaussRule& rule) {
    const double h = b - a;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(a + h * rule.nodes[i]);
    return h * s;
}

double integrate_panels(const std::function<double(double)>& f, double a, double b, int panels,
                        const GaussRule& rule) {
    const double h = (b - a) / panels;
    double s = 0.0;
    for (int k = 0; k < panels; ++k) s += integrate(f, a + k * h, a + (k + 1) * h, rule);
    return s;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol);
}

}  // namespace rd3
