#include "rd3/melnikov.hpp"

#include "rd3/errors.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace rd3 {

namespace {

template <class F>
double refine(F f, double lo, double hi) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    boost::uintmax_t iters = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(53);
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
    return 0.5 * (r.first + r.second);
}

int sgn(double x) { return (x > 0) - (x < 0); }

}  // namespace

double melnikov_M(double z, double A1, double B1, double D, double L) {
    return A1 * std::sinh(z) / std::sinh(L) + B1 * std::sinh(z / D) / std::sinh(L / D);
}

double melnikov_dM(double z, double A1, double B1, double D, double L) {
    return A1 * std::cosh(z) / std::sinh(L) + B1 * std::cosh(z / D) / (D * std::sinh(L / D));
}

double dtilde(double D, double L) { return D * std::sinh(L / D) / std::sinh(L); }
double dhat(double D, double L) { return D * std::tanh(L / D) / std::tanh(L); }

std::string to_string(Stability s) {
    switch (s) {
        case Stability::Stable: return "stable";
        case Stability::Unstable: return "unstable";
        default: return "degenerate";
    }
}

std::string to_string(Boundary b) {
    switch (b) {
        case Boundary::LinePlus: return "line_plus";
        case Boundary::LineMinus: return "line_minus";
        default: return "saddle_node";
    }
}

MelnikovGrid::MelnikovGrid(double D, double L, int cells) : D_(D), L_(L), n_(cells) {
    if (!(D > 1.0) || !(L > 0.0) || cells < 4) throw DomainError("MelnikovGrid: need D > 1, L > 0");
    const double sL = std::sinh(L), sLD = std::sinh(L / D);
    s1_.resize(n_ + 1);
    s2_.resize(n_ + 1);
    c1_.resize(n_ + 1);
    c2_.resize(n_ + 1);
    for (int i = 0; i <= n_; ++i) {
        const double x = L * i / n_;
        const double z = L - 2.0 * x;
        s1_[i] = std::sinh(z) / sL;
        s2_[i] = std::sinh(z / D) / sLD;
        c1_[i] = std::cosh(z) / sL;
        c2_[i] = std::cosh(z / D) / (D * sLD);
    }
}

MelnikovAnalysis MelnikovGrid::find_roots(double A1, double B1, double C1) const {
    MelnikovAnalysis out;
    out.A1 = A1;
    out.B1 = B1;
    out.C1 = C1;
    out.D = D_;
    out.L = L_;
    out.dtilde = dtilde(D_, L_);
    out.dhat = dhat(D_, L_);

    const double D = D_, L = L_;
    const double h = L / n_;
    const double scale = std::abs(A1) + std::abs(B1) + std::abs(C1);
    const double ztol = 1e-12 * std::max(scale, 1e-300);
    const double btol = 1e-8 * L;
    auto g = [&](double x) { return melnikov_M(L - 2.0 * x, A1, B1, D, L) + C1; };
    auto dM = [&](double x) { return melnikov_dM(L - 2.0 * x, A1, B1, D, L); };

    std::vector<double> gv(n_ + 1), dv(n_ + 1);
    for (int i = 0; i <= n_; ++i) {
        gv[i] = A1 * s1_[i] + B1 * s2_[i] + C1;
        dv[i] = A1 * c1_[i] + B1 * c2_[i];
    }

    std::vector<double> simple;
    for (int i = 0; i < n_; ++i) {
        if (i > 0 && gv[i] == 0.0) simple.push_back(h * i);
        if (sgn(gv[i]) * sgn(gv[i + 1]) < 0) simple.push_back(refine(g, h * i, h * (i + 1)));
    }
    if (std::abs(gv[0]) <= ztol || std::abs(gv[n_]) <= ztol) out.boundary_root = true;

    // critical points of g: touching (double) roots and close root pairs missed by the grid
    std::vector<std::pair<double, int>> found;  // (x, multiplicity)
    for (double x : simple) found.push_back({x, 1});
    for (int i = 0; i < n_; ++i) {
        if (sgn(dv[i]) * sgn(dv[i + 1]) >= 0) continue;
        const double xc = refine(dM, h * i, h * (i + 1));
        const double gc = g(xc);
        bool near_simple = false;
        for (double x : simple)
            if (std::abs(x - xc) <= 2.0 * h) near_simple = true;
        if (near_simple) continue;
        if (std::abs(gc) <= ztol) {
            found.push_back({xc, 2});
        } else if (sgn(gc) != sgn(gv[i]) && sgn(gc) != sgn(gv[i + 1])) {
            found.push_back({refine(g, h * i, xc), 1});
            found.push_back({refine(g, xc, h * (i + 1)), 1});
        }
    }
    std::sort(found.begin(), found.end());

    for (auto [x, m] : found) {
        if (x <= btol || x >= L - btol) {
            out.boundary_root = true;
            continue;
        }
        MelnikovRoot r;
        r.x = x;
        r.multiplicity = m;
        const double d = dM(x);
        if (m == 1 && std::abs(d) <= 1e-10 * std::max(std::abs(A1) + std::abs(B1), 1e-300)) r.multiplicity = 3;
        if (r.multiplicity > 1)
            r.stability = Stability::Degenerate;
        else
            r.stability = d < 0.0 ? Stability::Stable : Stability::Unstable;
        out.roots.push_back(r);
    }
    return out;
}

int MelnikovGrid::count_roots(double A1, double B1, double C1) const { return find_roots(A1, B1, C1).count(); }

MelnikovAnalysis find_roots(double A1, double B1, double C1, double D, double L) {
    if (!std::isfinite(A1) || !std::isfinite(B1) || !std::isfinite(C1))
        throw DomainError("find_roots: non-finite parameters");
    return MelnikovGrid(D, L).find_roots(A1, B1, C1);
}

std::pair<double, double> saddle_node_curve(double z, double C1, double D, double L) {
    if (z == 0.0 || std::abs(z) > L) throw DomainError("saddle_node_curve: z must lie in [-L,0) or (0,L]");
    const double den = D * std::tanh(z / D) - std::tanh(z);
    const double a = C1 * std::sinh(L) / (std::cosh(z) * den);
    const double b = -C1 * D * std::sinh(L / D) / (std::cosh(z / D) * den);
    return {a, b};
}

BoundarySet::BoundarySet(double C1, double D, double L, double box, int samples) : C1_(C1) {
    const double lim = 3.0 * box;
    for (int side : {1, -1}) {
        std::vector<std::pair<double, double>> cur;
        for (int k = 1; k <= samples; ++k) {
            const double z = side * L * k / samples;
            const auto pt = saddle_node_curve(z, C1, D, L);
            const bool inside = std::abs(pt.first) <= lim && std::abs(pt.second) <= lim;
            if (inside) {
                cur.push_back(pt);
            } else if (!cur.empty()) {
                branches_.push_back(std::move(cur));
                cur.clear();
            }
        }
        if (!cur.empty()) branches_.push_back(std::move(cur));
    }
}

std::pair<double, Boundary> BoundarySet::nearest(double A1, double B1) const {
    const double s2 = std::sqrt(2.0);
    double best = std::abs(A1 + B1 - C1_) / s2;
    Boundary which = Boundary::LinePlus;
    const double dm = std::abs(A1 + B1 + C1_) / s2;
    if (dm < best) {
        best = dm;
        which = Boundary::LineMinus;
    }
    for (const auto& br : branches_) {
        for (std::size_t k = 0; k + 1 < br.size(); ++k) {
            const double ax = br[k].first, ay = br[k].second;
            const double bx = br[k + 1].first - ax, by = br[k + 1].second - ay;
            const double px = A1 - ax, py = B1 - ay;
            const double l2 = bx * bx + by * by;
            const double t = l2 > 0 ? std::clamp((px * bx + py * by) / l2, 0.0, 1.0) : 0.0;
            const double d = std::hypot(px - t * bx, py - t * by);
            if (d < best) {
                best = d;
                which = Boundary::SaddleNode;
            }
        }
    }
    return {best, which};
}

RegionInfo classify_region(double A1, double B1, double C1, double D, double L) {
    RegionInfo info;
    info.count = find_roots(A1, B1, C1, D, L).count();
    const double box = std::max({10.0, 2.0 * std::abs(A1), 2.0 * std::abs(B1)});
    const auto nb = BoundarySet(C1, D, L, box).nearest(A1, B1);
    info.distance = nb.first;
    info.nearest = nb.second;
    return info;
}

std::pair<double, double> pitchfork_window(double A1, double D, double L) {
    const double a = -dtilde(D, L) * A1, b = -A1;
    return {std::min(a, b), std::max(a, b)};
}

double pitchfork_B1(double A1, double D, double L, double lo, double hi, double tol) {
    auto stable = [&](double B1) { return melnikov_dM(0.0, A1, B1, D, L) < 0.0; };
    bool slo = stable(lo);
    if (slo == stable(hi)) throw NotFound("pitchfork_B1: stability flag does not change on [lo, hi]");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (stable(mid) == slo)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace rd3
