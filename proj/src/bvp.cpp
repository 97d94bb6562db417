#include "rd3/bvp.hpp"

#include "rd3/errors.hpp"

#include "rd3/linsolve.hpp"

#include <algorithm>
#include <cmath>

namespace rd3 {

namespace {

PhasePoint from_ptr(const double* p) { return {p[0], p[1], p[2], p[3], p[4], p[5]}; }

void to_ptr(const PhasePoint& y, double* p) {
    for (int c = 0; c < 6; ++c) p[c] = y[c];
}

int blk(const Tableau& tab) { return 6 * (tab.s + 1); }

}  // namespace

PhasePoint PeriodicOrbit::node(int i) const {
    const int N = intervals();
    return from_ptr(z.data() + (i % N) * blk(tab));
}

PhasePoint PeriodicOrbit::stage(int i, int j) const { return from_ptr(z.data() + i * blk(tab) + 6 * (j + 1)); }

PhasePoint PeriodicOrbit::at(double x) const {
    const double L = params.L;
    const double span = 2.0 * L;
    double xx = std::fmod(x + L, span);
    if (xx < 0) xx += span;
    xx -= L;
    auto it = std::upper_bound(mesh.begin(), mesh.end(), xx);
    int i = std::clamp(static_cast<int>(it - mesh.begin()) - 1, 0, intervals() - 1);
    const double h = mesh[i + 1] - mesh[i];
    const auto w = lagrange_weights(tab, (xx - mesh[i]) / h);
    PhasePoint y, n = node(i);
    for (int c = 0; c < 6; ++c) y[c] = w[0] * n[c];
    for (int j = 0; j < tab.s; ++j) {
        const PhasePoint st = stage(i, j);
        for (int c = 0; c < 6; ++c) y[c] += w[j + 1] * st[c];
    }
    return y;
}

std::vector<std::pair<double, PhasePoint>> PeriodicOrbit::samples() const {
    std::vector<std::pair<double, PhasePoint>> out;
    const int N = intervals();
    for (int i = 0; i < N; ++i) {
        const double h = mesh[i + 1] - mesh[i];
        out.push_back({mesh[i], node(i)});
        for (int j = 0; j < tab.s; ++j) out.push_back({mesh[i] + tab.c[j] * h, stage(i, j)});
    }
    out.push_back({mesh[N], node(0)});
    return out;
}

double PeriodicOrbit::hamiltonian_drift() const {
    const double A = params.A(), B = params.B(), C = params.C();
    double hmin = 1e300, hmax = -1e300, scale = 0.0;
    for (int i = 0; i < intervals(); ++i) {
        const PhasePoint y = node(i);
        const double H = hamiltonian(params, y);
        hmin = std::min(hmin, H);
        hmax = std::max(hmax, H);
        const double u2 = y.u * y.u;
        const double terms = 0.5 * y.p * y.p + 0.25 * u2 * u2 + 0.5 * u2 + 0.5 * std::abs(A) * (y.q * y.q + y.v * y.v) +
                             0.5 * std::abs(B) * (y.r * y.r + y.w * y.w) + std::abs((A * y.v + B * y.w + C) * y.u);
        scale = std::max(scale, terms);
    }
    return (hmax - hmin) / std::max(scale, 1e-300);
}

std::vector<double> PeriodicOrbit::zero_crossings() const {
    std::vector<double> out;
    const auto s = samples();
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
        const double a = s[k].second.u, b = s[k + 1].second.u;
        if (a == 0.0) {
            out.push_back(s[k].first);
            continue;
        }
        if (a * b >= 0.0) continue;
        double lo = s[k].first, hi = s[k + 1].first, flo = a;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = at(mid).u;
            if ((fm < 0) == (flo < 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

double PeriodicOrbit::extremum_position() const {
    const auto s = samples();
    double mean = 0.0;
    for (const auto& [x, y] : s) mean += y.u;
    mean /= static_cast<double>(s.size());
    double best = -1.0, xb = 0.0;
    for (const auto& [x, y] : s)
        if (std::abs(y.u - mean) > best) {
            best = std::abs(y.u - mean);
            xb = x;
        }
    return xb;
}

double orbit_mass(const std::vector<double>& mesh, const Tableau& tab, const Eigen::VectorXd& z) {
    double m = 0.0;
    const int N = static_cast<int>(mesh.size()) - 1;
    for (int i = 0; i < N; ++i) {
        const double h = mesh[i + 1] - mesh[i];
        double s = 0.0;
        for (int j = 0; j < tab.s; ++j) s += tab.b[j] * z[i * blk(tab) + 6 * (j + 1)];
        m += h * s;
    }
    return m;
}

std::vector<double> equidistribute(const std::vector<std::pair<double, PhasePoint>>& s, double L, int N) {
    const std::size_t M = s.size();
    std::vector<double> W(M, 0.0);
    double tv = 0.0;
    for (std::size_t k = 0; k + 1 < M; ++k)
        tv += std::abs(s[k + 1].second.u - s[k].second.u) + std::abs(s[k + 1].second.p - s[k].second.p);
    const double alpha = tv > 0 ? 2.0 * L / tv : 0.0;
    for (std::size_t k = 0; k + 1 < M; ++k) {
        const double d = std::abs(s[k + 1].second.u - s[k].second.u) + std::abs(s[k + 1].second.p - s[k].second.p);
        W[k + 1] = W[k] + (s[k + 1].first - s[k].first) + alpha * d;
    }
    std::vector<double> mesh(N + 1);
    mesh[0] = -L;
    mesh[N] = L;
    std::size_t k = 0;
    for (int m = 1; m < N; ++m) {
        const double target = W.back() * m / N;
        while (k + 1 < M && W[k + 1] < target) ++k;
        const double t = (target - W[k]) / (W[k + 1] - W[k]);
        mesh[m] = s[k].first + t * (s[k + 1].first - s[k].first);
    }
    return mesh;
}

std::vector<double> mesh_from_profile(const Profile& seed, double L, int N) {
    const int M = std::max(40000, 50 * N);
    std::vector<std::pair<double, PhasePoint>> s(M + 1);
    for (int k = 0; k <= M; ++k) {
        const double x = -L + 2.0 * L * k / M;
        s[k] = {x, seed(x)};
    }
    return equidistribute(s, L, N);
}

Eigen::VectorXd discretize(const Profile& seed, const std::vector<double>& mesh, const Tableau& tab, bool with_param,
                           double A) {
    const int N = static_cast<int>(mesh.size()) - 1;
    Eigen::VectorXd z = Eigen::VectorXd::Zero(N * blk(tab) + 1 + (with_param ? 1 : 0));
    for (int i = 0; i < N; ++i) {
        const double h = mesh[i + 1] - mesh[i];
        to_ptr(seed(mesh[i]), z.data() + i * blk(tab));
        for (int j = 0; j < tab.s; ++j) to_ptr(seed(mesh[i] + tab.c[j] * h), z.data() + i * blk(tab) + 6 * (j + 1));
    }
    if (with_param) z[N * blk(tab) + 1] = A;
    return z;
}

PeriodicOrbit remesh(const PeriodicOrbit& orbit, const std::vector<double>& mesh) {
    PeriodicOrbit out = orbit;
    out.mesh = mesh;
    const int Nold = orbit.intervals();
    const bool with_param = orbit.z.size() == Nold * blk(orbit.tab) + 2;
    const double A = with_param ? orbit.z[Nold * blk(orbit.tab) + 1] : orbit.params.A();
    out.z = discretize([&](double x) { return orbit.at(x); }, mesh, orbit.tab, with_param, A);
    out.z[(static_cast<int>(mesh.size()) - 1) * blk(orbit.tab)] = orbit.sigma;
    out.mass = orbit_mass(mesh, orbit.tab, out.z);
    return out;
}

NewtonStats newton(CollocationSystem& sys, Eigen::VectorXd& z, int max_iter, double tol, bool parallel) {
    CollocationLU lu;
    Eigen::VectorXd F, Fn;
    sys.evaluate(z, F, parallel);
    NewtonStats st;
    double fn = F.lpNorm<Eigen::Infinity>();
    for (int it = 0; it <= max_iter; ++it) {
        st.iterations = it;
        st.residual = fn;
        if (!std::isfinite(fn)) throw NoConvergence("newton: non-finite residual");
        if (fn <= tol) {
            st.det_sign = lu.factorize(sys, parallel) ? lu.det_sign() : 0;
            return st;
        }
        if (it == max_iter) break;
        if (!lu.factorize(sys, parallel)) throw SingularJacobian("newton: singular Jacobian");
        const Eigen::VectorXd dz = lu.solve(-F);
        if (!dz.allFinite()) throw SingularJacobian("newton: non-finite update");
        const double f2 = F.norm();
        double lam = 1.0;
        Eigen::VectorXd zn;
        for (int k = 0; k < 8; ++k) {
            zn = z + lam * dz;
            sys.evaluate(zn, Fn, parallel);
            if (Fn.allFinite() && Fn.norm() < (1.0 - 1e-4 * lam) * f2) break;
            lam *= 0.5;
        }
        z = zn;
        F = Fn;
        fn = F.lpNorm<Eigen::Infinity>();
        if (!F.allFinite()) throw NoConvergence("newton: non-finite residual");
    }
    throw NoConvergence("newton: no convergence within " + std::to_string(max_iter) + " iterations (residual " +
                        std::to_string(fn) + ")");
}

namespace {

PeriodicOrbit solve_on_mesh(const SystemParams& P, const std::vector<double>& mesh, const Tableau& tab,
                            Eigen::VectorXd z, const SolverOptions& o) {
    CollocationSystem sys(P, mesh, tab, false);
    sys.set_phase_reference(z);
    const NewtonStats st = newton(sys, z, o.max_iter, o.tol, o.parallel);
    PeriodicOrbit orb;
    orb.params = P;
    orb.mesh = mesh;
    orb.tab = tab;
    orb.z = z;
    orb.sigma = z[sys.sigma_index()];
    orb.mass = orbit_mass(mesh, tab, z);
    orb.residual_norm = st.residual;
    orb.iterations = st.iterations;
    return orb;
}

PeriodicOrbit refine_mesh(PeriodicOrbit orb, const SystemParams& P, const SolverOptions& o) {
    for (int pass = 0; pass < o.remesh_passes; ++pass) {
        const auto mesh = equidistribute(orb.samples(), P.L, o.intervals);
        const PeriodicOrbit r = remesh(orb, mesh);
        const int it = orb.iterations;
        orb = solve_on_mesh(P, mesh, orb.tab, r.z, o);
        orb.iterations += it;
    }
    return orb;
}

}  // namespace

PeriodicOrbit newton_solve(const Profile& seed, const SystemParams& P, const SolverOptions& o) {
    P.validate();
    const Tableau tab = gauss_tableau(o.stages);
    const auto mesh = mesh_from_profile(seed, P.L, o.intervals);
    PeriodicOrbit orb = solve_on_mesh(P, mesh, tab, discretize(seed, mesh, tab, false, P.A()), o);
    return refine_mesh(orb, P, o);
}

PeriodicOrbit newton_solve(const PeriodicOrbit& seed, const SystemParams& P, const SolverOptions& o) {
    P.validate();
    PeriodicOrbit s = seed;
    if (s.tab.s != o.stages) s.tab = gauss_tableau(o.stages);
    const auto mesh = equidistribute(seed.samples(), P.L, o.intervals);
    const Eigen::VectorXd z = discretize([&](double x) { return seed.at(x); }, mesh, s.tab, false, P.A());
    PeriodicOrbit orb = solve_on_mesh(P, mesh, s.tab, z, o);
    return refine_mesh(orb, P, o);
}

bool has_complex_quadruple(const SystemParams& P, int branch) {
    const auto eq = equilibria(P);
    const double ue = branch >= 0 ? eq.back().ue : eq.front().ue;
    const auto lin = linearize(P, ue);
    return lin.slow[0] == PairType::Complex || lin.slow[1] == PairType::Complex;
}

double detect_hamiltonian_hopf(SystemParams P, double A_lo, double A_hi, int branch, double tol) {
    if (!P.small_bc()) throw DomainError("detect_hamiltonian_hopf: requires B = eps*B1 and C = eps*C1");
    auto cfg = [&](double A) {
        SystemParams q = P;
        q.A0 = A;
        q.A1 = 0.0;
        return has_complex_quadruple(q, branch);
    };
    const int M = 4000;
    const bool c0 = cfg(A_lo);
    double lo = A_lo, hi = A_lo;
    bool found = false;
    for (int k = 1; k <= M; ++k) {
        const double A = A_lo + (A_hi - A_lo) * k / M;
        if (cfg(A) != c0) {
            hi = A;
            found = true;
            break;
        }
        lo = A;
    }
    if (!found) throw NotFound("detect_hamiltonian_hopf: no eigenvalue collision in range");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (cfg(mid) == c0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace rd3
