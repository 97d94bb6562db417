#include "rd3/collocation.hpp"

#include "rd3/errors.hpp"
#include "rd3/kernels.hpp"
#include "rd3/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace rd3 {

const std::array<std::vector<int>, 6> kJacMask = {{{0, 1, 2, 4}, {0, 1, 2, 4}, {0, 2, 3}, {0, 2, 3}, {0, 4, 5},
                                                   {0, 4, 5}}};

Tableau gauss_tableau(int s) {
    const GaussRule g = gauss_legendre(s);
    Tableau t;
    t.s = s;
    t.c = g.nodes;
    t.b = g.weights;
    t.a.assign(s * s, 0.0);
    for (int j = 0; j < s; ++j) {
        for (int l = 0; l < s; ++l) {
            // integral over [0, c_j] of the Lagrange basis l_l on the nodes c
            double v = 0.0;
            for (int m = 0; m < s; ++m) {
                const double t0 = t.c[j] * g.nodes[m];
                double basis = 1.0;
                for (int k = 0; k < s; ++k)
                    if (k != l) basis *= (t0 - t.c[k]) / (t.c[l] - t.c[k]);
                v += g.weights[m] * basis;
            }
            t.a[j * s + l] = t.c[j] * v;
        }
    }
    return t;
}

std::vector<double> lagrange_weights(const Tableau& tab, double t) {
    const int m = tab.s + 1;
    std::vector<double> pts(m);
    pts[0] = 0.0;
    for (int j = 0; j < tab.s; ++j) pts[j + 1] = tab.c[j];
    std::vector<double> w(m, 1.0);
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
            if (l != k) w[k] *= (t - pts[l]) / (pts[k] - pts[l]);
    return w;
}

namespace {

struct Local {
    double f[6];
    double g[6];        // grad H
    double fa[6];       // d(f + sigma grad H)/dA
    double J[6][6];     // d(f + sigma grad H)/dy on the mask
};

void local_eval(const SystemParams& P, double A, double sigma, const double* y, Local& L) {
    const double eps = P.eps, B = P.B(), C = P.C(), D = P.D;
    const double u = y[0], p = y[1], v = y[2], q = y[3], w = y[4], r = y[5];
    const double K = A * v + B * w + C;
    const double f[6] = {p / eps, (u * u * u - u + K) / eps, q, v - u, r / D, (w - u) / D};
    const double g[6] = {u - u * u * u - K, p, A * (v - u), -A * q, B * (w - u), -B * r};
    for (int c = 0; c < 6; ++c) {
        L.g[c] = g[c];
        L.f[c] = f[c] + sigma * g[c];
    }
    L.fa[0] = -sigma * v;
    L.fa[1] = v / eps;
    L.fa[2] = sigma * (v - u);
    L.fa[3] = -sigma * q;
    L.fa[4] = 0.0;
    L.fa[5] = 0.0;
    const double k = 3.0 * u * u - 1.0;
    auto& J = L.J;
    J[0][0] = -sigma * k;     J[0][1] = 1.0 / eps;      J[0][2] = -sigma * A;     J[0][4] = -sigma * B;
    J[1][0] = k / eps;        J[1][1] = sigma;          J[1][2] = A / eps;        J[1][4] = B / eps;
    J[2][0] = -sigma * A;     J[2][2] = sigma * A;      J[2][3] = 1.0;
    J[3][0] = -1.0;           J[3][2] = 1.0;            J[3][3] = -sigma * A;
    J[4][0] = -sigma * B;     J[4][4] = sigma * B;      J[4][5] = 1.0 / D;
    J[5][0] = -1.0 / D;       J[5][4] = 1.0 / D;        J[5][5] = -sigma * B;
}

// Walks interval i in slot order; Emit(row, col, value).
template <class Emit>
void walk_interval(const CollocationSystem& S, const std::vector<double>& x, int i, const double* z, double* F,
                   double* part, const double* fref, const double* arc, Emit&& emit) {
    const Tableau& T = S.tableau();
    const int s = T.s;
    const double h = x[i + 1] - x[i];
    const double sigma = z[S.sigma_index()];
    const double A = S.with_param() ? z[S.param_index()] : S.params().A();
    const int ni = S.node(i), nn = S.node(i + 1);
    const int sc = S.sigma_index(), pc = S.param_index();

    Local loc[16];
    for (int j = 0; j < s; ++j) local_eval(S.params(), A, sigma, z + S.stage(i, j), loc[j]);

    // continuity
    for (int c = 0; c < 6; ++c) {
        const int row = ni + c;
        double acc = 0.0, accg = 0.0, acca = 0.0;
        for (int j = 0; j < s; ++j) {
            acc += T.b[j] * loc[j].f[c];
            accg += T.b[j] * loc[j].g[c];
            acca += T.b[j] * loc[j].fa[c];
        }
        F[row] = z[nn + c] - z[ni + c] - h * acc;
        emit(row, ni + c, -1.0);
        emit(row, nn + c, 1.0);
        for (int j = 0; j < s; ++j)
            for (int cc : kJacMask[c]) emit(row, S.stage(i, j) + cc, -h * T.b[j] * loc[j].J[c][cc]);
        emit(row, sc, -h * accg);
        if (S.with_param()) emit(row, pc, -h * acca);
    }
    // stages
    for (int j = 0; j < s; ++j) {
        for (int c = 0; c < 6; ++c) {
            const int row = S.stage(i, j) + c;
            double acc = 0.0, accg = 0.0, acca = 0.0;
            for (int l = 0; l < s; ++l) {
                acc += T.A(j, l) * loc[l].f[c];
                accg += T.A(j, l) * loc[l].g[c];
                acca += T.A(j, l) * loc[l].fa[c];
            }
            F[row] = z[S.stage(i, j) + c] - z[ni + c] - h * acc;
            emit(row, ni + c, -1.0);
            for (int l = 0; l < s; ++l)
                for (int cc : kJacMask[c])
                    emit(row, S.stage(i, l) + cc, (j == l && c == cc ? 1.0 : 0.0) - h * T.A(j, l) * loc[l].J[c][cc]);
            emit(row, sc, -h * accg);
            if (S.with_param()) emit(row, pc, -h * acca);
        }
    }
    // phase and arclength rows
    double ph = 0.0, ar = 0.0;
    for (int j = 0; j < s; ++j) {
        const int base = (i * s + j) * 6;
        for (int c = 0; c < 6; ++c) {
            const double coef = fref ? h * T.b[j] * fref[base + c] : 0.0;
            ph += coef * z[S.stage(i, j) + c];
            emit(S.phase_row(), S.stage(i, j) + c, coef);
        }
    }
    if (S.with_param()) {
        for (int j = 0; j < s; ++j) {
            const int base = (i * s + j) * 6;
            for (int c = 0; c < 6; ++c) {
                const double coef = arc ? arc[base + c] : 0.0;
                ar += coef * z[S.stage(i, j) + c];
                emit(S.arc_row(), S.stage(i, j) + c, coef);
            }
        }
    }
    part[0] = ph;
    part[1] = ar;
}

}  // namespace

CollocationSystem::CollocationSystem(const SystemParams& params, std::vector<double> mesh, const Tableau& tab,
                                     bool with_param)
    : P_(params), x_(std::move(mesh)), tab_(tab), with_param_(with_param) {
    N_ = static_cast<int>(x_.size()) - 1;
    if (N_ < 2) throw DomainError("CollocationSystem: need at least two intervals");
    if (tab_.s > 16) throw DomainError("CollocationSystem: at most 16 stages");
    blk_ = 6 * (tab_.s + 1);
    n_ = N_ * blk_ + 1 + (with_param_ ? 1 : 0);
    fref_.assign(static_cast<std::size_t>(N_) * tab_.s * 6, 0.0);
    arc_.assign(static_cast<std::size_t>(N_) * tab_.s * 6, 0.0);
    build_pattern();
}

void CollocationSystem::build_pattern() {
    std::vector<Eigen::Triplet<double>> trip;
    std::vector<double> z(n_, 0.0), F(n_, 0.0);
    double part[2];
    for (int i = 0; i < N_; ++i) {
        const std::size_t before = trip.size();
        walk_interval(*this, x_, i, z.data(), F.data(), part, fref_.data(), arc_.data(),
                      [&](int r, int c, double) { trip.emplace_back(r, c, 1.0); });
        if (i == 0) K_ = static_cast<int>(trip.size() - before);
    }
    // global slots: (phase row, sigma), and (arc row, A)
    trip.emplace_back(phase_row(), sigma_index(), 1.0);
    if (with_param_) trip.emplace_back(arc_row(), param_index(), 1.0);

    J_.resize(n_, n_);
    J_.setFromTriplets(trip.begin(), trip.end(), [](double a, double) { return a; });
    J_.makeCompressed();
    if (static_cast<std::size_t>(J_.nonZeros()) != trip.size())
        throw DomainError("CollocationSystem: duplicate Jacobian slots");
    slot_.resize(trip.size());
    const int* outer = J_.outerIndexPtr();
    const int* inner = J_.innerIndexPtr();
    for (std::size_t k = 0; k < trip.size(); ++k) {
        const int col = trip[k].col(), row = trip[k].row();
        const int* b = inner + outer[col];
        const int* e = inner + outer[col + 1];
        slot_[k] = static_cast<int>(std::lower_bound(b, e, row) - inner);
    }
    vals_.assign(trip.size(), 0.0);
    part_.assign(2 * N_, 0.0);
}

void CollocationSystem::fill_interval(int i, const double* z, double* F, double* vals, double* part) const {
    int k = 0;
    walk_interval(*this, x_, i, z, F, part, phase_active_ ? fref_.data() : nullptr, with_param_ ? arc_.data() : nullptr,
                  [&](int, int, double v) { vals[k++] = v; });
}

PhasePoint CollocationSystem::rhs(const PhasePoint& y, double sigma, double A) const {
    Local L;
    const double yy[6] = {y.u, y.p, y.v, y.q, y.w, y.r};
    local_eval(P_, A, sigma, yy, L);
    return {L.f[0], L.f[1], L.f[2], L.f[3], L.f[4], L.f[5]};
}

void CollocationSystem::set_phase_reference(const Eigen::VectorXd& zref) {
    const double A = with_param_ ? zref[param_index()] : P_.A();
    double norm = 0.0;
    phase_const_ = 0.0;
    for (int i = 0; i < N_; ++i) {
        const double h = x_[i + 1] - x_[i];
        for (int j = 0; j < tab_.s; ++j) {
            Local L;
            local_eval(P_, A, 0.0, zref.data() + stage(i, j), L);
            const int base = (i * tab_.s + j) * 6;
            for (int c = 0; c < 6; ++c) {
                fref_[base + c] = L.f[c];
                norm += h * tab_.b[j] * L.f[c] * L.f[c];
                phase_const_ += h * tab_.b[j] * L.f[c] * zref[stage(i, j) + c];
            }
        }
    }
    phase_active_ = std::sqrt(norm) > 1e-8;
}

void CollocationSystem::set_arclength(const Eigen::VectorXd& coef_stage, double coefA, double rhs) {
    for (std::size_t k = 0; k < arc_.size(); ++k) arc_[k] = coef_stage[k];
    arcA_ = coefA;
    arc_rhs_ = rhs;
}

void CollocationSystem::evaluate(const Eigen::VectorXd& z, Eigen::VectorXd& F, bool parallel) {
    F.setZero(n_);
    if (parallel)
        kernels::collocation_fill_omp(*this, z.data(), F.data(), vals_.data(), part_.data());
    else
        kernels::collocation_fill_serial(*this, z.data(), F.data(), vals_.data(), part_.data());
    const std::size_t nint = static_cast<std::size_t>(K_) * N_;
    vals_[nint] = phase_active_ ? 0.0 : 1.0;
    if (with_param_) vals_[nint + 1] = arcA_;
    double ph = 0.0, ar = 0.0;
    for (int i = 0; i < N_; ++i) {
        ph += part_[2 * i];
        ar += part_[2 * i + 1];
    }
    F[phase_row()] = phase_active_ ? ph - phase_const_ : z[sigma_index()];
    if (with_param_) F[arc_row()] = ar + arcA_ * z[param_index()] - arc_rhs_;
    double* jv = J_.valuePtr();
    for (std::size_t k = 0; k < slot_.size(); ++k) jv[slot_[k]] = vals_[k];
}

Eigen::VectorXd CollocationSystem::residual(const Eigen::VectorXd& z, bool parallel) {
    Eigen::VectorXd F;
    evaluate(z, F, parallel);
    return F;
}

}  // namespace rd3
