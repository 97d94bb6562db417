#include "rd3/linsolve.hpp"

#include "rd3/errors.hpp"

#include <cmath>

namespace rd3 {

void CollocationLU::condense(int i, bool& singular) {
    const Eigen::MatrixXd& L = local_[i];
    Block& b = blocks_[i];
    b.S.compute(L.block(6, 6, s6_, s6_));
    const double det = b.S.determinant();
    if (!(det != 0.0) || !std::isfinite(det) || b.S.rcond() < 1e-14) {
        singular = true;
        return;
    }
    b.sign = det > 0 ? 1 : -1;
    b.SiSy = b.S.solve(L.block(6, 0, s6_, 6));
    b.SiSg = b.S.solve(L.block(6, blk_ + 6, s6_, ng_));
    b.CY = L.block(0, 6, 6, s6_);
}

bool CollocationLU::factorize(const CollocationSystem& sys, bool parallel) {
    N_ = sys.intervals();
    blk_ = 6 * (sys.stages() + 1);
    s6_ = blk_ - 6;
    ng_ = sys.with_param() ? 2 : 1;
    n_ = sys.size();
    const int nb = N_ * blk_;
    const int wide = blk_ + 6 + ng_;
    local_.assign(N_, Eigen::MatrixXd::Zero(blk_, wide));
    border_ = Eigen::MatrixXd::Zero(ng_, n_);
    blocks_.resize(N_);

    const auto& J = sys.jacobian();
    for (int c = 0; c < J.outerSize(); ++c) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(J, c); it; ++it) {
            const int r = static_cast<int>(it.row());
            if (r >= nb) {
                border_(r - nb, c) += it.value();
                continue;
            }
            const int ri = r / blk_, lr = r % blk_;
            int lc;
            if (c >= nb)
                lc = blk_ + 6 + (c - nb);
            else if (c / blk_ == ri)
                lc = c % blk_;
            else
                lc = blk_ + c % blk_;  // next node from a continuity row
            local_[ri](lr, lc) += it.value();
        }
    }

    bool singular = false;
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < N_; ++i) {
            bool sg = false;
            condense(i, sg);
            if (sg) {
#pragma omp atomic write
                singular = true;
            }
        }
    } else {
        for (int i = 0; i < N_; ++i) condense(i, singular);
    }
    if (singular) return ok_ = false;

    // condensed system: node values then globals
    const int m = 6 * N_ + ng_;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(N_) * (72 + 6 * ng_ + 6 * ng_) + ng_ * ng_);
    Eigen::MatrixXd Bg = border_.rightCols(ng_);
    for (int i = 0; i < N_; ++i) {
        const Eigen::MatrixXd& L = local_[i];
        const Block& b = blocks_[i];
        const Eigen::MatrixXd Cy = L.block(0, 0, 6, 6) - b.CY * b.SiSy;
        const Eigen::MatrixXd Cn = L.block(0, blk_, 6, 6);
        const Eigen::MatrixXd Cg = L.block(0, blk_ + 6, 6, ng_) - b.CY * b.SiSg;
        const int ni = 6 * i, nn = 6 * ((i + 1) % N_);
        for (int r = 0; r < 6; ++r) {
            for (int c = 0; c < 6; ++c) {
                trip.emplace_back(ni + r, ni + c, Cy(r, c));
                trip.emplace_back(ni + r, nn + c, Cn(r, c));
            }
            for (int g = 0; g < ng_; ++g) trip.emplace_back(ni + r, 6 * N_ + g, Cg(r, g));
        }
        const Eigen::MatrixXd BY = border_.block(0, i * blk_ + 6, ng_, s6_);
        const Eigen::MatrixXd By = border_.block(0, i * blk_, ng_, 6) - BY * b.SiSy;
        Bg -= BY * b.SiSg;
        for (int g = 0; g < ng_; ++g)
            for (int c = 0; c < 6; ++c) trip.emplace_back(6 * N_ + g, ni + c, By(g, c));
    }
    for (int g = 0; g < ng_; ++g)
        for (int h = 0; h < ng_; ++h) trip.emplace_back(6 * N_ + g, 6 * N_ + h, Bg(g, h));

    Eigen::SparseMatrix<double> R(m, m);
    R.setFromTriplets(trip.begin(), trip.end());
    R.makeCompressed();
    reduced_.compute(R);
    if (reduced_.info() != Eigen::Success) return ok_ = false;
    const double sd = reduced_.signDeterminant();
    if (!(sd != 0.0)) return ok_ = false;
    sign_ = sd > 0 ? 1 : -1;
    // the stage-first reordering permutes rows and columns alike, so the
    // determinant is the product of the block determinants and the Schur complement
    for (const auto& b : blocks_) sign_ *= b.sign;
    return ok_ = true;
}

Eigen::VectorXd CollocationLU::solve(const Eigen::VectorXd& rhs) const {
    if (!ok_) throw SingularJacobian("CollocationLU: no valid factorization");
    std::vector<Eigen::VectorXd> t(N_);
    Eigen::VectorXd red(6 * N_ + ng_);
    Eigen::VectorXd rb = rhs.tail(ng_);
    for (int i = 0; i < N_; ++i) {
        const Block& b = blocks_[i];
        t[i] = b.S.solve(rhs.segment(i * blk_ + 6, s6_));
        red.segment(6 * i, 6) = rhs.segment(i * blk_, 6) - b.CY * t[i];
        rb -= border_.block(0, i * blk_ + 6, ng_, s6_) * t[i];
    }
    red.tail(ng_) = rb;
    const Eigen::VectorXd y = reduced_.solve(red);
    Eigen::VectorXd x(n_);
    const Eigen::VectorXd g = y.tail(ng_);
    x.tail(ng_) = g;
    for (int i = 0; i < N_; ++i) {
        const Block& b = blocks_[i];
        const Eigen::VectorXd yi = y.segment(6 * i, 6);
        x.segment(i * blk_, 6) = yi;
        x.segment(i * blk_ + 6, s6_) = t[i] - b.SiSy * yi - b.SiSg * g;
    }
    return x;
}

}  // namespace rd3
