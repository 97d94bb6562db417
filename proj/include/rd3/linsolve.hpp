#pragma once

#include "rd3/collocation.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include <vector>

namespace rd3 {

/// LU of the collocation Jacobian by condensation: the stage unknowns of each
/// interval are eliminated with a dense LU, leaving a cyclic block-bidiagonal
/// system in the node values and the global unknowns, solved by sparse LU.
class CollocationLU {
public:
    /// False if a stage block or the condensed system is singular.
    bool factorize(const CollocationSystem& sys, bool parallel = true);
    Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
    /// Sign of the determinant of the full Jacobian (0 if singular).
    int det_sign() const { return ok_ ? sign_ : 0; }

private:
    struct Block {
        Eigen::PartialPivLU<Eigen::MatrixXd> S;  // stage rows x stage cols
        Eigen::MatrixXd SiSy, SiSg;              // S^-1 [node col, global cols]
        Eigen::MatrixXd CY;                      // continuity rows x stage cols
        int sign = 1;
    };
    void condense(int i, bool& singular);

    int N_ = 0, s6_ = 0, blk_ = 0, ng_ = 0, n_ = 0;
    // dense copies filled from the sparse Jacobian
    std::vector<Eigen::MatrixXd> local_;  // blk x (blk + 6 + ng) per interval
    Eigen::MatrixXd border_;              // ng x n
    std::vector<Block> blocks_;
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> reduced_;
    int sign_ = 0;
    bool ok_ = false;
};

}  // namespace rd3
