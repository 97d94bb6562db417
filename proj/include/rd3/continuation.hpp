#pragma once

#include "rd3/bvp.hpp"

#include <limits>
#include <string>
#include <vector>

namespace rd3 {

struct ContinuationOptions {
    double ds = 0.02;       // initial step in the weighted arclength
    double ds_min = 1e-8;
    double ds_max = 0.1;
    int max_steps = 500;
    double A_min = -std::numeric_limits<double>::infinity();
    double A_max = std::numeric_limits<double>::infinity();
    int direction = 1;      // sign of dA on the first step
    int newton_max = 10;
    double tol = 1e-10;
    int remesh_every = 10;  // 0 disables remeshing
    bool detect_branch_points = true;
    bool parallel = true;
    int stop_after_folds = -1;  // stop after this many folds (negative: never)
};

enum class EventKind { Fold, Pitchfork, Start, End };
std::string to_string(EventKind k);

struct BranchEvent {
    EventKind kind = EventKind::Start;
    double A = 0.0;
    double mass = 0.0;
    int step = 0;
    int branch_id = 0;
    std::string note;
    PeriodicOrbit orbit;
    Eigen::VectorXd tangent;  // unit tangent at the event (weighted norm)
};

struct DiagramRow {
    int step = 0;
    double A = 0.0;
    double mass = 0.0;
    int stability_hint = 0;  // sign of the bordered Jacobian determinant
    int branch_id = 0;
};

struct BranchResult {
    std::vector<DiagramRow> rows;
    std::vector<BranchEvent> events;
    PeriodicOrbit last;
};

/// Continue a converged orbit in A (A0 varies, A1 = 0).
BranchResult continue_branch(const PeriodicOrbit& start, const ContinuationOptions& opts, int branch_id = 0);

/// Leave a branch point along the second null direction and continue the new branch.
BranchResult switch_branch(const BranchEvent& bp, const ContinuationOptions& opts, int branch_id);

}  // namespace rd3
