#include "rd3/continuation.hpp"

#include "rd3/errors.hpp"
#include "rd3/linsolve.hpp"


#include <cmath>
#include <optional>
#include <random>

namespace rd3 {

std::string to_string(EventKind k) {
    switch (k) {
        case EventKind::Fold: return "fold";
        case EventKind::Pitchfork: return "branch_point";
        case EventKind::Start: return "start";
        default: return "end";
    }
}

namespace {

struct Frame {
    SystemParams params;
    std::vector<double> mesh;
    Tableau tab;
    int N() const { return static_cast<int>(mesh.size()) - 1; }
    int blk() const { return 6 * (tab.s + 1); }
    int aidx() const { return N() * blk() + 1; }
};

double wdot(const Frame& f, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    double s = 0.0;
    for (int i = 0; i < f.N(); ++i) {
        const double h = f.mesh[i + 1] - f.mesh[i];
        for (int j = 0; j < f.tab.s; ++j) {
            const int o = i * f.blk() + 6 * (j + 1);
            double d = 0.0;
            for (int c = 0; c < 6; ++c) d += a[o + c] * b[o + c];
            s += h * f.tab.b[j] * d;
        }
    }
    return s / (2.0 * f.params.L) + a[f.aidx()] * b[f.aidx()];
}

double wnorm(const Frame& f, const Eigen::VectorXd& a) { return std::sqrt(wdot(f, a, a)); }

void set_arc(const Frame& f, CollocationSystem& sys, const Eigen::VectorXd& T, const Eigen::VectorXd& Zp) {
    Eigen::VectorXd coef(static_cast<Eigen::Index>(f.N()) * f.tab.s * 6);
    for (int i = 0; i < f.N(); ++i) {
        const double h = f.mesh[i + 1] - f.mesh[i];
        for (int j = 0; j < f.tab.s; ++j)
            for (int c = 0; c < 6; ++c)
                coef[(i * f.tab.s + j) * 6 + c] = h * f.tab.b[j] * T[i * f.blk() + 6 * (j + 1) + c] / (2.0 * f.params.L);
    }
    sys.set_arclength(coef, T[f.aidx()], wdot(f, T, Zp));
}

SystemParams with_A(SystemParams p, double A) {
    p.A0 = A;
    p.A1 = 0.0;
    return p;
}

PeriodicOrbit make_orbit(const Frame& f, const Eigen::VectorXd& Z, const NewtonStats& st) {
    PeriodicOrbit o;
    o.params = with_A(f.params, Z[f.aidx()]);
    o.mesh = f.mesh;
    o.tab = f.tab;
    o.z = Z;
    o.sigma = Z[f.aidx() - 1];
    o.mass = orbit_mass(f.mesh, f.tab, Z);
    o.residual_norm = st.residual;
    o.iterations = st.iterations;
    return o;
}

// Corrector from the predictor Zp with arclength normal T; returns stats, Z in place.
NewtonStats correct(const Frame& f, const Eigen::VectorXd& Zref, const Eigen::VectorXd& T, const Eigen::VectorXd& Zp,
                    Eigen::VectorXd& Z, const ContinuationOptions& o) {
    CollocationSystem sys(f.params, f.mesh, f.tab, true);
    sys.set_phase_reference(Zref);
    set_arc(f, sys, T, Zp);
    Z = Zp;
    return newton(sys, Z, o.newton_max, o.tol, o.parallel);
}

Eigen::VectorXd regrid(const Frame& from, const Eigen::VectorXd& Z, const std::vector<double>& mesh) {
    PeriodicOrbit o;
    o.params = with_A(from.params, Z[from.aidx()]);
    o.mesh = from.mesh;
    o.tab = from.tab;
    o.z = Z;
    o.sigma = Z[from.aidx() - 1];
    return remesh(o, mesh).z;
}

BranchResult run(Frame f, Eigen::VectorXd Z, Eigen::VectorXd T, const ContinuationOptions& o, int branch_id,
                 int det0) {
    BranchResult res;
    double ds = o.ds;
    int det_prev = det0;
    Eigen::VectorXd Zprev = Z - ds * T;
    int folds = 0;
    // a determinant flip right next to a fold is the fold itself, so branch
    // points are only reported once the following step shows no fold
    std::optional<BranchEvent> pending;

    auto push_row = [&](int step, const Eigen::VectorXd& z, int det) {
        res.rows.push_back({step, z[f.aidx()], orbit_mass(f.mesh, f.tab, z), det, branch_id});
    };
    {
        BranchEvent ev;
        ev.kind = EventKind::Start;
        ev.A = Z[f.aidx()];
        ev.mass = orbit_mass(f.mesh, f.tab, Z);
        ev.branch_id = branch_id;
        ev.orbit = make_orbit(f, Z, {});
        ev.tangent = T;
        res.events.push_back(ev);
    }
    push_row(0, Z, det0);

    std::string end_note = "max_steps";
    int step = 0;
    while (step < o.max_steps) {
        Eigen::VectorXd Zn;
        NewtonStats st;
        bool ok = false;
        while (ds >= o.ds_min) {
            const Eigen::VectorXd Zp = Z + ds * T;
            try {
                st = correct(f, Z, T, Zp, Zn, o);
                ok = wnorm(f, Zn - Z) <= 2.0 * ds;
            } catch (const NoConvergence&) {
                ok = false;
            }
            if (ok) break;
            ds *= 0.5;
        }
        if (!ok) {
            end_note = "step_underflow";
            break;
        }
        ++step;
        const double dist = wnorm(f, Zn - Z);
        Eigen::VectorXd Tn = (Zn - Z) / dist;
        const int ai = f.aidx();

        const bool fold = Tn[ai] * T[ai] < 0.0;
        if (pending && !fold) res.events.push_back(*pending);
        pending.reset();
        if (fold) {
            // vertex of the parabola A(tau) through the last three points
            const double d1 = wnorm(f, Z - Zprev), d2 = dist;
            const double a0 = Zprev[ai], a1 = Z[ai], a2 = Zn[ai];
            const double t0 = -d1, t2 = d2;
            const double den = t0 * t2 * (t0 - t2);
            double Af = a1;
            if (std::abs(den) > 0) {
                const double qa = (t2 * (a0 - a1) - t0 * (a2 - a1)) / den;
                const double qb = (t0 * t0 * (a2 - a1) - t2 * t2 * (a0 - a1)) / den;
                if (qa != 0.0) Af = a1 - qb * qb / (4.0 * qa);
            }
            BranchEvent ev;
            ev.kind = EventKind::Fold;
            ev.A = Af;
            ev.mass = orbit_mass(f.mesh, f.tab, Z);
            ev.step = step;
            ev.branch_id = branch_id;
            ev.orbit = make_orbit(f, Z, st);
            ev.tangent = T;
            res.events.push_back(ev);
            ++folds;
        } else if (o.detect_branch_points && det_prev != 0 && st.det_sign != 0 && st.det_sign != det_prev) {
            // bisect the step length on the determinant sign
            double lo = 0.0, hi = ds;
            Eigen::VectorXd Zb = Zn;
            NewtonStats sb = st;
            for (int k = 0; k < 12; ++k) {
                const double mid = 0.5 * (lo + hi);
                Eigen::VectorXd Zm;
                NewtonStats sm;
                try {
                    sm = correct(f, Z, T, Z + mid * T, Zm, o);
                } catch (const NoConvergence&) {
                    break;
                }
                if (sm.det_sign == det_prev) {
                    lo = mid;
                } else {
                    hi = mid;
                    Zb = Zm;
                    sb = sm;
                }
            }
            BranchEvent ev;
            ev.kind = EventKind::Pitchfork;
            ev.A = Zb[ai];
            ev.mass = orbit_mass(f.mesh, f.tab, Zb);
            ev.step = step;
            ev.branch_id = branch_id;
            ev.orbit = make_orbit(f, Zb, sb);
            ev.tangent = T;
            pending = ev;
        }
        det_prev = st.det_sign;
        Zprev = Z;
        Z = Zn;
        T = Tn;
        push_row(step, Z, st.det_sign);

        if (st.iterations <= 3)
            ds = std::min(ds * 1.5, o.ds_max);
        else if (st.iterations > 6)
            ds *= 0.7;

        if (Z[ai] < o.A_min || Z[ai] > o.A_max) {
            end_note = "parameter_bound";
            break;
        }
        if (o.stop_after_folds >= 0 && folds >= o.stop_after_folds) {
            end_note = "fold_limit";
            break;
        }
        if (o.remesh_every > 0 && step % o.remesh_every == 0) {
            const PeriodicOrbit cur = make_orbit(f, Z, st);
            const auto mesh = equidistribute(cur.samples(), f.params.L, f.N());
            Eigen::VectorXd Zr = regrid(f, Z, mesh), Zpr = regrid(f, Zprev, mesh);
            Frame g = f;
            g.mesh = mesh;
            // re-converge on the new mesh with the secant through the regridded points
            Eigen::VectorXd Tr = (Zr - Zpr) / wnorm(g, Zr - Zpr);
            Eigen::VectorXd Zc;
            try {
                correct(g, Zr, Tr, Zr, Zc, o);
                f = g;
                Z = Zc;
                Zprev = Zpr;
                T = Tr;
            } catch (const NoConvergence&) {
                // keep the old mesh
            }
        }
    }
    if (pending) res.events.push_back(*pending);
    BranchEvent ev;
    ev.kind = EventKind::End;
    ev.A = Z[f.aidx()];
    ev.mass = orbit_mass(f.mesh, f.tab, Z);
    ev.step = step;
    ev.branch_id = branch_id;
    ev.note = end_note;
    ev.orbit = make_orbit(f, Z, {});
    ev.tangent = T;
    res.events.push_back(ev);
    res.last = ev.orbit;
    return res;
}

}  // namespace

BranchResult continue_branch(const PeriodicOrbit& start, const ContinuationOptions& o, int branch_id) {
    Frame f{start.params, start.mesh, start.tab};
    const int n = f.aidx() + 1;
    Eigen::VectorXd Z(n);
    Z.head(n - 1) = start.z.head(n - 1);
    Z[n - 1] = start.params.A();

    // tangent: [J_z J_A; e_A^T] t = e_last
    CollocationSystem sys(f.params, f.mesh, f.tab, true);
    sys.set_phase_reference(Z);
    sys.set_arclength(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(f.N()) * f.tab.s * 6), 1.0, 0.0);
    Eigen::VectorXd F;
    sys.evaluate(Z, F, o.parallel);
    CollocationLU lu;
    if (!lu.factorize(sys, o.parallel)) throw SingularJacobian("continue_branch: singular start point");
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[sys.arc_row()] = 1.0;
    Eigen::VectorXd T = lu.solve(e);
    T /= wnorm(f, T);
    if (T[f.aidx()] * o.direction < 0) T = -T;

    // determinant sign of the bordered system with the tangent row
    set_arc(f, sys, T, Z);
    sys.evaluate(Z, F, o.parallel);
    const int det0 = lu.factorize(sys, o.parallel) ? lu.det_sign() : 0;
    return run(f, Z, T, o, branch_id, det0);
}

BranchResult switch_branch(const BranchEvent& bp, const ContinuationOptions& o, int branch_id) {
    const PeriodicOrbit& ob = bp.orbit;
    Frame f{with_A(ob.params, ob.z[ob.z.size() - 1]), ob.mesh, ob.tab};
    const Eigen::VectorXd Zb = ob.z;
    const Eigen::VectorXd& T = bp.tangent;
    const int n = static_cast<int>(Zb.size());

    CollocationSystem sys(f.params, f.mesh, f.tab, true);
    sys.set_phase_reference(Zb);
    set_arc(f, sys, T, Zb);
    Eigen::VectorXd F;
    sys.evaluate(Zb, F, o.parallel);
    CollocationLU lu;
    if (!lu.factorize(sys, o.parallel)) throw SingularJacobian("switch_branch: singular bordered system");

    // inverse iteration for the near-null direction
    std::mt19937 rng(12345);
    std::normal_distribution<double> nd;
    Eigen::VectorXd phi(n);
    for (int k = 0; k < n; ++k) phi[k] = nd(rng);
    for (int it = 0; it < 4; ++it) {
        phi = lu.solve(phi);
        phi /= phi.norm();
    }
    phi -= wdot(f, phi, T) * T;
    phi /= wnorm(f, phi);
    if (phi[f.aidx()] * o.direction < 0) phi = -phi;

    const double delta = 1e-3 * std::max(1.0, wnorm(f, Zb));
    const Eigen::VectorXd Zp = Zb + delta * phi;
    Eigen::VectorXd Z;
    const NewtonStats st = correct(f, Zb, phi, Zp, Z, o);
    return run(f, Z, phi, o, branch_id, st.det_sign);
}

}  // namespace rd3
