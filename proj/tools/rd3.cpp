#include "rd3/asymptotic1.hpp"
#include "rd3/asymptotic2.hpp"
#include "rd3/asymptotic3.hpp"
#include "rd3/bvp.hpp"
#include "rd3/continuation.hpp"
#include "rd3/errors.hpp"
#include "rd3/io.hpp"
#include "rd3/kernels.hpp"
#include "rd3/melnikov.hpp"
#include "rd3/model.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iostream>

using namespace rd3;
using nlohmann::json;

namespace {

struct Run {
    std::string name;
    io::Config cfg;
    std::string out;
    json manifest;

    std::string path(const std::string& f) const { return out + "/" + f; }
    void emit(const std::string& f, const io::Table& t) {
        io::write_csv(path(f), t);
        manifest["files"].push_back(f);
    }
    void emit(const std::string& f, const json& j) {
        io::write_json(path(f), j);
        manifest["files"].push_back(f);
    }
};

std::string timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

json complex_json(std::complex<double> z) { return {z.real(), z.imag()}; }

void cmd_equilibria(Run& run) {
    SystemParams p = io::params_from(run.cfg);
    p.validate();
    json eqs = json::array();
    for (const auto& e : equilibria(p)) {
        json ev = json::array();
        for (const auto& l : e.lin.eigenvalues) ev.push_back(complex_json(l));
        eqs.push_back({{"ue", e.ue},
                       {"multiplicity", e.multiplicity},
                       {"fast", to_string(e.lin.fast)},
                       {"slow", {to_string(e.lin.slow[0]), to_string(e.lin.slow[1])}},
                       {"degenerate", e.lin.degenerate},
                       {"eigenvalues", ev}});
        std::cout << "ue=" << io::fmt(e.ue) << " fast=" << to_string(e.lin.fast) << '\n';
    }
    run.emit("equilibria.json", json{{"params", io::to_json(p)}, {"equilibria", eqs}});
}

void cmd_turing(Run& run) {
    SystemParams p = io::params_from(run.cfg);
    p.validate();
    const int branch = io::get_int(run.cfg, "branch", 1);
    const double lo = io::get(run.cfg, "A_lo", 0.3), hi = io::get(run.cfg, "A_hi", 0.95);
    const double Ah = detect_hamiltonian_hopf(p, lo, hi, branch, io::get(run.cfg, "tol", 1e-10));
    const double At = turing_curve(p.eps, p.B1, p.C1, branch);
    std::cout << "hamiltonian_hopf A=" << io::fmt(Ah) << " turing_curve A=" << io::fmt(At) << '\n';
    run.emit("turing.json", json{{"params", io::to_json(p)}, {"branch", branch}, {"A_onset", Ah}, {"A_curve", At}});
}

void cmd_melnikov_map(Run& run) {
    const double C1 = io::get(run.cfg, "C1", -1.0), D = io::get(run.cfg, "D", 3.0), L = io::get(run.cfg, "L", 5.0);
    const int n = io::get_int(run.cfg, "grid", 200);
    const double box = io::get(run.cfg, "box", 10.0);
    if (n < 2 || !(box > 0)) throw DomainError("melnikov-map: grid >= 2 and box > 0 required");
    std::vector<double> ax(n);
    for (int i = 0; i < n; ++i) ax[i] = -box + 2.0 * box * (i + 0.5) / n;
    const MelnikovGrid grid(D, L, io::get_int(run.cfg, "cells", 4096));
    const BoundarySet bounds(C1, D, L, box);
    const auto cells = kernels::region_map_omp(grid, bounds, ax, ax, C1);
    run.emit("region.csv", io::region_table(cells));
    std::array<int, 4> hist{};
    for (const auto& c : cells) hist[std::clamp(c.count, 0, 3)]++;
    std::cout << "counts 0:" << hist[0] << " 1:" << hist[1] << " 2:" << hist[2] << " 3:" << hist[3] << '\n';
    run.manifest["melnikov"] = {{"C1", C1}, {"D", D}, {"L", L}, {"grid", n}, {"box", box},
                                {"dtilde", dtilde(D, L)}, {"histogram", hist}};
}

// Seed profile for regime 1, 2 or 3; also reports the asymptotic data.
Profile make_seed(int thm, const SystemParams& p, const io::Config& cfg, json& report) {
    switch (thm) {
        case 1: {
            const int sign = io::get_int(cfg, "sign", 1);
            auto sol = std::make_shared<OnePulseSolution>(build_one_pulse(p, sign, p.L));
            report = {{"theorem", 1}, {"sign", sign}, {"plateau", sol->plateau}, {"J1", sol->fast.J1()},
                      {"u_ext", sol->fast.extremal()}, {"warnings", sol->warnings}};
            return [sol](double x) { return sol->state(x); };
        }
        case 2: {
            auto sol = std::make_shared<TwoPulseSmallSolution>(
                build_two_pulse_small(p.A1, p.B1, p.C1, p.D, p.L, p.eps, io::get_int(cfg, "root", 0)));
            report = {{"theorem", 2},
                      {"x_star", sol->x_star},
                      {"x_2star", sol->x_2star},
                      {"stability", to_string(sol->stability)},
                      {"jump_2star", {{"v", sol->at_2star.v}, {"q", sol->at_2star.q}, {"w", sol->at_2star.w},
                                      {"r", sol->at_2star.r}}},
                      {"mass", sol->mass()}};
            return [sol](double x) { return sol->state(x); };
        }
        case 3: {
            auto sol = std::make_shared<TwoPulseLargeSolution>(build_two_pulse_large(p.A0, p.D, p.L, p.eps));
            report = {{"theorem", 3},          {"q_star", sol->q_star()},   {"E_star", sol->E_star()},
                      {"turning", sol->turning()}, {"case", to_string(sol->a0case())},
                      {"L_max_margin", sol->a0case() == A0Case::Alarge ? l_max(p.A0) - p.L : -1.0}};
            return [sol](double x) { return sol->state(x); };
        }
        default: throw DomainError("theorem must be 1, 2 or 3");
    }
}

// Parameters for a theorem from the config (theorem 2 reads A1, B1, C1 as order-eps couplings).
SystemParams theorem_params(int thm, const io::Config& cfg) {
    SystemParams p = io::params_from(cfg);
    if (thm == 1 || thm == 3) {
        p.B0 = 0;
        p.C0 = 0;
        p.A1 = 0;
    }
    if (thm == 2) p.A0 = p.B0 = p.C0 = 0;
    p.validate();
    return p;
}

void cmd_build(Run& run, int thm) {
    const SystemParams p = theorem_params(thm, run.cfg);
    json report;
    const Profile seed = make_seed(thm, p, run.cfg, report);
    run.emit("profile.csv", io::profile_table(seed, p.L, io::get_int(run.cfg, "samples", 2000)));
    report["params"] = io::to_json(p);
    run.emit("report.json", report);
    run.manifest["report"] = report;
}

SolverOptions solver_options(const io::Config& cfg) {
    SolverOptions o;
    o.intervals = io::get_int(cfg, "intervals", o.intervals);
    o.stages = io::get_int(cfg, "stages", o.stages);
    o.max_iter = io::get_int(cfg, "max_iter", o.max_iter);
    o.tol = io::get(cfg, "tol", o.tol);
    o.remesh_passes = io::get_int(cfg, "remesh_passes", o.remesh_passes);
    return o;
}

PeriodicOrbit solve_from_seed(Run& run, int thm) {
    const SystemParams p = theorem_params(thm, run.cfg);
    json report;
    const Profile seed = make_seed(thm, p, run.cfg, report);
    const PeriodicOrbit orb = newton_solve(seed, p, solver_options(run.cfg));
    report["params"] = io::to_json(p);
    run.manifest["seed"] = report;
    run.manifest["solve"] = {{"iterations", orb.iterations}, {"residual", orb.residual_norm}, {"sigma", orb.sigma},
                             {"mass", orb.mass}, {"H_drift", orb.hamiltonian_drift()}};
    return orb;
}

void cmd_solve(Run& run) {
    const PeriodicOrbit orb = solve_from_seed(run, io::get_int(run.cfg, "seed", 1));
    run.emit("orbit.csv", io::orbit_table(orb));
    std::cout << "converged: iterations=" << orb.iterations << " mass=" << io::fmt(orb.mass) << '\n';
}

json event_json(const BranchEvent& e) {
    return {{"kind", to_string(e.kind)}, {"A", e.A},       {"mass", e.mass},
            {"step", e.step},            {"branch", e.branch_id}, {"note", e.note}};
}

void cmd_continue(Run& run) {
    const PeriodicOrbit start = solve_from_seed(run, io::get_int(run.cfg, "seed", 3));
    ContinuationOptions o;
    o.ds = io::get(run.cfg, "ds", o.ds);
    o.ds_max = io::get(run.cfg, "ds_max", o.ds_max);
    o.ds_min = io::get(run.cfg, "ds_min", o.ds_min);
    o.max_steps = io::get_int(run.cfg, "max_steps", o.max_steps);
    o.A_min = io::get(run.cfg, "A_min", o.A_min);
    o.A_max = io::get(run.cfg, "A_max", o.A_max);
    o.direction = io::get_int(run.cfg, "direction", o.direction);
    o.stop_after_folds = io::get_int(run.cfg, "stop_after_folds", o.stop_after_folds);
    o.remesh_every = io::get_int(run.cfg, "remesh_every", o.remesh_every);
    o.detect_branch_points = io::get_int(run.cfg, "branch_points", 1) != 0;
    const int switches = io::get_int(run.cfg, "switch", 0);

    std::vector<DiagramRow> rows;
    json events = json::array();
    auto absorb = [&](const BranchResult& r) {
        rows.insert(rows.end(), r.rows.begin(), r.rows.end());
        for (const auto& e : r.events) {
            events.push_back(event_json(e));
            std::cout << to_string(e.kind) << " A=" << io::fmt(e.A) << " branch=" << e.branch_id << '\n';
        }
    };
    const BranchResult main = continue_branch(start, o, 0);
    absorb(main);
    int id = 1;
    for (const auto& e : main.events) {
        if (e.kind != EventKind::Pitchfork || id > switches) continue;
        try {
            absorb(switch_branch(e, o, id));
        } catch (const NoConvergence& ex) {
            events.push_back({{"kind", "switch_failed"}, {"A", e.A}, {"branch", id}, {"note", ex.what()}});
        }
        ++id;
    }
    run.emit("diagram.csv", io::diagram_table(rows));
    run.emit("events.json", json{{"events", events}});
    run.emit("orbit_last.csv", io::orbit_table(main.last));
    run.manifest["events"] = events;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rd3: stationary periodic patterns of a three-component reaction-diffusion system"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path, out_dir = "rd3_out";
    std::vector<std::string> sets;
    app.add_option("-c,--config", config_path, "key=value configuration file");
    app.add_option("-s,--set", sets, "override key=value (repeatable)");
    app.add_option("-o,--out", out_dir, "output directory (RD3_OUT takes precedence)");

    int thm = 1;
    app.add_subcommand("equilibria", "equilibria and their linearisation");
    app.add_subcommand("turing", "Hamiltonian-Hopf onset versus the Turing curve");
    app.add_subcommand("melnikov-map", "root-count region map of the Melnikov function");
    auto* build = app.add_subcommand("build", "asymptotic profile: 1 one-pulse, 2 two-front with small A, 3 two-front with order-one A");
    build->add_option("--thm", thm, "theorem")->required()->check(CLI::Range(1, 3));
    app.add_subcommand("solve", "collocation solve from an asymptotic seed");
    app.add_subcommand("continue", "pseudo-arclength continuation in A");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        Run run;
        run.name = app.get_subcommands().front()->get_name();
        if (!config_path.empty()) run.cfg = io::read_config(config_path);
        io::apply_overrides(run.cfg, sets);
        if (const char* env = std::getenv("RD3_OUT"); env && *env) out_dir = env;
        run.out = out_dir;
        io::ensure_dir(run.out);
        run.manifest = {{"command", run.name}, {"config", run.cfg}, {"files", json::array()}};

        if (run.name == "equilibria") cmd_equilibria(run);
        else if (run.name == "turing") cmd_turing(run);
        else if (run.name == "melnikov-map") cmd_melnikov_map(run);
        else if (run.name == "build") {
            run.manifest["theorem"] = thm;
            cmd_build(run, thm);
        } else if (run.name == "solve") cmd_solve(run);
        else cmd_continue(run);

        run.manifest["timestamp"] = timestamp();
        io::write_json(run.path("manifest.json"), run.manifest);
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
