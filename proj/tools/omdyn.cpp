// Command-line front end: trajectory runs, fixed-point listings, parameter
// maps, bifurcation/hysteresis scans, Lyapunov estimates, basin maps and
// convergence checks, all serialized as CSV.
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "omdyn/config.hpp"
#include "omdyn/csv.hpp"

using namespace omdyn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDivergence = 3;
constexpr int kExitIo = 4;

struct CliState {
    RunConfig cfg;
    std::string config_path;
    std::string out_path = "out.csv";
    bool emit_plot = false;
    int workers = 1;
    std::string convention;
    // option presence tracking so CLI flags override file values
    std::vector<std::pair<std::string, double>> overrides;
};

void apply_overrides(CliState& st) {
    for (const auto& [key, val] : st.overrides) {
        SystemParams& p = st.cfg.params;
        IntegrationConfig& ic = st.cfg.integ;
        if (key == "system.omega1") p.omega1 = val;
        else if (key == "system.omega2") p.omega2 = val;
        else if (key == "system.kappa") p.kappa = val;
        else if (key == "system.delta") p.delta = val;
        else if (key == "system.g1") p.g1 = val;
        else if (key == "system.g2") p.g2 = val;
        else if (key == "system.gamma1") p.gamma1 = val;
        else if (key == "system.gamma2") p.gamma2 = val;
        else if (key == "system.jm") p.jm = val;
        else if (key == "system.theta") p.theta = val;
        else if (key == "system.alpha_in") p.alpha_in = val;
        else if (key == "integration.dt") ic.dt = val;
        else if (key == "integration.t_total") ic.t_total = val;
        else if (key == "integration.t_transient") ic.t_transient = val;
        else if (key == "integration.record_stride") ic.record_stride = static_cast<int>(val);
        else if (key == "integration.blow_up_bound") ic.blow_up_bound = val;
    }
    if (st.convention == "paper") st.cfg.params.convention = Convention::Paper;
    else if (st.convention == "rederived") st.cfg.params.convention = Convention::Rederived;
    else if (!st.convention.empty())
        throw ConfigError(ConfigErrorKind::MalformedNumber, 0,
                          "--convention must be paper|rederived");
    if (!st.cfg.params.valid())
        throw ConfigError(ConfigErrorKind::ConstraintViolation, 0,
                          "parameters violate kappa>0, gamma>0, jm>=0");
    if (!st.cfg.integ.valid())
        throw ConfigError(ConfigErrorKind::ConstraintViolation, 0,
                          "integration config invalid");
    st.cfg.grid.base = st.cfg.params;
    st.cfg.grid.integ = st.cfg.integ;
}

void emit(const CsvTable& table, const CliState& st) {
    write_csv(table, st.out_path);
    if (st.emit_plot) {
        const std::string script = st.out_path + ".gnuplot";
        std::ofstream f(script);
        if (!f) throw std::runtime_error("cannot open for writing: " + script);
        f << plot_script_for(st.out_path, table);
    }
    std::cout << "wrote " << st.out_path << " (" << table.rows.size() << " rows)\n";
}

StateVector parse_ic(const std::vector<double>& ic) {
    StateVector s;
    for (std::size_t i = 0; i < std::min<std::size_t>(6, ic.size()); ++i) s[i] = ic[i];
    return s;
}

void add_common(CLI::App* cmd, CliState& st) {
    cmd->add_option("--config", st.config_path, "INI config file");
    cmd->add_option("--out", st.out_path, "output CSV path");
    cmd->add_flag("--plot-script", st.emit_plot,
                  "also write a best-effort gnuplot script");
    cmd->add_option("--workers", st.workers, "worker threads (1 = serial)");
    cmd->add_option("--convention", st.convention, "paper|rederived");
    static const char* keys[] = {
        "system.omega1", "system.omega2", "system.kappa", "system.delta",
        "system.g1", "system.g2", "system.gamma1", "system.gamma2",
        "system.jm", "system.theta", "system.alpha_in",
        "integration.dt", "integration.t_total", "integration.t_transient",
        "integration.record_stride", "integration.blow_up_bound"};
    for (const char* k : keys) {
        cmd->add_option_function<double>(
            std::string("--") + k,
            [&st, key = std::string(k)](double v) { st.overrides.emplace_back(key, v); },
            k);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semiclassical cavity-optomechanics dynamics toolkit"};
    app.require_subcommand(1);

    CliState st;
    std::vector<double> ic_a, ic_b;
    std::string sweep_param = "jm", direction = "up", task = "count";
    double lo = 0.4, hi = 0.65;
    int n_points = 26;
    double renorm = 1.0;
    std::string lyap_method = "tangent";
    double win_x0 = -3, win_x1 = 3, win_y0 = 0, win_y1 = 0.1;
    int nx = 101, ny = 101;
    int basin_vx = 0, basin_vy = 2;

    auto* sim = app.add_subcommand("simulate", "integrate one trajectory");
    add_common(sim, st);
    sim->add_option("--ic", ic_a, "initial state (6 numbers)")->expected(0, 6);

    auto* fps_cmd = app.add_subcommand("fixed-points", "list equilibria with stability");
    add_common(fps_cmd, st);

    auto* steady = app.add_subcommand("steady-map", "steady-state count map");
    add_common(steady, st);
    auto* stab = app.add_subcommand("stability-map", "per-branch stability map");
    add_common(stab, st);
    auto* attr = app.add_subcommand("attractor-map", "attractor classification map");
    add_common(attr, st);
    attr->add_option("--ic", ic_a, "initial state")->expected(0, 6);
    attr->add_option("--second-ic", ic_b, "second initial state for coexistence")
        ->expected(0, 6);
    for (CLI::App* m : {steady, stab, attr}) {
        m->add_option("--x-min", win_x0, "first axis minimum");
        m->add_option("--x-max", win_x1, "first axis maximum");
        m->add_option("--y-min", win_y0, "second axis minimum");
        m->add_option("--y-max", win_y1, "second axis maximum");
        m->add_option("--nx", nx, "first axis points");
        m->add_option("--ny", ny, "second axis points");
    }

    auto* bif = app.add_subcommand("bifurcation", "hysteresis sweep of local maxima");
    add_common(bif, st);
    bif->add_option("--param", sweep_param, "jm|delta|alpha_in|theta|kappa");
    bif->add_option("--from", lo, "sweep start");
    bif->add_option("--to", hi, "sweep end");
    bif->add_option("--points", n_points, "sweep points");
    bif->add_option("--direction", direction, "up|down|both");
    bif->add_option("--ic", ic_a, "first-point initial state")->expected(0, 6);

    auto* lyap = app.add_subcommand("lyapunov", "maximum Lyapunov exponent");
    add_common(lyap, st);
    lyap->add_option("--ic", ic_a, "initial state")->expected(0, 6);
    lyap->add_option("--renorm", renorm, "renormalization interval");
    lyap->add_option("--method", lyap_method, "tangent|two-trajectory");

    auto* basin = app.add_subcommand("basin", "initial-condition basin map");
    add_common(basin, st);
    basin->add_option("--var-x", basin_vx, "swept state component (0..5)");
    basin->add_option("--var-y", basin_vy, "swept state component (0..5)");
    basin->add_option("--x-min", win_x0, "first IC axis minimum");
    basin->add_option("--x-max", win_x1, "first IC axis maximum");
    basin->add_option("--y-min", win_y0, "second IC axis minimum");
    basin->add_option("--y-max", win_y1, "second IC axis maximum");
    basin->add_option("--nx", nx, "first axis points");
    basin->add_option("--ny", ny, "second axis points");
    basin->add_option("--ic", ic_a, "non-swept components")->expected(0, 6);

    auto* bist = app.add_subcommand("bistability", "paired-initial-condition probe");
    add_common(bist, st);
    bist->add_option("--ic-a", ic_a, "first initial state")->expected(6);
    bist->add_option("--ic-b", ic_b, "second initial state")->expected(6);

    auto* conv = app.add_subcommand("convergence", "step-halving convergence check");
    add_common(conv, st);
    conv->add_option("--ic", ic_a, "initial state")->expected(0, 6);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!st.config_path.empty()) st.cfg = parse_config_file(st.config_path);
        apply_overrides(st);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }

    try {
        const SystemParams& p = st.cfg.params;
        const IntegrationConfig& icfg = st.cfg.integ;

        if (sim->parsed()) {
            const Trajectory traj = integrate(parse_ic(ic_a), p, icfg);
            emit(trajectory_table(traj), st);
            if (traj.terminated_early) {
                std::cerr << "error: trajectory diverged at t=" << traj.times.back() << "\n";
                return kExitDivergence;
            }
        } else if (fps_cmd->parsed()) {
            emit(fixed_points_table(find_fixed_points(p)), st);
        } else if (steady->parsed() || stab->parsed() || attr->parsed() || basin->parsed()) {
            GridSpec g;
            g.base = p;
            g.integ = icfg;
            g.x = {SweepParam::Delta, win_x0, win_x1, nx};
            g.y = {SweepParam::Jm, win_y0, win_y1, ny};
            if (steady->parsed()) g.task = SweepTask::Count;
            if (stab->parsed()) g.task = SweepTask::Stability;
            if (attr->parsed()) {
                g.task = SweepTask::Attractor;
                g.ic = parse_ic(ic_a);
                if (!ic_b.empty()) g.second_ic = parse_ic(ic_b);
            }
            if (basin->parsed()) {
                g.task = SweepTask::Basin;
                g.basin_var_x = basin_vx;
                g.basin_var_y = basin_vy;
                g.ic = parse_ic(ic_a);
            }
            emit(map_table(g, run_grid(g, st.workers)), st);
        } else if (bif->parsed()) {
            SweepParam sp = SweepParam::Jm;
            if (sweep_param == "delta") sp = SweepParam::Delta;
            else if (sweep_param == "alpha_in") sp = SweepParam::AlphaIn;
            else if (sweep_param == "theta") sp = SweepParam::Theta;
            else if (sweep_param == "kappa") sp = SweepParam::Kappa;
            else if (sweep_param != "jm") {
                std::cerr << "error: config line 0: malformed number: unknown sweep parameter\n";
                return kExitConfig;
            }
            CsvTable t;
            if (direction == "up" || direction == "both") {
                auto pts = hysteresis_sweep(p, sp, lo, hi, n_points, SweepDirection::Up,
                                            icfg, parse_ic(ic_a));
                t = peaks_table(pts, SweepDirection::Up, 0);
            }
            if (direction == "down" || direction == "both") {
                auto pts = hysteresis_sweep(p, sp, lo, hi, n_points, SweepDirection::Down,
                                            icfg, parse_ic(ic_a));
                CsvTable t2 = peaks_table(pts, SweepDirection::Down, 0);
                if (t.header.empty()) t = t2;
                else t.rows.insert(t.rows.end(), t2.rows.begin(), t2.rows.end());
            }
            if (direction != "up" && direction != "down" && direction != "both") {
                std::cerr << "error: config line 0: malformed number: direction must be up|down|both\n";
                return kExitConfig;
            }
            emit(t, st);
        } else if (lyap->parsed()) {
            const LyapunovMethod m = lyap_method == "two-trajectory"
                                         ? LyapunovMethod::TwoTrajectory
                                         : LyapunovMethod::TangentMap;
            const LyapunovResult r = lyapunov_max(parse_ic(ic_a), p, icfg, renorm, m);
            emit(lyapunov_table(r), st);
            if (r.diverged) {
                std::cerr << "error: base trajectory diverged\n";
                return kExitDivergence;
            }
        } else if (bist->parsed()) {
            const BistabilityReport r =
                bistability_probe(p, parse_ic(ic_a), parse_ic(ic_b), icfg);
            emit(bistability_table(r), st);
            if (r.diverged_a || r.diverged_b) {
                std::cerr << "error: a probe trajectory diverged\n";
                return kExitDivergence;
            }
        } else if (conv->parsed()) {
            const ConvergenceReport r = convergence_check(parse_ic(ic_a), p, icfg);
            emit(convergence_table(r), st);
            if (r.diverged_full || r.diverged_half) {
                std::cerr << "error: a convergence run diverged\n";
                return kExitDivergence;
            }
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
