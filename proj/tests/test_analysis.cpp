#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "omdyn/analysis.hpp"
#include "omdyn/steady_state.hpp"

using namespace omdyn;

namespace {

Trajectory synthetic_trajectory(double (*f)(double), double t0, double t1, double dt) {
    Trajectory traj;
    traj.config.dt = dt;
    traj.config.record_stride = 1;
    traj.config.t_total = t1;
    traj.config.t_transient = t0;
    for (double t = 0.0; t <= t1 + 1e-12; t += dt) {
        traj.times.push_back(t);
        StateVector s;
        s.ar() = f(t);
        traj.states.push_back(s);
    }
    return traj;
}

}  // namespace

TEST_CASE("refined peaks of a sine stay within 1e-4 of unity") {
    const Trajectory traj = synthetic_trajectory(
        [](double t) { return std::sin(t); }, 0.0, 100.0, 0.21);
    const PeakSet pk = local_maxima(traj, 0);
    CHECK(pk.values.size() >= 14);
    for (double v : pk.values) CHECK(std::abs(v - 1.0) <= 1e-4);
}

TEST_CASE("constant series has no peaks") {
    const Trajectory traj = synthetic_trajectory(
        [](double) { return 2.5; }, 0.0, 10.0, 0.1);
    CHECK(local_maxima(traj, 0).empty());
}

TEST_CASE("monotone series has no peaks") {
    const Trajectory traj = synthetic_trajectory(
        [](double t) { return t; }, 0.0, 10.0, 0.1);
    CHECK(local_maxima(traj, 0).empty());
}

TEST_CASE("plateau peaks resolve to the midpoint") {
    Trajectory traj;
    traj.config.dt = 1.0;
    traj.config.record_stride = 1;
    traj.config.t_total = 6.0;
    traj.config.t_transient = 0.0;
    const double vals[] = {0.0, 1.0, 1.0, 1.0, 0.0, -1.0, 0.0};
    for (int i = 0; i < 7; ++i) {
        traj.times.push_back(i);
        StateVector s;
        s.ar() = vals[i];
        traj.states.push_back(s);
    }
    const PeakSet pk = local_maxima(traj, 0);
    REQUIRE(pk.values.size() == 1);
    CHECK(pk.values[0] == 1.0);
    CHECK(pk.times[0] == doctest::Approx(2.0));
    CHECK(pk.method == PeakRefine::PlateauMidpoint);
}

TEST_CASE("peaks are restricted to the post-transient span") {
    const Trajectory traj = synthetic_trajectory(
        [](double t) { return std::sin(t); }, 50.0, 100.0, 0.21);
    const PeakSet pk = local_maxima(traj, 0);
    for (double t : pk.times) CHECK(t >= 50.0);
}

TEST_CASE("peak clustering separates a two-level cycle from a band") {
    PeakSet two;
    for (int i = 0; i < 40; ++i) two.values.push_back(i % 2 ? 1.0 : 2.0);
    CHECK(peak_cluster_count(two) == 2);
    PeakSet band;
    for (int i = 0; i < 400; ++i) band.values.push_back(1.0 + i * 1e-4);
    // adjacent gaps are tiny, it reads as one wide cluster
    CHECK(peak_cluster_count(band) == 1);
}

TEST_CASE("lyapunov of the decoupled stable system matches -gamma/2") {
    SystemParams p;
    p.convention = Convention::Rederived;
    p.g1 = p.g2 = 0.0;
    p.jm = 0.0;
    p.alpha_in = 0.0;
    IntegrationConfig c;
    c.t_total = 400.0;
    c.t_transient = 200.0;
    StateVector ic{{1.0, 0.0, 1.0, 0.0, 1.0, 0.0}};
    const LyapunovResult r = lyapunov_max(ic, p, c);
    CHECK(!r.diverged);
    CHECK(r.lambda_max == doctest::Approx(-p.gamma1 / 2).epsilon(0.2));
    CHECK(std::abs(r.lambda_max + p.gamma1 / 2) < 1e-6);
}

TEST_CASE("two-trajectory estimate agrees with the tangent map") {
    SystemParams p;
    p.convention = Convention::Rederived;
    p.delta = -1.6;
    p.jm = 0.02;
    p.alpha_in = 1e4;
    p.theta = M_PI / 2;
    IntegrationConfig c;
    c.t_total = 600.0;
    c.t_transient = 300.0;
    const LyapunovResult tangent = lyapunov_max(StateVector{}, p, c, 1.0,
                                                LyapunovMethod::TangentMap);
    const LyapunovResult pair = lyapunov_max(StateVector{}, p, c, 1.0,
                                             LyapunovMethod::TwoTrajectory);
    CHECK(!tangent.diverged);
    CHECK(!pair.diverged);
    CHECK(std::abs(tangent.lambda_max - pair.lambda_max) < 0.05);
}

TEST_CASE("lyapunov rejects a renormalization interval off the step grid") {
    SystemParams p;
    IntegrationConfig c;
    CHECK_THROWS_AS(lyapunov_max(StateVector{}, p, c, 1.0005e-3), std::invalid_argument);
}

TEST_CASE("classification basics") {
    SUBCASE("undriven damped run is a point attractor") {
        SystemParams p;
        p.convention = Convention::Rederived;
        IntegrationConfig c;
        c.t_total = 300.0;
        c.t_transient = 150.0;
        StateVector ic{{1.0, 0, 0.5, 0, 0.2, 0}};
        const Trajectory traj = integrate(ic, p, c);
        const PeakSet pk = local_maxima(traj, 0);
        const LyapunovResult ly = lyapunov_max(ic, p, c);
        CHECK(classify_attractor(traj, pk, ly) == AttractorClass::FixedPointAttractor);
    }
    SUBCASE("divergent run classifies as diverged") {
        SystemParams p;
        p.convention = Convention::Paper;
        p.delta = -1.6;
        p.alpha_in = 1e4;
        IntegrationConfig c;
        c.t_total = 100.0;
        c.t_transient = 50.0;
        const Trajectory traj = integrate(StateVector{}, p, c);
        LyapunovResult ly;
        ly.diverged = true;
        CHECK(classify_attractor(traj, PeakSet{}, ly) == AttractorClass::Diverged);
    }
    SUBCASE("chaotic point classifies chaotic") {
        SystemParams p;
        p.convention = Convention::Rederived;
        p.theta = M_PI / 2;
        p.delta = -1.6;
        p.jm = 0.02;
        p.alpha_in = 1e4;
        IntegrationConfig c;
        c.t_total = 1000.0;
        c.t_transient = 500.0;
        const Trajectory traj = integrate(StateVector{}, p, c);
        const PeakSet pk = local_maxima(traj, 0);
        const LyapunovResult ly = lyapunov_max(StateVector{}, p, c);
        CHECK(!traj.terminated_early);
        CHECK(ly.lambda_max > 0.02);
        CHECK(classify_attractor(traj, pk, ly) == AttractorClass::Chaotic);
    }
}

TEST_CASE("identical initial conditions give zero attractor distance") {
    SystemParams p;
    p.convention = Convention::Rederived;
    p.delta = -1.0;
    p.alpha_in = 1e3;
    p.jm = 0.02;
    IntegrationConfig c;
    c.t_total = 200.0;
    c.t_transient = 100.0;
    StateVector ic{{1.0, 0, 0, 0, 0, 0}};
    const BistabilityReport r = bistability_probe(p, ic, ic, c);
    CHECK(r.hausdorff_optical == 0.0);
    CHECK(r.hausdorff_mech == 0.0);
    CHECK(r.same_attractor);
    CHECK(r.class_a == r.class_b);
}

TEST_CASE("hausdorff distance on simple clouds") {
    const std::vector<double> ax = {0, 1}, ay = {0, 0};
    const std::vector<double> bx = {0, 1}, by = {1, 1};
    CHECK(hausdorff_distance_2d(ax, ay, bx, by) == doctest::Approx(1.0));
    CHECK(hausdorff_distance_2d(ax, ay, ax, ay) == 0.0);
}

TEST_CASE("hysteresis sweep in a monostable linear regime is direction-free") {
    SystemParams p;
    p.convention = Convention::Rederived;
    p.delta = 2.0;
    p.alpha_in = 300.0;
    IntegrationConfig c;
    c.t_total = 300.0;
    c.t_transient = 150.0;
    const auto up = hysteresis_sweep(p, SweepParam::Jm, 0.01, 0.05, 5,
                                     SweepDirection::Up, c, StateVector{});
    const auto down = hysteresis_sweep(p, SweepParam::Jm, 0.01, 0.05, 5,
                                       SweepDirection::Down, c, StateVector{});
    REQUIRE(up.size() == 5);
    REQUIRE(down.size() == 5);
    for (int i = 0; i < 5; ++i) {
        const HysteresisPoint& u = up[i];
        const HysteresisPoint& d = down[4 - i];
        CHECK(u.value == doctest::Approx(d.value).epsilon(1e-12));
        CHECK(u.cls == d.cls);
    }
}

TEST_CASE("hysteresis sweep validates its range") {
    SystemParams p;
    IntegrationConfig c;
    CHECK_THROWS_AS(hysteresis_sweep(p, SweepParam::Jm, 0.0, 1.0, 1,
                                     SweepDirection::Up, c, StateVector{}),
                    std::invalid_argument);
}
