#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "omdyn/sweep.hpp"

using namespace omdyn;

namespace {

bool identical(const std::vector<SweepRecord>& a, const std::vector<SweepRecord>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].ix != b[i].ix || a[i].iy != b[i].iy) return false;
        if (a[i].x != b[i].x || a[i].y != b[i].y) return false;
        if (a[i].closed_form_count != b[i].closed_form_count) return false;
        if (a[i].newton_count != b[i].newton_count) return false;
        if (a[i].stable1 != b[i].stable1 || a[i].stable2 != b[i].stable2) return false;
        if (a[i].cls != b[i].cls || a[i].lambda_max != b[i].lambda_max) return false;
        if (a[i].attractor_id != b[i].attractor_id) return false;
        if (a[i].hidden != b[i].hidden) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("grid validation") {
    GridSpec g;
    g.x = {SweepParam::Delta, -1, 1, 1};
    CHECK(!g.valid());
    g = GridSpec{};
    g.y.param = g.x.param;
    CHECK(!g.valid());
    g = GridSpec{};
    CHECK(g.valid());
}

TEST_CASE("grid coordinates lie exactly on the declared lattice") {
    GridSpec g;
    g.x = {SweepParam::Delta, -3.0, 3.0, 7};
    g.y = {SweepParam::Jm, 0.0, 0.1, 5};
    g.task = SweepTask::Count;
    g.base.alpha_in = 0.0;
    const auto recs = run_grid_serial(g);
    REQUIRE(recs.size() == 35);
    for (const SweepRecord& r : recs) {
        CHECK(r.x == g.x.at(r.ix));
        CHECK(r.y == g.y.at(r.iy));
    }
}

TEST_CASE("undriven count map is identically one") {
    GridSpec g;
    g.x = {SweepParam::Delta, -2.0, 2.0, 5};
    g.y = {SweepParam::Jm, 0.0, 0.1, 4};
    g.task = SweepTask::Count;
    g.base.alpha_in = 0.0;
    for (const SweepRecord& r : run_grid_serial(g)) {
        CHECK(r.newton_count == 1);
        CHECK(r.closed_form_count == 1);
    }
}

TEST_CASE("driven count map has a two-candidate region at moderate drive only") {
    GridSpec g;
    g.x = {SweepParam::Delta, -3.0, 3.0, 25};
    g.y = {SweepParam::Jm, 0.0, 0.1, 9};
    g.task = SweepTask::Count;
    g.base.alpha_in = 1e3;
    const double f1 = two_state_area_fraction(run_grid_serial(g));
    CHECK(f1 > 0.0);
    g.base.alpha_in = 1.2e3;
    const double f2 = two_state_area_fraction(run_grid_serial(g));
    CHECK(f2 == 0.0);
}

TEST_CASE("two-state area shrinks monotonically with drive") {
    GridSpec g;
    g.x = {SweepParam::Delta, -3.0, 3.0, 31};
    g.y = {SweepParam::Jm, 0.0, 0.1, 11};
    g.task = SweepTask::Count;
    g.base.alpha_in = 0.9e3;
    const double f09 = two_state_area_fraction(run_grid_serial(g));
    g.base.alpha_in = 1.0e3;
    const double f10 = two_state_area_fraction(run_grid_serial(g));
    g.base.alpha_in = 1.1e3;
    const double f11 = two_state_area_fraction(run_grid_serial(g));
    CHECK(f09 >= f10);
    CHECK(f10 >= f11);
    CHECK(f09 > 0.0);
}

TEST_CASE("undriven stability map is stable everywhere") {
    GridSpec g;
    g.x = {SweepParam::Delta, -2.0, 2.0, 5};
    g.y = {SweepParam::Jm, 0.0, 0.08, 3};
    g.task = SweepTask::Stability;
    g.base.alpha_in = 0.0;
    g.base.convention = Convention::Rederived;
    for (const SweepRecord& r : run_grid_serial(g)) {
        CHECK(r.newton_count == 1);
        CHECK(r.stable1 == 1);
        CHECK(r.stable2 == -1);
    }
}

TEST_CASE("undriven attractor map is all fixed points") {
    GridSpec g;
    g.x = {SweepParam::Delta, -1.0, 1.0, 3};
    g.y = {SweepParam::Jm, 0.0, 0.05, 2};
    g.task = SweepTask::Attractor;
    g.base.alpha_in = 0.0;
    g.base.convention = Convention::Rederived;
    g.integ.t_total = 200.0;
    g.integ.t_transient = 100.0;
    g.ic = StateVector{{0.5, 0, 0.2, 0, 0.1, 0}};
    for (const SweepRecord& r : run_grid_serial(g)) {
        CHECK(r.has_class);
        CHECK(r.cls == AttractorClass::FixedPointAttractor);
        CHECK(!r.hidden);
    }
}

TEST_CASE("chaotic cells appear in the high-drive band and are hidden") {
    GridSpec g;
    g.x = {SweepParam::Delta, -1.8, -0.6, 4};
    g.y = {SweepParam::Jm, 0.02, 0.03, 2};
    g.task = SweepTask::Attractor;
    g.base.alpha_in = 1e4;
    g.base.convention = Convention::Rederived;
    g.base.theta = M_PI / 2;
    g.integ.t_total = 1000.0;
    g.integ.t_transient = 500.0;
    int chaotic = 0, hidden = 0;
    for (const SweepRecord& r : run_grid_serial(g)) {
        if (r.cls == AttractorClass::Chaotic) {
            ++chaotic;
            if (r.hidden) ++hidden;
        }
    }
    CHECK(chaotic >= 2);
    CHECK(hidden == chaotic);  // all fixed points there are linearly stable
}

TEST_CASE("parallel engine reproduces the serial reference bitwise") {
    SUBCASE("count task") {
        GridSpec g;
        g.x = {SweepParam::Delta, -3.0, 3.0, 13};
        g.y = {SweepParam::Jm, 0.0, 0.1, 7};
        g.task = SweepTask::Count;
        g.base.alpha_in = 1e3;
        const auto serial = run_grid_serial(g);
        for (int workers : {2, 4, 0}) CHECK(identical(serial, run_grid(g, workers)));
    }
    SUBCASE("attractor task") {
        GridSpec g;
        g.x = {SweepParam::Delta, -1.6, -0.8, 3};
        g.y = {SweepParam::Jm, 0.015, 0.025, 2};
        g.task = SweepTask::Attractor;
        g.base.alpha_in = 1e4;
        g.base.convention = Convention::Rederived;
        g.base.theta = M_PI / 2;
        g.integ.t_total = 300.0;
        g.integ.t_transient = 150.0;
        const auto serial = run_grid_serial(g);
        for (int workers : {2, 4}) CHECK(identical(serial, run_grid(g, workers)));
    }
    SUBCASE("basin task identity assignment is worker-independent") {
        GridSpec g;
        g.task = SweepTask::Basin;
        g.base.alpha_in = 1e3;
        g.base.convention = Convention::Rederived;
        g.base.delta = -1.0;
        g.base.jm = 0.02;
        g.basin_var_x = 0;
        g.basin_var_y = 2;
        g.x = {SweepParam::Delta, -2.0, 0.0, 4};  // axis params unused for basins
        g.y = {SweepParam::Jm, -2.0, 0.0, 3};
        g.integ.t_total = 200.0;
        g.integ.t_transient = 100.0;
        const auto serial = run_grid_serial(g);
        for (int workers : {2, 4}) CHECK(identical(serial, run_grid(g, workers)));
    }
}

TEST_CASE("undriven basin map is a single basin") {
    GridSpec g;
    g.task = SweepTask::Basin;
    g.base.alpha_in = 0.0;
    g.base.convention = Convention::Rederived;
    g.basin_var_x = 0;
    g.basin_var_y = 2;
    g.x = {SweepParam::Delta, -1.0, 1.0, 4};
    g.y = {SweepParam::Jm, -1.0, 1.0, 4};
    g.integ.t_total = 200.0;
    g.integ.t_transient = 100.0;
    const auto recs = run_grid_serial(g);
    for (const SweepRecord& r : recs) {
        CHECK(r.cls == AttractorClass::FixedPointAttractor);
        CHECK(r.attractor_id == 0);
    }
}
