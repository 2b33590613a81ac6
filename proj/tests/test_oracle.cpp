#include <doctest.h>

#include <cmath>
#include <numbers>

#include "equipart/errors.hpp"
#include "equipart/generate.hpp"
#include "equipart/oracle.hpp"
#include "equipart/solver.hpp"

using namespace equipart;

namespace {

ScanGrid small_grid(double extent, int center_steps, int angle_steps, int offset_steps) {
    ScanGrid g;
    g.center_x_min = g.center_y_min = -extent;
    g.center_x_max = g.center_y_max = extent;
    g.center_steps = center_steps;
    g.angle_steps = angle_steps;
    g.offset_min = -extent;
    g.offset_max = extent;
    g.offset_steps = offset_steps;
    return g;
}

// Defect resolution of a scan, estimated from the defect variation between
// the minimizing cell and its neighbors along each grid axis.
double fan_grid_resolution(const MassDistribution& mu, int q, const FanScanResult& res,
                           const ScanGrid& g) {
    double dx = (g.center_x_max - g.center_x_min) / (g.center_steps - 1);
    double dy = (g.center_y_max - g.center_y_min) / (g.center_steps - 1);
    double da = 2.0 * std::numbers::pi / q / g.angle_steps;
    std::vector<MassDistribution> ms = {mu};
    double worst = 0.0;
    const double offsets[4][3] = {
        {dx, 0, 0}, {-dx, 0, 0}, {0, dy, 0}, {0, -dy, 0}};
    for (const auto& o : offsets) {
        std::vector<ComplexRegularQFan> fan = {
            planar_fan(res.center_x + o[0], res.center_y + o[1], res.angle + o[2], q)};
        worst = std::max(worst, std::abs(equipartition_defect(ms, fan) - res.min_defect));
    }
    for (double s : {1.0, -1.0}) {
        std::vector<ComplexRegularQFan> fan = {
            planar_fan(res.center_x, res.center_y, res.angle + s * da, q)};
        worst = std::max(worst, std::abs(equipartition_defect(ms, fan) - res.min_defect));
    }
    return worst;
}

}  // namespace

TEST_CASE("planar_fan_scan: symmetric cloud has a zero-defect fan at the center") {
    MassDistribution mu = orbit_symmetric_cloud(2, 3, 60, 4, 0.0);
    ScanGrid g = small_grid(1.0, 11, 8, 4);  // odd steps put a node at the origin
    FanScanResult res = planar_fan_scan(mu, 3, g);
    CHECK(res.min_defect <= 1e-12);
    CHECK(std::abs(res.center_x) <= 1e-12);
    CHECK(std::abs(res.center_y) <= 1e-12);
}

TEST_CASE("planar_fan_scan: well-separated disks admit no 5-fan equipartition") {
    MassDistribution disks = merge(ball_cloud(2, 100, 900, {-10.0, 0.0}, 1.0, 0.0),
                                   ball_cloud(2, 100, 901, {10.0, 0.0}, 1.0, 0.0));
    ScanGrid g = small_grid(12.0, 21, 20, 4);
    FanScanResult res = planar_fan_scan(disks, 5, g);
    CHECK(res.min_defect >= 0.1);
}

TEST_CASE("planar_fan_scan: deterministic and consistent with equipartition_defect") {
    MassDistribution mu = mixture_cloud(2, 200, 3, 41, 0.0);
    ScanGrid g = small_grid(1.5, 13, 10, 4);
    FanScanResult a = planar_fan_scan(mu, 3, g, true);
    FanScanResult b = planar_fan_scan(mu, 3, g);
    CHECK(a.min_defect == b.min_defect);
    CHECK(a.center_x == b.center_x);
    CHECK(a.angle == b.angle);
    CHECK(a.table.size() == 13u * 13u * 10u);

    std::vector<MassDistribution> ms = {mu};
    std::vector<ComplexRegularQFan> best = {planar_fan(a.center_x, a.center_y, a.angle, 3)};
    CHECK(equipartition_defect(ms, best) == a.min_defect);
}

TEST_CASE("planar_fan_scan: nested refinement never increases the minimum") {
    MassDistribution mu = mixture_cloud(2, 120, 2, 43, 0.05);
    ScanGrid coarse = small_grid(1.2, 9, 9, 4);
    ScanGrid fine = coarse;
    fine.center_steps = 2 * coarse.center_steps - 1;  // node-nested refinement
    fine.angle_steps = 2 * coarse.angle_steps;
    FanScanResult rc = planar_fan_scan(mu, 3, coarse);
    FanScanResult rf = planar_fan_scan(mu, 3, fine);
    CHECK(rf.min_defect <= rc.min_defect + 1e-12);
}

TEST_CASE("planar_line_scan: symmetric pair is bisected through the center") {
    MassDistribution a = orbit_symmetric_cloud(2, 2, 50, 7, 0.0);
    MassDistribution b = orbit_symmetric_cloud(2, 2, 40, 8, 0.0);
    ScanGrid g = small_grid(1.0, 4, 6, 11);
    LineScanResult res = planar_line_scan(a, b, g);
    CHECK(res.min_defect <= 1e-12);
    CHECK(std::abs(res.offset) <= 1e-12);
}

TEST_CASE("planar_line_scan: the known splitting line of two column pairs") {
    MassDistribution a = MassDistribution::make(2, {0, 0, 0, 2}, {}, 0.0);
    MassDistribution b = MassDistribution::make(2, {1, 0, 1, 2}, {}, 0.0);
    ScanGrid g;
    g.angle_steps = 2;  // includes the horizontal normal direction
    g.offset_min = -2.0;
    g.offset_max = 2.0;
    g.offset_steps = 9;  // includes offset 1
    LineScanResult res = planar_line_scan(a, b, g);
    CHECK(res.min_defect == 0.0);
}

TEST_CASE("oracle/solver agreement on seeded planar instances") {
    // line scans against the orthogonal-bisection driver
    for (int inst = 0; inst < 12; ++inst) {
        std::vector<MassDistribution> ms;
        ms.push_back(mixture_cloud(2, 100, 2, 500 + 2 * inst, 0.06));
        ms.push_back(mixture_cloud(2, 110, 3, 501 + 2 * inst, 0.06));
        ScanGrid g = small_grid(2.5, 4, 60, 60);
        LineScanResult scan = planar_line_scan(ms[0], ms[1], g);

        SearchConfig cfg;
        cfg.tol = 1e-4;
        cfg.restarts = 10;
        cfg.max_iters = 500;
        cfg.seed = 900 + static_cast<std::uint64_t>(inst);
        SolveReport rep = bisect_orthogonal(ms, 1, cfg);
        REQUIRE(rep.converged);

        double dtheta = std::numbers::pi / g.angle_steps;
        double doffset = (g.offset_max - g.offset_min) / (g.offset_steps - 1);
        // the scan minimum cannot beat the true optimum by more than its
        // resolution; the driver solves to tol
        double budget = 2.0 * (dtheta + doffset) + cfg.tol;
        CHECK(scan.min_defect <= rep.defect + budget);
        CHECK(rep.defect <= scan.min_defect + budget);
    }

    // fan scans against the q=3 fan driver
    for (int inst = 0; inst < 8; ++inst) {
        std::vector<MassDistribution> ms;
        ms.push_back(mixture_cloud(2, 110, 3, 700 + inst, 0.06));
        ScanGrid g = small_grid(1.8, 21, 18, 4);
        FanScanResult scan = planar_fan_scan(ms[0], 3, g);

        SearchConfig cfg;
        cfg.tol = 1e-4;
        cfg.restarts = 10;
        cfg.max_iters = 600;
        cfg.seed = 1700 + static_cast<std::uint64_t>(inst);
        SolveReport rep = equipartition_fans(ms, 3, FanMode::complex_orthogonal, 1, cfg);
        REQUIRE(rep.converged);

        double res = fan_grid_resolution(ms[0], 3, scan, g);
        CHECK(rep.defect <= scan.min_defect + 1e-9);
        CHECK(scan.min_defect <= rep.defect + 2.0 * res + cfg.tol);
    }
}

TEST_CASE("upper_bound_instance: sampled balls with affinely independent centers") {
    std::vector<MassDistribution> two = upper_bound_instance(2, 2, 2, 6.0);
    REQUIRE(two.size() == 2);
    for (const MassDistribution& mu : two) CHECK(mu.size() == 500);
    // center distance equals the separation
    Vec c0(2, 0.0), c1(2, 0.0);
    for (std::size_t p = 0; p < two[0].size(); ++p)
        for (int c = 0; c < 2; ++c) {
            c0[static_cast<std::size_t>(c)] += two[0].point(p)[static_cast<std::size_t>(c)] / 500.0;
            c1[static_cast<std::size_t>(c)] += two[1].point(p)[static_cast<std::size_t>(c)] / 500.0;
        }
    double dist = std::hypot(c0[0] - c1[0], c0[1] - c1[1]);
    CHECK(dist == doctest::Approx(6.0).epsilon(0.05));

    std::vector<MassDistribution> three = upper_bound_instance(3, 3, 4, 5.0);
    REQUIRE(three.size() == 3);
    // the centered difference set of the construction has rank m-1 = 2
    // (centers at 0, s*e_1, s*e_2)
    for (std::size_t p = 0; p < three[1].size(); ++p) {
        CHECK(std::abs(three[1].point(p)[0] - 5.0) <= 1.0 + 1e-12);
        CHECK(std::abs(three[2].point(p)[1] - 5.0) <= 1.0 + 1e-12);
    }

    // identical instances for identical arguments
    std::vector<MassDistribution> again = upper_bound_instance(2, 2, 2, 6.0);
    CHECK(again[0].coords == two[0].coords);
}

TEST_CASE("upper_bound_instance: drives the KTooLarge rejection") {
    std::vector<MassDistribution> inst = upper_bound_instance(2, 2, 4, 6.0);
    SearchConfig cfg;
    CHECK_THROWS_WITH_AS(bisect_orthogonal(inst, 4, cfg), doctest::Contains("n-m+1"), KTooLarge);
}

TEST_CASE("upper_bound_instance: validation") {
    CHECK_THROWS_AS(upper_bound_instance(2, 4, 2, 6.0), ValidationError);
    CHECK_THROWS_AS(upper_bound_instance(2, 2, 2, 1.5), ValidationError);
    ScanGrid bad;
    bad.center_steps = 1;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}
