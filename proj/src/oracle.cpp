#include "equipart/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "equipart/errors.hpp"
#include "equipart/generate.hpp"

namespace equipart {

void ScanGrid::validate() const {
    if (center_steps < 2 || angle_steps < 2 || offset_steps < 2)
        throw ValidationError("ScanGrid: all step counts must be >= 2");
    if (!(center_x_max > center_x_min) || !(center_y_max > center_y_min))
        throw ValidationError("ScanGrid: center box must be nonempty");
    if (!(offset_max > offset_min)) throw ValidationError("ScanGrid: offset range must be nonempty");
}

ComplexRegularQFan planar_fan(double cx, double cy, double angle, int q) {
    Complex a(std::cos(angle), std::sin(angle));
    Complex center(cx, cy);
    Complex b = std::conj(center) * a;
    return ComplexRegularQFan(q, 1, {a.real(), a.imag()}, b);
}

FanScanResult planar_fan_scan(const MassDistribution& mu, int q, const ScanGrid& grid,
                              bool keep_table) {
    if (mu.dim != 2) throw DimensionError("planar_fan_scan: the measure must be planar");
    grid.validate();
    FanScanResult res;
    res.min_defect = std::numeric_limits<double>::infinity();
    const std::vector<MassDistribution> ms = {mu};
    const double arc_begin = (grid.angle_max > grid.angle_min) ? grid.angle_min : 0.0;
    const double arc_len = (grid.angle_max > grid.angle_min) ? (grid.angle_max - grid.angle_min)
                                                             : 2.0 * std::numbers::pi / q;
    for (int ix = 0; ix < grid.center_steps; ++ix) {
        double cx = grid.center_x_min +
                    ix * (grid.center_x_max - grid.center_x_min) / (grid.center_steps - 1);
        for (int iy = 0; iy < grid.center_steps; ++iy) {
            double cy = grid.center_y_min +
                        iy * (grid.center_y_max - grid.center_y_min) / (grid.center_steps - 1);
            for (int ia = 0; ia < grid.angle_steps; ++ia) {
                double ang = arc_begin + ia * arc_len / grid.angle_steps;
                std::vector<ComplexRegularQFan> fan = {planar_fan(cx, cy, ang, q)};
                double d = equipartition_defect(ms, fan);
                if (keep_table) res.table.push_back({cx, cy, ang, d});
                if (d < res.min_defect) {
                    res.min_defect = d;
                    res.center_x = cx;
                    res.center_y = cy;
                    res.angle = ang;
                }
            }
        }
    }
    return res;
}

LineScanResult planar_line_scan(const MassDistribution& mu1, const MassDistribution& mu2,
                                const ScanGrid& grid, bool keep_table) {
    if (mu1.dim != 2 || mu2.dim != 2)
        throw DimensionError("planar_line_scan: both measures must be planar");
    grid.validate();
    LineScanResult res;
    res.min_defect = std::numeric_limits<double>::infinity();
    const double arc_begin = (grid.angle_max > grid.angle_min) ? grid.angle_min : 0.0;
    const double arc_len =
        (grid.angle_max > grid.angle_min) ? (grid.angle_max - grid.angle_min) : std::numbers::pi;
    for (int ia = 0; ia < grid.angle_steps; ++ia) {
        double ang = arc_begin + ia * arc_len / grid.angle_steps;
        Vec normal = {std::cos(ang), std::sin(ang)};
        for (int io = 0; io < grid.offset_steps; ++io) {
            double b = grid.offset_min +
                       io * (grid.offset_max - grid.offset_min) / (grid.offset_steps - 1);
            Hyperplane h(normal, b);
            double d = std::max(
                std::abs(halfspace_measure(mu1, h, Side::plus) / mu1.total - 0.5),
                std::abs(halfspace_measure(mu2, h, Side::plus) / mu2.total - 0.5));
            if (keep_table) res.table.push_back({ang, b, d});
            if (d < res.min_defect) {
                res.min_defect = d;
                res.angle = ang;
                res.offset = b;
            }
        }
    }
    return res;
}

std::vector<MassDistribution> upper_bound_instance(int q, int m, int n, double separation) {
    if (q < 2) throw ValidationError("upper_bound_instance: q must be >= 2");
    if (m < 1 || m > n + 1)
        throw ValidationError("upper_bound_instance: affinely independent centers need m <= n+1");
    if (!(separation > 2.0))
        throw ValidationError("upper_bound_instance: unit balls need separation > 2");
    std::vector<MassDistribution> out;
    for (int i = 0; i < m; ++i) {
        Vec center(static_cast<std::size_t>(n), 0.0);
        if (i > 0) center[static_cast<std::size_t>(i - 1)] = separation;
        out.push_back(ball_cloud(n, 500, 0xB4110000ULL + static_cast<std::uint64_t>(i), center,
                                 1.0, 0.0));
    }
    return out;
}

}  // namespace equipart
