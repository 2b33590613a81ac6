#pragma once

#include <array>
#include <vector>

#include "equipart/measures.hpp"

namespace equipart {

// Exhaustive parameter grid for the planar brute-force scans. The angle
// window defaults to one full sector arc (fan scan) or a half turn (lines);
// narrowing it supports zoomed rescans around a coarse minimum.
struct ScanGrid {
    double center_x_min = -2.0, center_x_max = 2.0;
    double center_y_min = -2.0, center_y_max = 2.0;
    int center_steps = 30;
    int angle_steps = 30;
    double angle_min = 0.0, angle_max = -1.0;  // angle_max < angle_min: full range
    double offset_min = -2.0, offset_max = 2.0;
    int offset_steps = 30;

    void validate() const;
};

// Planar regular q-fan with the given center and boundary rotation.
ComplexRegularQFan planar_fan(double cx, double cy, double angle, int q);

struct FanScanResult {
    double center_x = 0.0, center_y = 0.0, angle = 0.0;
    double min_defect = 0.0;
    std::vector<std::array<double, 4>> table;  // cx, cy, angle, defect
};

// Deterministic exhaustive scan of the 3-parameter planar fan family
// (center and rotation); the table is kept when keep_table is set.
FanScanResult planar_fan_scan(const MassDistribution& mu, int q, const ScanGrid& grid,
                              bool keep_table = false);

struct LineScanResult {
    double angle = 0.0, offset = 0.0;
    double min_defect = 0.0;
    std::vector<std::array<double, 3>> table;  // angle, offset, defect
};

// Exhaustive scan of the 2-parameter planar line family against two measures.
LineScanResult planar_line_scan(const MassDistribution& mu1, const MassDistribution& mu2,
                                const ScanGrid& grid, bool keep_table = false);

// m point-sampled unit balls with affinely independent centers at mutual
// distance >= separation; the instances witnessing the upper bounds.
std::vector<MassDistribution> upper_bound_instance(int q, int m, int n, double separation);

}  // namespace equipart
