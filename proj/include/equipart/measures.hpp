#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "equipart/linalg.hpp"

namespace equipart {

// Weighted point cloud with an optional logistic smoothing bandwidth.
// bandwidth == 0 means sharp (indicator) evaluation with boundary atoms
// counted half to each side.
struct MassDistribution {
    int dim = 0;
    std::vector<double> coords;   // count*dim, row-major
    std::vector<double> weights;  // count entries, all > 0
    double bandwidth = 0.0;
    double total = 0.0;

    std::size_t size() const { return weights.size(); }
    std::span<const double> point(std::size_t i) const {
        return {coords.data() + static_cast<std::ptrdiff_t>(i) * dim,
                static_cast<std::size_t>(dim)};
    }

    static MassDistribution make(int dim, std::vector<double> coords,
                                 std::vector<double> weights, double bandwidth);
};

struct Hyperplane {
    Vec normal;  // unit within 1e-12
    double offset = 0.0;

    Hyperplane(Vec n, double b);
    int dim() const { return static_cast<int>(normal.size()); }
};

// Regular q-fan in R^{2t} centered about a complex hyperplane: the sectors are
// { z : <z, normal>_C = conj(offset) + v, arg(v) in [2 pi j / q, 2 pi (j+1) / q) }.
struct ComplexRegularQFan {
    int arity = 0;     // q >= 2
    int half_dim = 0;  // t, ambient space is R^{2t}
    Vec normal;        // interleaved complex unit vector, 2t reals
    Complex offset{0.0, 0.0};

    ComplexRegularQFan(int q, int t, Vec normal_interleaved, Complex offset);
    int dim() const { return 2 * half_dim; }
};

// Smoothed membership of one point across the q sectors; sums to 1 exactly.
struct SectorWeights {
    std::vector<double> weights;
};

enum class Side { plus, minus };

// Mass of the closed half-space {<u, normal> >= offset} (plus) or <= (minus).
double halfspace_measure(const MassDistribution& mu, const Hyperplane& h, Side side);

// Membership of a single point across the fan's sectors. Sharp mode puts
// weight 1 on the half-open sector containing arg(v), except the fan center
// which gets 1/q everywhere; smoothed mode uses wrapped-logistic angular
// weights with spatial bandwidth translated to an angle at the point's radius.
SectorWeights sector_membership(std::span<const double> z, const ComplexRegularQFan& fan,
                                double bandwidth);

// Per-sector masses; uses mu.bandwidth for smoothing.
std::vector<double> sector_measures(const MassDistribution& mu,
                                    const ComplexRegularQFan& fan);

// Offset t such that the hyperplane {<u, direction> = t} bisects mu: the
// unique root of the smoothed half-space mass when bandwidth > 0, the midpoint
// of the weighted median interval when bandwidth == 0. Odd in the direction.
double level_offset(const MassDistribution& mu, std::span<const double> direction);

// max over measures, fans, sectors of |mass / total - 1/q|.
double equipartition_defect(std::span<const MassDistribution> measures,
                            std::span<const ComplexRegularQFan> fans);

}  // namespace equipart
