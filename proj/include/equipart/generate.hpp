#pragma once

#include <cstdint>
#include <random>

#include "equipart/measures.hpp"

namespace equipart {

// Deterministic sampler built on the standardized mt19937_64 bit stream, with
// the uniform and gaussian transforms done by hand so sampled instances are
// reproducible across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

MassDistribution gaussian_cloud(int dim, int count, std::uint64_t seed, double bandwidth,
                                double scale = 1.0, Vec center = {});

// Random mixture of gaussian blobs with centers in [-spread, spread]^dim.
MassDistribution mixture_cloud(int dim, int count, int components, std::uint64_t seed,
                               double bandwidth, double spread = 1.5);

MassDistribution ball_cloud(int dim, int count, std::uint64_t seed, Vec center, double radius,
                            double bandwidth);

// Point cloud exactly invariant (up to rounding) under the complex rotation
// z -> zeta_q z: sampled base points together with their full orbits.
MassDistribution orbit_symmetric_cloud(int dim, int q, int orbits, std::uint64_t seed,
                                       double bandwidth);

MassDistribution merge(const MassDistribution& a, const MassDistribution& b);

}  // namespace equipart
