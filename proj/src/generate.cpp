#include "equipart/generate.hpp"

#include <cmath>
#include <numbers>

#include "equipart/errors.hpp"

namespace equipart {

MassDistribution gaussian_cloud(int dim, int count, std::uint64_t seed, double bandwidth,
                                double scale, Vec center) {
    if (center.empty()) center.assign(static_cast<std::size_t>(dim), 0.0);
    if (center.size() != static_cast<std::size_t>(dim))
        throw DimensionError("gaussian_cloud: center dimension mismatch");
    Rng rng(seed);
    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(count) * static_cast<std::size_t>(dim));
    for (int p = 0; p < count; ++p)
        for (int c = 0; c < dim; ++c)
            coords.push_back(center[static_cast<std::size_t>(c)] + scale * rng.gaussian());
    return MassDistribution::make(dim, std::move(coords), {}, bandwidth);
}

MassDistribution mixture_cloud(int dim, int count, int components, std::uint64_t seed,
                               double bandwidth, double spread) {
    if (components < 1) throw ValidationError("mixture_cloud: components must be >= 1");
    Rng rng(seed);
    std::vector<double> centers(static_cast<std::size_t>(components) * static_cast<std::size_t>(dim));
    std::vector<double> sigmas(static_cast<std::size_t>(components));
    for (double& c : centers) c = spread * (2.0 * rng.uniform() - 1.0);
    for (double& s : sigmas) s = 0.25 + 0.5 * rng.uniform();
    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(count) * static_cast<std::size_t>(dim));
    for (int p = 0; p < count; ++p) {
        int c = std::min(components - 1, static_cast<int>(rng.uniform() * components));
        for (int k = 0; k < dim; ++k)
            coords.push_back(centers[static_cast<std::size_t>(c * dim + k)] +
                             sigmas[static_cast<std::size_t>(c)] * rng.gaussian());
    }
    return MassDistribution::make(dim, std::move(coords), {}, bandwidth);
}

MassDistribution ball_cloud(int dim, int count, std::uint64_t seed, Vec center, double radius,
                            double bandwidth) {
    if (center.empty()) center.assign(static_cast<std::size_t>(dim), 0.0);
    if (center.size() != static_cast<std::size_t>(dim))
        throw DimensionError("ball_cloud: center dimension mismatch");
    Rng rng(seed);
    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(count) * static_cast<std::size_t>(dim));
    Vec dir(static_cast<std::size_t>(dim));
    for (int p = 0; p < count; ++p) {
        double n2 = 0.0;
        for (double& d : dir) {
            d = rng.gaussian();
            n2 += d * d;
        }
        double r = radius * std::pow(rng.uniform(), 1.0 / dim) / std::sqrt(n2);
        for (int c = 0; c < dim; ++c)
            coords.push_back(center[static_cast<std::size_t>(c)] + r * dir[static_cast<std::size_t>(c)]);
    }
    return MassDistribution::make(dim, std::move(coords), {}, bandwidth);
}

MassDistribution orbit_symmetric_cloud(int dim, int q, int orbits, std::uint64_t seed,
                                       double bandwidth) {
    if (dim % 2 != 0) throw DimensionError("orbit_symmetric_cloud: dimension must be even");
    if (q < 2) throw ValidationError("orbit_symmetric_cloud: q must be >= 2");
    Rng rng(seed);
    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(orbits) * static_cast<std::size_t>(q) *
                   static_cast<std::size_t>(dim));
    Vec base(static_cast<std::size_t>(dim));
    for (int o = 0; o < orbits; ++o) {
        for (double& c : base) c = rng.gaussian();
        for (int j = 0; j < q; ++j) {
            double ang = 2.0 * std::numbers::pi * j / q;
            Vec rotated = complex_scaled(base, Complex(std::cos(ang), std::sin(ang)));
            coords.insert(coords.end(), rotated.begin(), rotated.end());
        }
    }
    return MassDistribution::make(dim, std::move(coords), {}, bandwidth);
}

MassDistribution merge(const MassDistribution& a, const MassDistribution& b) {
    if (a.dim != b.dim) throw DimensionError("merge: dimension mismatch");
    std::vector<double> coords = a.coords;
    coords.insert(coords.end(), b.coords.begin(), b.coords.end());
    std::vector<double> weights = a.weights;
    weights.insert(weights.end(), b.weights.begin(), b.weights.end());
    return MassDistribution::make(a.dim, std::move(coords), std::move(weights),
                                  std::max(a.bandwidth, b.bandwidth));
}

}  // namespace equipart
