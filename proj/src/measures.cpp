#include "equipart/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "equipart/errors.hpp"

namespace equipart {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_dim(int have, int want, const char* what) {
    if (have != want)
        throw DimensionError(std::string(what) + ": dimension " + std::to_string(have) +
                             " does not match " + std::to_string(want));
}

// logistic(a/h) - logistic(b/h) for a >= b, skipping saturated tails where
// the difference is below double precision.
double logistic_gap(double a, double b, double h) {
    double xa = a / h, xb = b / h;
    if (xb >= 38.0 || xa <= -38.0) return 0.0;
    return logistic(xa) - logistic(xb);
}

// Nudge the last weight so the weights sum to 1.0 bitwise. The adjustment is
// at most a few ulps, so individual weights stay within rounding of their
// mathematical values.
void fixup_partition_of_unity(std::vector<double>& w) {
    for (int pass = 0; pass < 4; ++pass) {
        double s = std::accumulate(w.begin(), w.end(), 0.0);
        if (s == 1.0) return;
        double& last = w.back();
        double corrected = last + (1.0 - s);
        if (corrected == last || corrected < 0.0) return;
        last = corrected;
    }
}

}  // namespace

MassDistribution MassDistribution::make(int dim, std::vector<double> coords,
                                        std::vector<double> weights, double bandwidth) {
    if (dim <= 0) throw ValidationError("dim must be positive");
    if (coords.size() % static_cast<std::size_t>(dim) != 0)
        throw ValidationError("coords length is not a multiple of dim");
    std::size_t count = coords.size() / static_cast<std::size_t>(dim);
    if (weights.empty()) weights.assign(count, 1.0);
    if (weights.size() != count)
        throw ValidationError("weights length " + std::to_string(weights.size()) +
                              " does not match point count " + std::to_string(count));
    if (bandwidth < 0.0) throw ValidationError("bandwidth must be >= 0");
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw ValidationError("weights must all be > 0");
        total += w;
    }
    if (!(total > 0.0)) throw ZeroMassError("total mass must be > 0");
    MassDistribution mu;
    mu.dim = dim;
    mu.coords = std::move(coords);
    mu.weights = std::move(weights);
    mu.bandwidth = bandwidth;
    mu.total = total;
    return mu;
}

Hyperplane::Hyperplane(Vec n, double b) : normal(std::move(n)), offset(b) {
    double len = norm(normal);
    if (std::abs(len - 1.0) > 1e-12)
        throw ValidationError("hyperplane normal must be a unit vector (|1 - ||a||| <= 1e-12)");
}

ComplexRegularQFan::ComplexRegularQFan(int q, int t, Vec n, Complex b)
    : arity(q), half_dim(t), normal(std::move(n)), offset(b) {
    if (q < 2) throw ValidationError("fan arity must be >= 2");
    if (t < 1) throw ValidationError("fan half_dim must be >= 1");
    if (normal.size() != static_cast<std::size_t>(2 * t))
        throw DimensionError("fan normal must have 2*half_dim real coordinates");
    if (std::abs(hermitian_norm(normal) - 1.0) > 1e-12)
        throw ValidationError("fan normal must be a Hermitian unit vector");
}

double halfspace_measure(const MassDistribution& mu, const Hyperplane& h, Side side) {
    check_dim(mu.dim, h.dim(), "halfspace_measure");
    const double sign = (side == Side::plus) ? 1.0 : -1.0;
    const double eps = mu.bandwidth;
    double mass = 0.0;
    for (std::size_t p = 0; p < mu.size(); ++p) {
        double s = dot(mu.point(p), h.normal) - h.offset;
        double m;
        if (eps > 0.0) {
            m = logistic(sign * s / eps);
        } else {
            if (s == 0.0)
                m = 0.5;
            else
                m = (sign * s > 0.0) ? 1.0 : 0.0;
        }
        mass += mu.weights[p] * m;
    }
    return mass;
}

SectorWeights sector_membership(std::span<const double> z, const ComplexRegularQFan& fan,
                                double bandwidth) {
    check_dim(static_cast<int>(z.size()), fan.dim(), "sector_membership");
    const int q = fan.arity;
    const Complex v = hermitian_dot(z, fan.normal) - std::conj(fan.offset);
    SectorWeights out;
    out.weights.assign(static_cast<std::size_t>(q), 0.0);

    const double r = std::abs(v);
    if (r == 0.0) {
        // Fan center: the limit of the smoothed membership, equal in every sector.
        std::fill(out.weights.begin(), out.weights.end(), 1.0 / q);
        fixup_partition_of_unity(out.weights);
        return out;
    }

    if (bandwidth <= 0.0) {
        double theta = std::arg(v);
        if (theta < 0.0) theta += kTwoPi;
        long j = static_cast<long>(std::floor(theta / (kTwoPi / q)));
        if (j >= q) j -= q;  // theta rounded up to 2*pi
        if (j < 0) j = 0;
        out.weights[static_cast<std::size_t>(j)] = 1.0;
        return out;
    }

    // Smoothed membership: difference of wrapped logistics at the two sector
    // boundary angles, then normalized. The angular scale is bandwidth / |v|,
    // so the smoothing matches the spatial logistic near each boundary ray and
    // tends to the uniform 1/q limit at the fan center.
    const double h = bandwidth / r;
    const double half_arc = std::numbers::pi / q;
    const double theta = std::arg(v);
    double sum = 0.0;
    for (int j = 0; j < q; ++j) {
        double center = (2.0 * j + 1.0) * half_arc;
        double d = std::remainder(theta - center, kTwoPi);
        double raw = 0.0;
        for (int k = -1; k <= 1; ++k) {
            double base = d + kTwoPi * k;
            raw += logistic_gap(base + half_arc, base - half_arc, h);
        }
        out.weights[static_cast<std::size_t>(j)] = raw;
        sum += raw;
    }
    if (!(sum > 0.0)) {
        std::fill(out.weights.begin(), out.weights.end(), 1.0 / q);
    } else {
        for (double& w : out.weights) w /= sum;
    }
    fixup_partition_of_unity(out.weights);
    return out;
}

std::vector<double> sector_measures(const MassDistribution& mu,
                                    const ComplexRegularQFan& fan) {
    check_dim(mu.dim, fan.dim(), "sector_measures");
    std::vector<double> masses(static_cast<std::size_t>(fan.arity), 0.0);
    for (std::size_t p = 0; p < mu.size(); ++p) {
        SectorWeights w = sector_membership(mu.point(p), fan, mu.bandwidth);
        for (std::size_t j = 0; j < masses.size(); ++j)
            masses[j] += mu.weights[p] * w.weights[j];
    }
    return masses;
}

namespace {

// Weighted median of projections with the boundary-atom half-counting rule.
// Atoms with exactly equal projection are merged (weights summed in original
// index order), prefix sums S are taken ascending and suffix sums R descending,
// and the balance tests use S and R symmetrically so that negating every
// projection negates the result bitwise.
double sharp_median_midpoint(std::vector<std::pair<double, std::size_t>>& proj,
                             const std::vector<double>& weights) {
    std::stable_sort(proj.begin(), proj.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<double> v;  // distinct projections, ascending
    std::vector<double> u;  // merged weights
    v.reserve(proj.size());
    u.reserve(proj.size());
    for (std::size_t i = 0; i < proj.size();) {
        std::size_t j = i;
        double w = 0.0;
        while (j < proj.size() && proj[j].first == proj[i].first) {
            w += weights[proj[j].second];
            ++j;
        }
        v.push_back(proj[i].first);
        u.push_back(w);
        i = j;
    }
    const std::size_t k = v.size();
    std::vector<double> S(k + 1, 0.0), R(k + 2, 0.0);
    for (std::size_t i = 1; i <= k; ++i) S[i] = S[i - 1] + u[i - 1];
    for (std::size_t i = k; i >= 1; --i) R[i] = R[i + 1] + u[i - 1];

    // Exactly balanced atom: strictly-below mass equals strictly-above mass.
    for (std::size_t i = 1; i <= k; ++i)
        if (S[i - 1] == R[i + 1]) return v[i - 1];
    // Plateau between consecutive atoms: mass at-or-below equals mass above.
    for (std::size_t i = 1; i < k; ++i)
        if (S[i] == R[i + 1]) return 0.5 * (v[i - 1] + v[i]);
    // Otherwise the first atom where at-or-below mass overtakes above mass.
    for (std::size_t i = 1; i <= k; ++i)
        if (S[i] > R[i + 1]) return v[i - 1];
    return v[k - 1];
}

}  // namespace

double level_offset(const MassDistribution& mu, std::span<const double> direction) {
    check_dim(mu.dim, static_cast<int>(direction.size()), "level_offset");
    if (!(mu.total > 0.0)) throw ZeroMassError("level_offset: measure has no mass");

    // Work on the canonical representative of {direction, -direction} and flip
    // the result back, so level_offset(-x) == -level_offset(x) bitwise.
    bool flip = false;
    for (double c : direction) {
        if (c != 0.0) {
            flip = c < 0.0;
            break;
        }
    }

    std::vector<std::pair<double, std::size_t>> proj(mu.size());
    double max_abs = 0.0;
    for (std::size_t p = 0; p < mu.size(); ++p) {
        double d = dot(mu.point(p), direction);
        if (flip) d = -d;
        proj[p] = {d, p};
        max_abs = std::max(max_abs, std::abs(d));
    }

    if (mu.bandwidth <= 0.0) {
        double t = sharp_median_midpoint(proj, mu.weights);
        return flip ? -t : t;
    }

    const double eps = mu.bandwidth;
    auto g = [&](double t) {
        double mass = 0.0;
        for (const auto& [d, p] : proj) mass += mu.weights[p] * logistic((d - t) / eps);
        return mass;
    };
    double lo = -max_abs - 45.0 * eps;
    double hi = max_abs + 45.0 * eps;
    const double half = 0.5 * mu.total;
    // the mass slope is at most total/(4 eps), so this width keeps the mass
    // residual within 1e-10 of half the total
    const double tol = std::min(0.5e-10 * std::max(1.0, max_abs), 2e-10 * eps);
    for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        if (g(mid) > half)
            lo = mid;  // too much mass above: move the plane up
        else
            hi = mid;
    }
    double t = 0.5 * (lo + hi);
    return flip ? -t : t;
}

double equipartition_defect(std::span<const MassDistribution> measures,
                            std::span<const ComplexRegularQFan> fans) {
    double worst = 0.0;
    for (const MassDistribution& mu : measures) {
        for (const ComplexRegularQFan& fan : fans) {
            std::vector<double> masses = sector_measures(mu, fan);
            const double target = 1.0 / fan.arity;
            for (double m : masses)
                worst = std::max(worst, std::abs(m / mu.total - target));
        }
    }
    return worst;
}

}  // namespace equipart
