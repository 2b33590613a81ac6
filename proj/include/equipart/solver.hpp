#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "equipart/frames.hpp"
#include "equipart/measures.hpp"

namespace equipart {

struct SearchConfig {
    int restarts = 16;
    int max_iters = 600;
    double tol = 1e-3;  // dimensionless fraction of total mass
    std::uint64_t seed = 0;
    double degenerate_guard = 0.05;
    int threads = 1;

    void validate() const;
};

using VectorField = std::function<Vec(std::span<const double>)>;

struct SearchResult {
    Vec witness;
    double merit = 0.0;     // minimized objective at the witness
    double residual = 0.0;  // max-norm quantity the tolerance applies to
    bool converged = false;
    int iterations = 0;
    int restarts_used = 0;
};

// Multistart stencil descent for a zero of an odd map f: S^{d-1} -> R^c, c <= d-1.
SearchResult odd_zero_search(int dim, const VectorField& f, const SearchConfig& cfg);

// Same for maps with f(ix) = -f(x) on S^{2n-1}.
SearchResult i_odd_zero_search(int dim, const VectorField& f, const SearchConfig& cfg);

struct OrbitGuard {
    bool active = false;
    double delta = 0.05;
    std::size_t block_begin = 2;  // first real coordinate of the guarded block
};

// Point u with f(u) = f(zeta_q u) = ... = f(zeta_q^{q-1} u), zeta_q acting as
// the diagonal complex rotation on interleaved coordinates. The guard keeps
// iterates away from the degenerate circle where the guarded block vanishes.
SearchResult orbit_coincidence_search(int dim, int q, const VectorField& f,
                                      const SearchConfig& cfg, const OrbitGuard& guard);

enum class FanMode { complex_orthogonal, real_independent };

struct SolveReport {
    std::string kind;  // "bisect" | "fan" | "fourfan" | "sectors2q"
    int q = 2;
    int dim = 0;
    std::string mode;  // fan drivers only
    Vec witness;
    std::vector<Hyperplane> hyperplanes;
    std::vector<ComplexRegularQFan> fans;
    std::vector<std::size_t> independent_fans;
    std::vector<double> measure_totals;
    std::vector<std::vector<std::vector<double>>> masses;  // [measure][partition][sector]
    double defect = 0.0;
    bool converged = false;
    int iterations = 0;
    int restarts_used = 0;
    double tol = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> orbit_residuals;
    double frame_gram_error = 0.0;
    double overlap_mass = 0.0;
    double overlap_identity_residual = 0.0;
};

// k pairwise-orthogonal hyperplanes bisecting every measure; the frame comes
// from the Hurwitz-Radon family at the witness and every plane is levelled
// against the first measure.
SolveReport bisect_orthogonal(const std::vector<MassDistribution>& measures, int k,
                              const SearchConfig& cfg);

// k regular q-fans (q an odd prime) equipartitioning every measure,
// orthogonal pairs via the quaternionic complex 2-frame or linearly
// independent families via the Hurwitz-Radon frame.
SolveReport equipartition_fans(const std::vector<MassDistribution>& measures, int q,
                               FanMode mode, int k, const SearchConfig& cfg);

// k regular 4-fans equipartitioning one measure, built from pairs of levelled
// orthogonal hyperplanes.
SolveReport equipartition_fourfans(const MassDistribution& mu, FanMode mode, int k,
                                   const SearchConfig& cfg);

// q hyperplanes at consecutive angles pi/q whose 2q covering sectors all carry
// equal mass; reports the overlap mass and the covering identity residual.
SolveReport near_equipartition_2q(const MassDistribution& mu, int q,
                                  const SearchConfig& cfg);

// Fan family of the coincidence construction at a point u of S^{2t+1}:
// fan i has normal s_i(w/|w|) and complex offset -u_0^{r_i}/|w| with
// w = (u_1, ..., u_t). Exposed for the equivariance suite.
std::vector<ComplexRegularQFan> fan_family_at(std::span<const double> u, int q,
                                              const FrameSection& section);

// The 2q covering sector masses of the near-equipartition construction, and
// the mass of the central overlap region.
std::vector<double> sector_masses_2q(const MassDistribution& mu,
                                     const std::vector<Hyperplane>& planes);
double overlap_mass_2q(const MassDistribution& mu, const std::vector<Hyperplane>& planes);

// Quadrant masses of a regular 4-fan built from two levelled orthogonal
// hyperplanes: membership is the product of the two half-space memberships,
// so boundary atoms split symmetrically and the four masses relabel exactly
// under multiplication by i. This is the mass convention of the 4-fan driver.
std::vector<double> fan_quadrant_masses(const MassDistribution& mu,
                                        const ComplexRegularQFan& fan);

// Recompute a report's masses table from its stored partition objects.
std::vector<std::vector<std::vector<double>>> recompute_masses(
    const SolveReport& report, const std::vector<MassDistribution>& measures);

// Defect of a masses table under the report's convention: deviation from 1/q
// for the partition drivers, deviation from the sector mean for "sectors2q".
double report_defect(const SolveReport& report,
                     const std::vector<std::vector<std::vector<double>>>& masses,
                     const std::vector<double>& totals);

}  // namespace equipart
