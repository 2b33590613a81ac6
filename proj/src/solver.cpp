#include "equipart/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "equipart/errors.hpp"

namespace equipart {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_odd_prime(int q) {
    if (q < 3 || q % 2 == 0) return false;
    for (int d = 3; d * d <= q; d += 2)
        if (q % d == 0) return false;
    return true;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<int> first_primes(std::size_t count) {
    std::vector<int> primes;
    for (int n = 2; primes.size() < count; ++n) {
        bool ok = true;
        for (int p : primes) {
            if (p * p > n) break;
            if (n % p == 0) {
                ok = false;
                break;
            }
        }
        if (ok) primes.push_back(n);
    }
    return primes;
}

// Acklam's rational approximation to the inverse normal CDF (~1e-9 accurate),
// good enough to turn low-discrepancy uniforms into sphere samples.
double inv_normal_cdf(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425, p_high = 1.0 - p_low;
    p = std::clamp(p, 1e-12, 1.0 - 1e-12);
    if (p < p_low) {
        double u = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
               ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
    }
    if (p > p_high) {
        double u = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
               ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
    }
    double u = p - 0.5, t = u * u;
    return (((((a[0] * t + a[1]) * t + a[2]) * t + a[3]) * t + a[4]) * t + a[5]) * u /
           (((((b[0] * t + b[1]) * t + b[2]) * t + b[3]) * t + b[4]) * t + 1.0);
}

// Low-discrepancy sphere samples: a Kronecker sequence on [0,1)^d with a
// seed-derived Cranley-Patterson shift, mapped through the inverse normal CDF
// and normalized.
Vec restart_point(int dim, int index, std::uint64_t seed) {
    static const std::vector<int> primes = first_primes(192);
    if (dim > static_cast<int>(primes.size()))
        throw ValidationError("search dimension " + std::to_string(dim) +
                              " exceeds the supported maximum of " +
                              std::to_string(primes.size()));
    Vec x(static_cast<std::size_t>(dim));
    std::uint64_t state = seed ^ 0x7b2f8c1d4e9a6350ULL;
    double n2 = 0.0;
    for (int i = 0; i < dim; ++i) {
        double alpha = std::sqrt(static_cast<double>(primes[static_cast<std::size_t>(i)]));
        alpha -= std::floor(alpha);
        double shift = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
        double u = shift + (index + 1.0) * alpha;
        u -= std::floor(u);
        double g = inv_normal_cdf(u);
        x[static_cast<std::size_t>(i)] = g;
        n2 += g * g;
    }
    if (!(n2 > 0.0)) {
        x.assign(static_cast<std::size_t>(dim), 0.0);
        x[0] = 1.0;
        return x;
    }
    double inv = 1.0 / std::sqrt(n2);
    for (double& v : x) v *= inv;
    return x;
}

// Orthonormal basis of the tangent space at unit x, via the Householder
// reflection sending x to a coordinate axis.
std::vector<Vec> tangent_basis(std::span<const double> x) {
    const std::size_t d = x.size();
    Vec v(x.begin(), x.end());
    double s = (v[0] >= 0.0) ? 1.0 : -1.0;
    v[0] += s;
    double beta = 1.0 / (1.0 + std::abs(x[0]));
    std::vector<Vec> basis;
    basis.reserve(d - 1);
    for (std::size_t i = 1; i < d; ++i) {
        Vec t(d, 0.0);
        t[i] = 1.0;
        double coef = beta * v[i];
        for (std::size_t j = 0; j < d; ++j) t[j] -= coef * v[j];
        basis.push_back(std::move(t));
    }
    return basis;
}

struct Eval {
    double merit = kInf;
    double residual = kInf;
    bool ok = false;
};

using EvalFn = std::function<Eval(std::span<const double>)>;
using FeasibleFn = std::function<bool(std::span<const double>)>;

struct LocalOutcome {
    Vec x;
    Eval e;
    int iters = 0;
};

Vec geodesic_step(const Vec& x, const Vec& t, double step) {
    Vec y(x.size());
    double c = std::cos(step), s = std::sin(step), n2 = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
        y[j] = c * x[j] + s * t[j];
        n2 += y[j] * y[j];
    }
    double inv = 1.0 / std::sqrt(n2);
    for (double& v : y) v *= inv;
    return y;
}

// Nelder-Mead polish on the sphere: dim vertices (intrinsic dimension plus
// one), points projected back to the sphere after every move. The adaptive
// simplex handles curved degenerate valleys where a fixed stencil crawls.
void nm_polish(int dim, const EvalFn& eval, const FeasibleFn& feasible, LocalOutcome& out,
               int max_evals, double radius) {
    const std::size_t n_vert = static_cast<std::size_t>(dim);
    struct Vert {
        Vec x;
        Eval e;
    };
    auto safe_eval = [&](const Vec& y) {
        if (!feasible(y)) return Eval{};
        return eval(y);
    };
    std::vector<Vert> simp;
    simp.push_back({out.x, out.e});
    std::vector<Vec> basis = tangent_basis(out.x);
    int evals = 0;
    for (std::size_t i = 0; i + 1 < n_vert; ++i) {
        Vec v = geodesic_step(out.x, basis[i], radius);
        Eval e = safe_eval(v);
        ++evals;
        if (e.merit == kInf) {
            v = geodesic_step(out.x, basis[i], -radius);
            e = safe_eval(v);
            ++evals;
        }
        simp.push_back({std::move(v), e});
    }
    auto order = [&]() {
        std::stable_sort(simp.begin(), simp.end(),
                         [](const Vert& a, const Vert& b) { return a.e.merit < b.e.merit; });
    };
    auto take_best = [&]() {
        if (simp[0].e.merit < out.e.merit) {
            out.x = simp[0].x;
            out.e = simp[0].e;
        }
    };
    order();
    take_best();
    if (out.e.ok) return;

    Vec centroid(static_cast<std::size_t>(dim));
    while (evals < max_evals) {
        double n2 = 0.0;
        for (std::size_t j = 0; j < centroid.size(); ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i + 1 < n_vert; ++i) s += simp[i].x[j];
            centroid[j] = s;
            n2 += s * s;
        }
        if (!(n2 > 0.0)) break;
        double inv = 1.0 / std::sqrt(n2);
        for (double& v : centroid) v *= inv;

        Vert& worst = simp[n_vert - 1];
        auto move_point = [&](double coef) {
            Vec y(centroid.size());
            double m2 = 0.0;
            for (std::size_t j = 0; j < y.size(); ++j) {
                y[j] = centroid[j] + coef * (centroid[j] - worst.x[j]);
                m2 += y[j] * y[j];
            }
            if (!(m2 > 0.0)) return centroid;
            double s = 1.0 / std::sqrt(m2);
            for (double& v : y) v *= s;
            return y;
        };

        Vec xr = move_point(1.0);
        Eval er = safe_eval(xr);
        ++evals;
        if (er.merit < simp[0].e.merit) {
            Vec xe = move_point(2.0);
            Eval ee = safe_eval(xe);
            ++evals;
            if (ee.merit < er.merit)
                worst = {std::move(xe), ee};
            else
                worst = {std::move(xr), er};
        } else if (er.merit < simp[n_vert - 2].e.merit) {
            worst = {std::move(xr), er};
        } else {
            Vec xc = move_point(-0.5);
            Eval ec = safe_eval(xc);
            ++evals;
            if (ec.merit < worst.e.merit) {
                worst = {std::move(xc), ec};
            } else {
                // shrink toward the best vertex
                for (std::size_t i = 1; i < n_vert; ++i) {
                    Vec y(centroid.size());
                    double m2 = 0.0;
                    for (std::size_t j = 0; j < y.size(); ++j) {
                        y[j] = 0.5 * (simp[0].x[j] + simp[i].x[j]);
                        m2 += y[j] * y[j];
                    }
                    if (!(m2 > 0.0)) continue;
                    double s = 1.0 / std::sqrt(m2);
                    for (double& v : y) v *= s;
                    simp[i].x = std::move(y);
                    simp[i].e = safe_eval(simp[i].x);
                    ++evals;
                }
            }
        }
        order();
        take_best();
        if (out.e.ok) return;
        double diam = 0.0;
        for (std::size_t j = 0; j < centroid.size(); ++j)
            diam = std::max(diam, std::abs(simp[0].x[j] - simp[n_vert - 1].x[j]));
        if (diam < 1e-13) break;
    }
}

// Hooke-Jeeves descent on the sphere: a sequential exploratory walk along the
// 2*(dim-1) signed tangent directions of a moving stencil, followed by pattern
// extrapolation of the accumulated displacement, which lets the search follow
// curved valleys that defeat single-axis moves. The base step only shrinks.
LocalOutcome stencil_minimize(int dim, const EvalFn& eval, const FeasibleFn& feasible, Vec x0,
                              int max_iters) {
    LocalOutcome out;
    out.x = std::move(x0);
    out.e = eval(out.x);
    if (out.e.ok) return out;

    double h = 0.5;
    int it = 0;

    // walk each tangent axis once, keeping improvements immediately
    auto explore = [&](Vec point, Eval e, double step) {
        std::vector<Vec> basis = tangent_basis(point);
        for (const Vec& t0 : basis) {
            double along = dot(t0, point);
            Vec dir(t0.size());
            double n2 = 0.0;
            for (std::size_t j = 0; j < dir.size(); ++j) {
                dir[j] = t0[j] - along * point[j];
                n2 += dir[j] * dir[j];
            }
            if (n2 < 1e-28) continue;
            double inv = 1.0 / std::sqrt(n2);
            for (double& v : dir) v *= inv;
            for (double s : {1.0, -1.0}) {
                Vec y = geodesic_step(point, dir, s * step);
                if (!feasible(y)) continue;
                Eval ey = eval(y);
                if (ey.merit < e.merit) {
                    point = std::move(y);
                    e = ey;
                    break;
                }
            }
        }
        return std::make_pair(point, e);
    };

    while (it < max_iters) {
        out.iters = ++it;
        auto [xn, en] = explore(out.x, out.e, h);
        if (en.merit < out.e.merit) {
            Vec prev = out.x;
            out.x = std::move(xn);
            out.e = en;
            if (out.e.ok) return out;
            while (it < max_iters) {
                double ca = std::clamp(dot(prev, out.x), -1.0, 1.0);
                double arc = std::acos(ca);
                if (!(arc > 1e-14)) break;
                double sa = std::sin(arc);
                Vec fwd(out.x.size());
                for (std::size_t j = 0; j < fwd.size(); ++j)
                    fwd[j] = (ca * out.x[j] - prev[j]) / sa;
                Vec p = geodesic_step(out.x, fwd, std::min(arc, 0.7));
                if (!feasible(p)) break;
                out.iters = ++it;
                double before = out.e.merit;
                auto [xp, ep] = explore(p, eval(p), h);
                if (ep.merit < out.e.merit) {
                    prev = out.x;
                    out.x = std::move(xp);
                    out.e = ep;
                    if (out.e.ok) return out;
                }
                // sufficient decrease keeps the chain alive; marginal gains
                // hand control back so the base step can shrink
                if (!(ep.merit < 0.99 * before)) break;
            }
        } else {
            h *= 0.5;
            if (h < 1e-12) break;
        }
    }
    if (!out.e.ok) nm_polish(dim, eval, feasible, out, 4 * max_iters, 1e-2);
    return out;
}

struct MultistartOutcome {
    SearchResult result;
    std::vector<Vec> final_points;  // one per executed restart
};

// Restarts run in index order (batched across threads when requested) and the
// first converged restart wins, so the outcome does not depend on the thread
// count for a fixed batch width. Ties among non-converged restarts break
// toward the lower merit, then the lower index. Every third restart perturbs
// the best endpoint found so far instead of starting fresh, which escapes
// shared local minima of clustered starts.
MultistartOutcome multistart(int dim, const EvalFn& eval, const FeasibleFn& feasible,
                             const std::function<Vec(int)>& start, const SearchConfig& cfg) {
    MultistartOutcome out;
    std::vector<LocalOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
    int executed = 0;
    int best = -1;
    bool stop = false;
    const int threads = std::max(1, cfg.threads);

    auto start_point = [&](int r) {
        Vec fresh = start(r);
        if (r % 3 != 2 || best < 0) return fresh;
        const Vec& bx = outcomes[static_cast<std::size_t>(best)].x;
        double along = dot(fresh, bx);
        Vec dir(fresh.size());
        double n2 = 0.0;
        for (std::size_t j = 0; j < dir.size(); ++j) {
            dir[j] = fresh[j] - along * bx[j];
            n2 += dir[j] * dir[j];
        }
        if (n2 < 1e-24) return fresh;
        double inv = 1.0 / std::sqrt(n2);
        for (double& v : dir) v *= inv;
        double radius = 0.25 + 0.25 * ((r / 3) % 3);
        Vec hop = geodesic_step(bx, dir, radius);
        return feasible(hop) ? hop : fresh;
    };

    for (int next = 0; next < cfg.restarts && !stop;) {
        int batch = std::min(threads, cfg.restarts - next);
        if (batch == 1) {
            outcomes[static_cast<std::size_t>(next)] =
                stencil_minimize(dim, eval, feasible, start_point(next), cfg.max_iters);
        } else {
            std::vector<Vec> starts;
            for (int r = next; r < next + batch; ++r) starts.push_back(start_point(r));
            std::vector<std::thread> pool;
            for (int r = next; r < next + batch; ++r)
                pool.emplace_back([&, r] {
                    outcomes[static_cast<std::size_t>(r)] = stencil_minimize(
                        dim, eval, feasible, starts[static_cast<std::size_t>(r - next)],
                        cfg.max_iters);
                });
            for (std::thread& t : pool) t.join();
        }
        for (int r = next; r < next + batch; ++r) {
            ++executed;
            const LocalOutcome& o = outcomes[static_cast<std::size_t>(r)];
            if (best < 0 || (o.e.ok && !outcomes[static_cast<std::size_t>(best)].e.ok) ||
                (o.e.ok == outcomes[static_cast<std::size_t>(best)].e.ok &&
                 o.e.merit < outcomes[static_cast<std::size_t>(best)].e.merit))
                best = r;
            if (o.e.ok) {
                stop = true;
                break;
            }
        }
        next += batch;
    }

    const LocalOutcome& chosen = outcomes[static_cast<std::size_t>(best)];
    out.result.witness = chosen.x;
    out.result.merit = chosen.e.merit;
    out.result.residual = chosen.e.residual;
    out.result.converged = chosen.e.ok;
    out.result.restarts_used = executed;
    for (int r = 0; r < executed; ++r) {
        out.result.iterations += outcomes[static_cast<std::size_t>(r)].iters;
        out.final_points.push_back(outcomes[static_cast<std::size_t>(r)].x);
    }
    return out;
}

Vec negated(std::span<const double> x) {
    Vec out(x.begin(), x.end());
    for (double& v : out) v = -v;
    return out;
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

void SearchConfig::validate() const {
    if (!(tol > 0.0)) throw ValidationError("SearchConfig: tol must be > 0");
    if (restarts < 1) throw ValidationError("SearchConfig: restarts must be >= 1");
    if (max_iters < 1) throw ValidationError("SearchConfig: max_iters must be >= 1");
    if (!(degenerate_guard > 0.0 && degenerate_guard < 1.0))
        throw ValidationError("SearchConfig: degenerate_guard must lie in (0,1)");
}

SearchResult odd_zero_search(int dim, const VectorField& f, const SearchConfig& cfg) {
    cfg.validate();
    if (dim < 2) throw ValidationError("odd_zero_search: dim must be >= 2");

    std::size_t c = f(restart_point(dim, 0, cfg.seed ^ 0x5151)).size();
    if (c > static_cast<std::size_t>(dim - 1))
        throw BudgetExceeded("odd_zero_search: " + std::to_string(c) +
                             " components exceed the antipodal budget c <= d-1 = " +
                             std::to_string(dim - 1));
    for (int i = 0; i < 10 && c > 0; ++i) {
        Vec x = restart_point(dim, i, cfg.seed ^ 0xabcdef);
        Vec fx = f(x);
        Vec fnx = f(negated(x));
        double worst = 0.0;
        for (std::size_t j = 0; j < fx.size(); ++j)
            worst = std::max(worst, std::abs(fx[j] + fnx[j]));
        if (worst > 1e-9 * std::max(1.0, max_abs(fx)))
            throw NotOddError("odd_zero_search: f(-x) != -f(x), spot-check error " +
                              std::to_string(worst));
    }

    EvalFn eval = [&](std::span<const double> x) {
        Vec fx = f(x);
        Eval e;
        e.merit = 0.0;
        e.residual = 0.0;
        for (double v : fx) {
            e.merit += v * v;
            e.residual = std::max(e.residual, std::abs(v));
        }
        e.ok = e.residual <= cfg.tol;
        return e;
    };
    FeasibleFn feasible = [](std::span<const double>) { return true; };
    auto start = [&](int r) { return restart_point(dim, r, cfg.seed); };
    return multistart(dim, eval, feasible, start, cfg).result;
}

SearchResult i_odd_zero_search(int dim, const VectorField& f, const SearchConfig& cfg) {
    cfg.validate();
    if (dim < 2 || dim % 2 != 0)
        throw ValidationError("i_odd_zero_search: dim must be even and >= 2");

    std::size_t c = f(restart_point(dim, 0, cfg.seed ^ 0x5151)).size();
    if (c > static_cast<std::size_t>(dim - 1))
        throw BudgetExceeded("i_odd_zero_search: " + std::to_string(c) +
                             " components exceed the budget c <= 2n-1 = " +
                             std::to_string(dim - 1));
    const Complex unit_i(0.0, 1.0);
    for (int i = 0; i < 10 && c > 0; ++i) {
        Vec x = restart_point(dim, i, cfg.seed ^ 0xabcdef);
        Vec fx = f(x);
        Vec fix = f(complex_scaled(x, unit_i));
        double worst = 0.0;
        for (std::size_t j = 0; j < fx.size(); ++j)
            worst = std::max(worst, std::abs(fx[j] + fix[j]));
        if (worst > 1e-9 * std::max(1.0, max_abs(fx)))
            throw NotEquivariantError("i_odd_zero_search: f(ix) != -f(x), spot-check error " +
                                      std::to_string(worst));
    }

    EvalFn eval = [&](std::span<const double> x) {
        Vec fx = f(x);
        Eval e;
        e.merit = 0.0;
        e.residual = 0.0;
        for (double v : fx) {
            e.merit += v * v;
            e.residual = std::max(e.residual, std::abs(v));
        }
        e.ok = e.residual <= cfg.tol;
        return e;
    };
    FeasibleFn feasible = [](std::span<const double>) { return true; };
    auto start = [&](int r) { return restart_point(dim, r, cfg.seed); };
    return multistart(dim, eval, feasible, start, cfg).result;
}

namespace {

// Push a start point out of the guarded neighborhood, keeping it on the sphere.
Vec guard_adjusted(Vec x, const OrbitGuard& g) {
    if (!g.active) return x;
    std::span<double> block(x.data() + g.block_begin, x.size() - g.block_begin);
    double bn = norm(block);
    double target = std::min(0.5, 4.0 * g.delta);
    if (bn >= target) return x;
    double head2 = 0.0;
    for (std::size_t i = 0; i < g.block_begin; ++i) head2 += x[i] * x[i];
    if (bn == 0.0) {
        block[0] = target;
        for (std::size_t i = 1; i < block.size(); ++i) block[i] = 0.0;
    } else {
        for (double& v : block) v *= target / bn;
    }
    double head_scale = (head2 > 0.0) ? std::sqrt((1.0 - target * target) / head2) : 0.0;
    for (std::size_t i = 0; i < g.block_begin; ++i) x[i] *= head_scale;
    return normalized(x);
}

}  // namespace

SearchResult orbit_coincidence_search(int dim, int q, const VectorField& f,
                                      const SearchConfig& cfg, const OrbitGuard& guard) {
    cfg.validate();
    if (!is_odd_prime(q))
        throw ValidationError("orbit_coincidence_search: q must be an odd prime, got " +
                              std::to_string(q));
    if (dim < 4 || dim % 2 != 0)
        throw ValidationError("orbit_coincidence_search: dim must be even and >= 4");

    std::size_t c = f(guard_adjusted(restart_point(dim, 0, cfg.seed ^ 0x5151), guard)).size();
    std::size_t budget = static_cast<std::size_t>((dim - 2) / (q - 1));
    if (c > budget)
        throw BudgetExceeded("orbit_coincidence_search: " + std::to_string(c) +
                             " components exceed the equivariant test-map budget c <= floor((d-2)/(q-1)) = " +
                             std::to_string(budget));

    std::vector<Complex> rot(static_cast<std::size_t>(q));
    for (int j = 0; j < q; ++j) {
        double ang = 2.0 * std::numbers::pi * j / q;
        rot[static_cast<std::size_t>(j)] = Complex(std::cos(ang), std::sin(ang));
    }

    EvalFn eval = [&](std::span<const double> u) {
        std::vector<Vec> vals(static_cast<std::size_t>(q));
        vals[0] = f(u);
        for (int j = 1; j < q; ++j)
            vals[static_cast<std::size_t>(j)] = f(complex_scaled(u, rot[static_cast<std::size_t>(j)]));
        Eval e;
        e.merit = 0.0;
        e.residual = 0.0;
        for (std::size_t i = 0; i < vals[0].size(); ++i) {
            double mean = 0.0;
            for (int j = 0; j < q; ++j) mean += vals[static_cast<std::size_t>(j)][i];
            mean /= q;
            for (int j = 0; j < q; ++j) {
                double dlt = vals[static_cast<std::size_t>(j)][i] - mean;
                e.merit += dlt * dlt;
                e.residual = std::max(e.residual,
                                      std::abs(vals[static_cast<std::size_t>(j)][i] - vals[0][i]));
            }
        }
        e.ok = e.residual <= cfg.tol;
        return e;
    };
    FeasibleFn feasible = [&](std::span<const double> u) {
        if (!guard.active) return true;
        std::span<const double> block(u.data() + guard.block_begin, u.size() - guard.block_begin);
        return norm(block) >= guard.delta;
    };
    auto start = [&](int r) { return guard_adjusted(restart_point(dim, r, cfg.seed), guard); };

    MultistartOutcome out = multistart(dim, eval, feasible, start, cfg);
    if (guard.active && !out.result.converged) {
        bool all_degenerate = !out.final_points.empty();
        for (const Vec& x : out.final_points) {
            std::span<const double> block(x.data() + guard.block_begin,
                                          x.size() - guard.block_begin);
            if (norm(block) > 1.2 * guard.delta) {
                all_degenerate = false;
                break;
            }
        }
        if (all_degenerate)
            throw DegenerateRegion(
                "orbit_coincidence_search: every restart was attracted to the degenerate circle "
                "(guarded block norm stuck at the guard radius)");
    }
    return out.result;
}

// ---------------------------------------------------------------------------
// Drivers
// ---------------------------------------------------------------------------

namespace {

Complex complex_pow(Complex z, int e) {
    Complex out(1.0, 0.0);
    for (int i = 0; i < e; ++i) out *= z;
    return out;
}

std::vector<double> orbit_residual_diagnostics(int q, const std::vector<Vec>& orbit_vals) {
    std::vector<double> out;
    if (orbit_vals.empty()) return out;
    for (std::size_t i = 0; i < orbit_vals[0].size(); ++i) {
        for (int r = 1; r <= (q - 1) / 2; ++r) {
            Complex acc(0.0, 0.0);
            for (int j = 0; j < q; ++j) {
                double ang = -2.0 * std::numbers::pi * j * r / q;
                acc += Complex(std::cos(ang), std::sin(ang)) *
                       orbit_vals[static_cast<std::size_t>(j)][i];
            }
            out.push_back(std::abs(acc));
        }
    }
    return out;
}

void check_measures_consistent(const std::vector<MassDistribution>& measures) {
    if (measures.empty()) throw ValidationError("at least one measure is required");
    for (const MassDistribution& mu : measures)
        if (mu.dim != measures[0].dim)
            throw DimensionError("all measures must share one ambient dimension");
}

double hermitian_gram_error(const std::vector<Vec>& vectors) {
    double worst = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = 0; j < vectors.size(); ++j) {
            Complex g = hermitian_dot(vectors[i], vectors[j]);
            Complex want = (i == j) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
            worst = std::max(worst, std::abs(g - want));
        }
    return worst;
}

double real_gram_error(const std::vector<Vec>& vectors) {
    double worst = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = 0; j < vectors.size(); ++j) {
            double g = dot(vectors[i], vectors[j]);
            double want = (i == j) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(g - want));
        }
    return worst;
}

FrameSection section_for_fans(int dim, FanMode mode, int k) {
    if (mode == FanMode::complex_orthogonal) {
        if (k == 1) return FrameSection::make(FrameSection::Kind::identity, dim, 1);
        return FrameSection::make(FrameSection::Kind::quaternionic, dim, 2);
    }
    return FrameSection::make(FrameSection::Kind::radon_hurwitz, dim, k);
}

}  // namespace

std::vector<ComplexRegularQFan> fan_family_at(std::span<const double> u, int q,
                                              const FrameSection& section) {
    if (u.size() < 4 || u.size() % 2 != 0)
        throw DimensionError("fan_family_at: parameter point must lie in C^{t+1}, t >= 1");
    const std::size_t d = u.size();
    const int t = static_cast<int>(d / 2) - 1;
    std::span<const double> w(u.data() + 2, d - 2);
    double wn = norm(w);
    if (!(wn > 0.0))
        throw ValidationError("fan_family_at: parameter point lies on the degenerate circle");
    Vec what(w.begin(), w.end());
    for (double& v : what) v /= wn;
    Complex u0(u[0], u[1]);

    std::vector<Vec> frame = section.at(what);
    std::vector<ComplexRegularQFan> fans;
    for (std::size_t i = 0; i < frame.size(); ++i) {
        int r = section.exponent(static_cast<int>(i), q);
        Complex offset = -complex_pow(u0, r) / wn;
        fans.emplace_back(q, t, frame[i], offset);
    }
    return fans;
}

SolveReport bisect_orthogonal(const std::vector<MassDistribution>& measures, int k,
                              const SearchConfig& cfg) {
    cfg.validate();
    check_measures_consistent(measures);
    const int n = measures[0].dim;
    const int m = static_cast<int>(measures.size());
    if (k < 1) throw ValidationError("bisect_orthogonal: k must be >= 1");
    if (k > n - m + 1)
        throw KTooLarge("bisect_orthogonal: k=" + std::to_string(k) +
                        " exceeds the disjoint-balls upper bound Omega(2;m,n) <= n-m+1 = " +
                        std::to_string(n - m + 1));
    if (m >= 2 && static_cast<long>(k) * (m - 1) > n - 1)
        throw KTooLarge("bisect_orthogonal: k=" + std::to_string(k) +
                        " exceeds the coincidence bound k <= (n-1)/(m-1) = " +
                        std::to_string(n - 1) + "/" + std::to_string(m - 1) +
                        " from Omega_perp(2;m,n) >= min{rho(n), (n-1)/(m-1)}");
    const int rho = rh_rho(n);
    if (k > rho)
        throw KTooLarge("bisect_orthogonal: k=" + std::to_string(k) +
                        " exceeds the frame bound rho(" + std::to_string(n) +
                        ") = " + std::to_string(rho));

    const AnticommutingFamily fam = rh_matrices(n);

    auto planes_at = [&](std::span<const double> x) {
        std::vector<Vec> frame = frame_at(x, fam, k);
        std::vector<Hyperplane> planes;
        planes.reserve(frame.size());
        for (Vec& s : frame) {
            double t = level_offset(measures[0], s);
            planes.emplace_back(std::move(s), t);
        }
        return planes;
    };

    SearchResult sr;
    if (m == 1) {
        // No free constraints: any sphere point works.
        sr.witness = restart_point(n, 0, cfg.seed);
        sr.converged = true;
        sr.restarts_used = 1;
    } else {
        VectorField f = [&](std::span<const double> x) {
            std::vector<Hyperplane> planes = planes_at(x);
            Vec comps;
            comps.reserve(static_cast<std::size_t>(k) * (static_cast<std::size_t>(m) - 1));
            for (int l = 1; l < m; ++l)
                for (const Hyperplane& h : planes)
                    comps.push_back(halfspace_measure(measures[static_cast<std::size_t>(l)], h,
                                                      Side::plus) /
                                        measures[static_cast<std::size_t>(l)].total -
                                    0.5);
            return comps;
        };
        SearchConfig inner = cfg;
        sr = odd_zero_search(n, f, inner);
    }

    SolveReport rep;
    rep.kind = "bisect";
    rep.q = 2;
    rep.dim = n;
    rep.witness = sr.witness;
    rep.hyperplanes = planes_at(sr.witness);
    rep.iterations = sr.iterations;
    rep.restarts_used = sr.restarts_used;
    rep.tol = cfg.tol;
    rep.seed = cfg.seed;
    for (const MassDistribution& mu : measures) {
        rep.measure_totals.push_back(mu.total);
        std::vector<std::vector<double>> per_plane;
        for (const Hyperplane& h : rep.hyperplanes)
            per_plane.push_back(
                {halfspace_measure(mu, h, Side::plus), halfspace_measure(mu, h, Side::minus)});
        rep.masses.push_back(std::move(per_plane));
    }
    rep.defect = report_defect(rep, rep.masses, rep.measure_totals);
    rep.converged = rep.defect <= cfg.tol;
    {
        std::vector<Vec> normals;
        for (const Hyperplane& h : rep.hyperplanes) normals.push_back(h.normal);
        rep.frame_gram_error = real_gram_error(normals);
    }
    return rep;
}

SolveReport equipartition_fans(const std::vector<MassDistribution>& measures, int q,
                               FanMode mode, int k, const SearchConfig& cfg) {
    cfg.validate();
    check_measures_consistent(measures);
    if (!is_odd_prime(q))
        throw ValidationError("equipartition_fans: q must be an odd prime (q=" +
                              std::to_string(q) + "); use the regular 4-fan driver for q=4");
    const int n = measures[0].dim;
    if (n % 2 != 0 || n < 2)
        throw DimensionError("equipartition_fans: measures must live in R^{2t}");
    const int t = n / 2;
    const int m = static_cast<int>(measures.size());
    if (k < 1) throw ValidationError("equipartition_fans: k must be >= 1");
    if (k > (n - m + 1) / 2)
        throw KTooLarge("equipartition_fans: k=" + std::to_string(k) +
                        " exceeds the disjoint-balls upper bound Omega(q;m,n) <= floor((n-m+1)/2) = " +
                        std::to_string((n - m + 1) / 2));
    if (mode == FanMode::complex_orthogonal) {
        if (k > 2)
            throw KTooLarge("equipartition_fans: only complex 2-frames are constructible; "
                            "complex_orthogonal mode needs k <= 2");
        if (k == 2 && t % 2 != 0)
            throw KTooLarge("equipartition_fans: the quaternionic 2-frame needs half_dim t even, "
                            "got t = " + std::to_string(t));
    } else {
        if (k > rh_rho(n))
            throw KTooLarge("equipartition_fans: k=" + std::to_string(k) +
                            " exceeds the frame bound rho(" + std::to_string(n) +
                            ") = " + std::to_string(rh_rho(n)));
    }
    if (static_cast<long>(k) * m > t * 2 / (q - 1))
        throw BudgetExceeded("equipartition_fans: k*m = " + std::to_string(k * m) +
                             " exceeds the equivariant test-map budget floor(2t/(q-1)) = " +
                             std::to_string(2 * t / (q - 1)));

    const FrameSection section = section_for_fans(n, mode, k);
    const int D = n + 2;  // search sphere ambient dimension

    VectorField f = [&](std::span<const double> u) {
        std::vector<ComplexRegularQFan> fans = fan_family_at(u, q, section);
        Vec comps;
        comps.reserve(static_cast<std::size_t>(k) * static_cast<std::size_t>(m));
        for (const MassDistribution& mu : measures)
            for (const ComplexRegularQFan& fan : fans)
                comps.push_back(sector_measures(mu, fan)[0] / mu.total);
        return comps;
    };
    OrbitGuard guard{true, cfg.degenerate_guard, 2};

    SearchResult sr = orbit_coincidence_search(D, q, f, cfg, guard);

    SolveReport rep;
    rep.kind = "fan";
    rep.q = q;
    rep.dim = n;
    rep.mode = (mode == FanMode::complex_orthogonal) ? "complex_orthogonal" : "real_independent";
    rep.witness = sr.witness;
    rep.fans = fan_family_at(sr.witness, q, section);
    rep.iterations = sr.iterations;
    rep.restarts_used = sr.restarts_used;
    rep.tol = cfg.tol;
    rep.seed = cfg.seed;
    for (const MassDistribution& mu : measures) {
        rep.measure_totals.push_back(mu.total);
        std::vector<std::vector<double>> per_fan;
        for (const ComplexRegularQFan& fan : rep.fans) per_fan.push_back(sector_measures(mu, fan));
        rep.masses.push_back(std::move(per_fan));
    }
    rep.defect = report_defect(rep, rep.masses, rep.measure_totals);
    rep.converged = rep.defect <= cfg.tol;

    std::vector<Vec> normals;
    for (const ComplexRegularQFan& fan : rep.fans) normals.push_back(fan.normal);
    if (mode == FanMode::complex_orthogonal) {
        rep.frame_gram_error = hermitian_gram_error(normals);
        rep.independent_fans.resize(normals.size());
        for (std::size_t i = 0; i < normals.size(); ++i) rep.independent_fans[i] = i;
    } else {
        rep.frame_gram_error = real_gram_error(normals);
        rep.independent_fans = extract_complex_independent(normals);
    }

    {
        std::vector<Complex> rot(static_cast<std::size_t>(q));
        for (int j = 0; j < q; ++j) {
            double ang = 2.0 * std::numbers::pi * j / q;
            rot[static_cast<std::size_t>(j)] = Complex(std::cos(ang), std::sin(ang));
        }
        std::vector<Vec> orbit_vals;
        for (int j = 0; j < q; ++j)
            orbit_vals.push_back(f(complex_scaled(rep.witness, rot[static_cast<std::size_t>(j)])));
        rep.orbit_residuals = orbit_residual_diagnostics(q, orbit_vals);
    }
    return rep;
}

namespace {

// Regular 4-fan attached to one frame vector: the two levelled orthogonal
// hyperplanes with normals s and J s become the complex fan
// F_4(s, t0 - i t1) whose sectors are the four quadrants around the center.
ComplexRegularQFan fourfan_for(const MassDistribution& mu, const Vec& s) {
    Vec js = complex_scaled(s, Complex(0.0, 1.0));
    double t0 = level_offset(mu, s);
    double t1 = level_offset(mu, js);
    return ComplexRegularQFan(4, static_cast<int>(s.size()) / 2, s, Complex(t0, -t1));
}

}  // namespace

std::vector<double> fan_quadrant_masses(const MassDistribution& mu,
                                        const ComplexRegularQFan& fan) {
    if (fan.arity != 4)
        throw ValidationError("fan_quadrant_masses: the quadrant convention is for 4-fans");
    if (mu.dim != fan.dim()) throw DimensionError("fan_quadrant_masses: dimension mismatch");
    const Vec& n0 = fan.normal;
    Vec n1 = complex_scaled(n0, Complex(0.0, 1.0));
    const double t0 = fan.offset.real();
    const double t1 = -fan.offset.imag();
    const double eps = mu.bandwidth;
    std::vector<double> masses(4, 0.0);
    for (std::size_t p = 0; p < mu.size(); ++p) {
        double s0 = dot(mu.point(p), n0) - t0;
        double s1 = dot(mu.point(p), n1) - t1;
        double a0, a1;
        if (eps > 0.0) {
            a0 = logistic(s0 / eps);
            a1 = logistic(s1 / eps);
        } else {
            a0 = (s0 == 0.0) ? 0.5 : (s0 > 0.0 ? 1.0 : 0.0);
            a1 = (s1 == 0.0) ? 0.5 : (s1 > 0.0 ? 1.0 : 0.0);
        }
        double w = mu.weights[p];
        masses[0] += w * a0 * a1;
        masses[1] += w * (1.0 - a0) * a1;
        masses[2] += w * (1.0 - a0) * (1.0 - a1);
        masses[3] += w * a0 * (1.0 - a1);
    }
    return masses;
}

SolveReport equipartition_fourfans(const MassDistribution& mu, FanMode mode, int k,
                                   const SearchConfig& cfg) {
    cfg.validate();
    const int dim = mu.dim;
    if (dim % 2 != 0 || dim < 2)
        throw DimensionError("equipartition_fourfans: the measure must live in R^{2n}");
    const int n = dim / 2;
    if (k < 1) throw ValidationError("equipartition_fourfans: k must be >= 1");
    if (k > dim / 2)
        throw KTooLarge("equipartition_fourfans: k=" + std::to_string(k) +
                        " exceeds the disjoint-balls upper bound Omega(4;1,n) <= floor(n/2) = " +
                        std::to_string(dim / 2));
    if (k > 2 * n - 1)
        throw KTooLarge("equipartition_fourfans: k=" + std::to_string(k) +
                        " exceeds the zero-search budget k <= 2n-1 = " + std::to_string(2 * n - 1));
    if (mode == FanMode::complex_orthogonal) {
        if (k > 2)
            throw KTooLarge("equipartition_fourfans: complex_orthogonal mode needs k <= 2 "
                            "(only complex 2-frames are constructible)");
        if (k == 2 && n % 2 != 0)
            throw KTooLarge("equipartition_fourfans: the quaternionic 2-frame needs n even, got n = " +
                            std::to_string(n));
    } else {
        if (k > rh_rho(dim))
            throw KTooLarge("equipartition_fourfans: k=" + std::to_string(k) +
                            " exceeds the frame bound rho(" + std::to_string(dim) +
                            ") = " + std::to_string(rh_rho(dim)));
    }

    const FrameSection section = section_for_fans(dim, mode, k);

    auto fans_at = [&](std::span<const double> x) {
        std::vector<Vec> frame = section.at(x);
        std::vector<ComplexRegularQFan> fans;
        fans.reserve(frame.size());
        for (const Vec& s : frame) fans.push_back(fourfan_for(mu, s));
        return fans;
    };

    VectorField f = [&](std::span<const double> x) {
        std::vector<ComplexRegularQFan> fans = fans_at(x);
        Vec comps;
        comps.reserve(fans.size());
        for (const ComplexRegularQFan& fan : fans) {
            std::vector<double> masses = fan_quadrant_masses(mu, fan);
            comps.push_back((masses[1] - masses[2]) / mu.total);
        }
        return comps;
    };

    SearchResult sr = i_odd_zero_search(dim, f, cfg);

    SolveReport rep;
    rep.kind = "fourfan";
    rep.q = 4;
    rep.dim = dim;
    rep.mode = (mode == FanMode::complex_orthogonal) ? "complex_orthogonal" : "real_independent";
    rep.witness = sr.witness;
    rep.fans = fans_at(sr.witness);
    rep.iterations = sr.iterations;
    rep.restarts_used = sr.restarts_used;
    rep.tol = cfg.tol;
    rep.seed = cfg.seed;
    rep.measure_totals = {mu.total};
    {
        std::vector<std::vector<double>> per_fan;
        for (const ComplexRegularQFan& fan : rep.fans)
            per_fan.push_back(fan_quadrant_masses(mu, fan));
        rep.masses.push_back(std::move(per_fan));
    }
    rep.defect = report_defect(rep, rep.masses, rep.measure_totals);
    rep.converged = rep.defect <= cfg.tol;

    std::vector<Vec> normals;
    for (const ComplexRegularQFan& fan : rep.fans) normals.push_back(fan.normal);
    if (mode == FanMode::complex_orthogonal) {
        rep.frame_gram_error = hermitian_gram_error(normals);
        rep.independent_fans.resize(normals.size());
        for (std::size_t i = 0; i < normals.size(); ++i) rep.independent_fans[i] = i;
    } else {
        rep.frame_gram_error = real_gram_error(normals);
        rep.independent_fans = extract_complex_independent(normals);
    }
    return rep;
}

std::vector<double> sector_masses_2q(const MassDistribution& mu,
                                     const std::vector<Hyperplane>& planes) {
    const int q = static_cast<int>(planes.size());
    const int two_q = 2 * q;
    std::vector<double> masses(static_cast<std::size_t>(two_q), 0.0);
    const double eps = mu.bandwidth;
    std::vector<double> a(static_cast<std::size_t>(two_q));
    for (std::size_t p = 0; p < mu.size(); ++p) {
        for (int r = 0; r < q; ++r) {
            double s = dot(mu.point(p), planes[static_cast<std::size_t>(r)].normal) -
                       planes[static_cast<std::size_t>(r)].offset;
            double plus;
            if (eps > 0.0)
                plus = logistic(s / eps);
            else
                plus = (s == 0.0) ? 0.5 : (s > 0.0 ? 1.0 : 0.0);
            a[static_cast<std::size_t>(r)] = plus;
            a[static_cast<std::size_t>(r + q)] = 1.0 - plus;
        }
        for (int s = 0; s < two_q; ++s) {
            double member = (1.0 - a[static_cast<std::size_t>(s)]) *
                            a[static_cast<std::size_t>((s + 1) % two_q)];
            masses[static_cast<std::size_t>(s)] += mu.weights[p] * member;
        }
    }
    return masses;
}

double overlap_mass_2q(const MassDistribution& mu, const std::vector<Hyperplane>& planes) {
    const int q = static_cast<int>(planes.size());
    const double eps = mu.bandwidth;
    double mass = 0.0;
    for (std::size_t p = 0; p < mu.size(); ++p) {
        double even = 1.0, odd = 1.0;
        for (int r = 0; r < q; ++r) {
            double s = dot(mu.point(p), planes[static_cast<std::size_t>(r)].normal) -
                       planes[static_cast<std::size_t>(r)].offset;
            double plus;
            if (eps > 0.0)
                plus = logistic(s / eps);
            else
                plus = (s == 0.0) ? 0.5 : (s > 0.0 ? 1.0 : 0.0);
            if (r % 2 == 0) {
                even *= 1.0 - plus;
                odd *= plus;
            } else {
                even *= plus;
                odd *= 1.0 - plus;
            }
        }
        mass += mu.weights[p] * (even + odd);
    }
    return mass;
}

SolveReport near_equipartition_2q(const MassDistribution& mu, int q, const SearchConfig& cfg) {
    cfg.validate();
    if (!is_odd_prime(q))
        throw ValidationError("near_equipartition_2q: q must be an odd prime, got " +
                              std::to_string(q));
    const int dim = mu.dim;
    if (dim % 2 != 0)
        throw DimensionError("near_equipartition_2q: the measure must live in R^{2n}");
    if (dim < q + 1)
        throw DimensionTooSmall("near_equipartition_2q: the construction needs dimension >= q+1 = " +
                                std::to_string(q + 1) + ", got " + std::to_string(dim));

    auto planes_at = [&](std::span<const double> x) {
        std::vector<Hyperplane> planes;
        planes.reserve(static_cast<std::size_t>(q));
        for (int r = 0; r < q; ++r) {
            double ang = std::numbers::pi * r / q;
            Vec d = complex_scaled(x, Complex(std::cos(ang), std::sin(ang)));
            d = normalized(d);
            double t = level_offset(mu, d);
            planes.emplace_back(std::move(d), t);
        }
        return planes;
    };

    VectorField f = [&](std::span<const double> x) {
        // mass of S_0(x) only: the sector below plane 0 and above plane 1
        double ang = std::numbers::pi / q;
        Vec d0 = normalized(x);
        Vec d1 = normalized(complex_scaled(x, Complex(std::cos(ang), std::sin(ang))));
        double t0 = level_offset(mu, d0);
        double t1 = level_offset(mu, d1);
        const double eps = mu.bandwidth;
        double mass = 0.0;
        for (std::size_t p = 0; p < mu.size(); ++p) {
            double s0 = dot(mu.point(p), d0) - t0;
            double s1 = dot(mu.point(p), d1) - t1;
            double a0, a1;
            if (eps > 0.0) {
                a0 = logistic(s0 / eps);
                a1 = logistic(s1 / eps);
            } else {
                a0 = (s0 == 0.0) ? 0.5 : (s0 > 0.0 ? 1.0 : 0.0);
                a1 = (s1 == 0.0) ? 0.5 : (s1 > 0.0 ? 1.0 : 0.0);
            }
            mass += mu.weights[p] * (1.0 - a0) * a1;
        }
        return Vec{mass / mu.total};
    };

    OrbitGuard guard;  // the coincidence statement holds on the whole sphere here
    SearchResult sr = orbit_coincidence_search(dim, q, f, cfg, guard);

    SolveReport rep;
    rep.kind = "sectors2q";
    rep.q = q;
    rep.dim = dim;
    rep.witness = sr.witness;
    rep.hyperplanes = planes_at(sr.witness);
    rep.iterations = sr.iterations;
    rep.restarts_used = sr.restarts_used;
    rep.tol = cfg.tol;
    rep.seed = cfg.seed;
    rep.measure_totals = {mu.total};
    rep.masses = {{sector_masses_2q(mu, rep.hyperplanes)}};
    rep.defect = report_defect(rep, rep.masses, rep.measure_totals);
    rep.converged = rep.defect <= cfg.tol;
    rep.overlap_mass = overlap_mass_2q(mu, rep.hyperplanes);
    {
        const std::vector<double>& masses = rep.masses[0][0];
        double mean = 0.0;
        for (double v : masses) mean += v;
        mean /= static_cast<double>(masses.size());
        double expected = mu.total / (2.0 * q) + rep.overlap_mass * (q - 1.0) / (2.0 * q);
        rep.overlap_identity_residual = std::abs(mean - expected) / mu.total;
    }
    {
        std::vector<Vec> orbit_vals;
        for (int j = 0; j < q; ++j) {
            double ang = 2.0 * std::numbers::pi * j / q;
            orbit_vals.push_back(
                f(complex_scaled(rep.witness, Complex(std::cos(ang), std::sin(ang)))));
        }
        rep.orbit_residuals = orbit_residual_diagnostics(q, orbit_vals);
    }
    return rep;
}

std::vector<std::vector<std::vector<double>>> recompute_masses(
    const SolveReport& report, const std::vector<MassDistribution>& measures) {
    std::vector<std::vector<std::vector<double>>> out;
    for (const MassDistribution& mu : measures) {
        std::vector<std::vector<double>> per_part;
        if (report.kind == "bisect") {
            for (const Hyperplane& h : report.hyperplanes)
                per_part.push_back(
                    {halfspace_measure(mu, h, Side::plus), halfspace_measure(mu, h, Side::minus)});
        } else if (report.kind == "sectors2q") {
            per_part.push_back(sector_masses_2q(mu, report.hyperplanes));
        } else if (report.kind == "fourfan") {
            for (const ComplexRegularQFan& fan : report.fans)
                per_part.push_back(fan_quadrant_masses(mu, fan));
        } else {
            for (const ComplexRegularQFan& fan : report.fans)
                per_part.push_back(sector_measures(mu, fan));
        }
        out.push_back(std::move(per_part));
    }
    return out;
}

double report_defect(const SolveReport& report,
                     const std::vector<std::vector<std::vector<double>>>& masses,
                     const std::vector<double>& totals) {
    double worst = 0.0;
    for (std::size_t l = 0; l < masses.size(); ++l) {
        for (const std::vector<double>& sector_masses : masses[l]) {
            if (report.kind == "sectors2q") {
                double mean = 0.0;
                for (double v : sector_masses) mean += v;
                mean /= static_cast<double>(sector_masses.size());
                for (double v : sector_masses)
                    worst = std::max(worst, std::abs(v - mean) / totals[l]);
            } else {
                double target = 1.0 / static_cast<double>(sector_masses.size());
                for (double v : sector_masses)
                    worst = std::max(worst, std::abs(v / totals[l] - target));
            }
        }
    }
    return worst;
}

}  // namespace equipart
