#include "equipart/frames.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "equipart/errors.hpp"

namespace equipart {

SquareMatrix SquareMatrix::identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

SquareMatrix mat_mul(const SquareMatrix& x, const SquareMatrix& y) {
    SquareMatrix out(x.n);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t k = 0; k < x.n; ++k) {
            double v = x.at(i, k);
            if (v == 0.0) continue;
            for (std::size_t j = 0; j < x.n; ++j) out.at(i, j) += v * y.at(k, j);
        }
    return out;
}

SquareMatrix mat_transpose(const SquareMatrix& x) {
    SquareMatrix out(x.n);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t j = 0; j < x.n; ++j) out.at(j, i) = x.at(i, j);
    return out;
}

double mat_max_abs_diff(const SquareMatrix& x, const SquareMatrix& y) {
    double worst = 0.0;
    for (std::size_t i = 0; i < x.a.size(); ++i)
        worst = std::max(worst, std::abs(x.a[i] - y.a[i]));
    return worst;
}

Vec mat_apply(const SquareMatrix& x, std::span<const double> v) {
    Vec out(x.n, 0.0);
    for (std::size_t i = 0; i < x.n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < x.n; ++j) s += x.at(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

int rh_rho(int n) {
    if (n < 1) throw ValidationError("rh_rho: n must be >= 1");
    int c = std::countr_zero(static_cast<unsigned>(n));
    int a = c % 4;
    int b = c / 4;
    return (1 << a) + 8 * b;
}

namespace {

struct Quat {
    double w = 0, x = 0, y = 0, z = 0;
};

Quat qmul(const Quat& a, const Quat& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Quat qconj(const Quat& a) { return {a.w, -a.x, -a.y, -a.z}; }
Quat qadd(const Quat& a, const Quat& b) { return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z}; }
Quat qsub(const Quat& a, const Quat& b) { return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z}; }

// Cayley-Dickson pair of quaternions.
struct Oct {
    Quat p, q;
};

Oct omul(const Oct& a, const Oct& b) {
    return {qsub(qmul(a.p, b.p), qmul(qconj(b.q), a.q)),
            qadd(qmul(b.q, a.p), qmul(a.q, qconj(b.p)))};
}

std::array<double, 8> ovec(const Oct& o) {
    return {o.p.w, o.p.x, o.p.y, o.p.z, o.q.w, o.q.x, o.q.y, o.q.z};
}

SquareMatrix j2() {
    SquareMatrix m(2);
    m.at(0, 1) = -1.0;
    m.at(1, 0) = 1.0;
    return m;
}

// Left multiplications by i, j, k in the basis (1, i, j, k).
std::vector<SquareMatrix> quaternion_family() {
    const Quat units[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    std::vector<SquareMatrix> fam;
    for (int u = 1; u < 4; ++u) {
        SquareMatrix m(4);
        for (int s = 0; s < 4; ++s) {
            Quat prod = qmul(units[u], units[s]);
            double col[4] = {prod.w, prod.x, prod.y, prod.z};
            for (int r = 0; r < 4; ++r) m.at(static_cast<std::size_t>(r), static_cast<std::size_t>(s)) = col[r];
        }
        fam.push_back(std::move(m));
    }
    return fam;
}

// Octonion left multiplications by the seven imaginary basis units, in a basis
// ordered so the unit "i" acts as the interleaved complex structure.
std::vector<SquareMatrix> octonion_family() {
    const Quat q1{1, 0, 0, 0}, qi{0, 1, 0, 0}, qj{0, 0, 1, 0}, qk{0, 0, 0, 1};
    const Quat q0{};
    const Quat qk_neg{0, 0, 0, -1};
    const Oct basis[8] = {{q1, q0}, {qi, q0}, {qj, q0}, {qk, q0},
                          {q0, q1}, {q0, qi}, {q0, qj}, {q0, qk_neg}};
    std::vector<SquareMatrix> fam;
    for (int u = 1; u < 8; ++u) {
        SquareMatrix m(8);
        for (int s = 0; s < 8; ++s) {
            auto col = ovec(omul(basis[u], basis[s]));
            for (int r = 0; r < 8; ++r) {
                auto br = ovec(basis[r]);
                double coef = 0.0;
                for (int t = 0; t < 8; ++t) coef += col[static_cast<std::size_t>(t)] * br[static_cast<std::size_t>(t)];
                m.at(static_cast<std::size_t>(r), static_cast<std::size_t>(s)) = coef;
            }
        }
        fam.push_back(std::move(m));
    }
    return fam;
}

// Kronecker product with the second factor innermost, so block structure along
// the inner factor is preserved: out[(o*ni+i),(o'*ni+i')] = X[o,o'] * Y[i,i'].
SquareMatrix kron(const SquareMatrix& outer, const SquareMatrix& inner) {
    SquareMatrix out(outer.n * inner.n);
    for (std::size_t o = 0; o < outer.n; ++o)
        for (std::size_t op = 0; op < outer.n; ++op) {
            double v = outer.at(o, op);
            if (v == 0.0) continue;
            for (std::size_t i = 0; i < inner.n; ++i)
                for (std::size_t ip = 0; ip < inner.n; ++ip)
                    out.at(o * inner.n + i, op * inner.n + ip) = v * inner.at(i, ip);
        }
    return out;
}

// R^d -> R^{2d} doubling: {I (x) J} u {A_i (x) diag(1,-1)} gains one matrix
// and keeps the interleaved complex structure as the first element.
std::vector<SquareMatrix> double_family(const std::vector<SquareMatrix>& fam, std::size_t d) {
    SquareMatrix d2(2);
    d2.at(0, 0) = 1.0;
    d2.at(1, 1) = -1.0;
    std::vector<SquareMatrix> out;
    out.push_back(kron(SquareMatrix::identity(d), j2()));
    for (const SquareMatrix& a : fam) out.push_back(kron(a, d2));
    return out;
}

// Family on R^{2^c} of size rho(2^c) - 1. Base cases are the division algebra
// multiplications; c >= 4 uses the period-8 step R^{2^c} = R^{2^(c-4)} (x) R^16
// with the volume element of the 16-dimensional family.
std::vector<SquareMatrix> pow2_family(int c) {
    if (c == 0) return {};
    if (c == 1) return {j2()};
    if (c == 2) return quaternion_family();
    if (c == 3) return octonion_family();

    std::vector<SquareMatrix> base16 = double_family(octonion_family(), 8);
    SquareMatrix omega = base16[0];
    for (std::size_t i = 1; i < base16.size(); ++i) omega = mat_mul(omega, base16[i]);

    std::vector<SquareMatrix> small = pow2_family(c - 4);
    std::size_t outer_dim = std::size_t{1} << (c - 4);
    std::vector<SquareMatrix> out;
    for (const SquareMatrix& ci : base16)
        out.push_back(kron(SquareMatrix::identity(outer_dim), ci));
    for (const SquareMatrix& a : small) out.push_back(kron(a, omega));
    return out;
}

}  // namespace

AnticommutingFamily rh_matrices(int n) {
    if (n < 1) throw ValidationError("rh_matrices: n must be >= 1");
    int c = std::countr_zero(static_cast<unsigned>(n));
    std::size_t pow2 = std::size_t{1} << c;
    std::size_t m = static_cast<std::size_t>(n) / pow2;

    AnticommutingFamily fam;
    fam.dim = static_cast<std::size_t>(n);
    for (SquareMatrix& a : pow2_family(c)) {
        if (m == 1)
            fam.matrices.push_back(std::move(a));
        else
            fam.matrices.push_back(kron(SquareMatrix::identity(m), a));
    }
    return fam;
}

std::vector<Vec> frame_at(std::span<const double> x, const AnticommutingFamily& fam, int k) {
    if (x.size() != fam.dim) throw DimensionError("frame_at: point dimension does not match family");
    int rho = static_cast<int>(fam.matrices.size()) + 1;
    if (k < 1 || k > rho)
        throw FrameTooLong("frame_at: k=" + std::to_string(k) + " exceeds rho(" +
                           std::to_string(fam.dim) + ")=" + std::to_string(rho));
    if (std::abs(norm(x) - 1.0) > 1e-9)
        throw ValidationError("frame_at: x must be a unit vector");
    std::vector<Vec> frame;
    frame.emplace_back(x.begin(), x.end());
    for (int i = 1; i < k; ++i)
        frame.push_back(mat_apply(fam.matrices[static_cast<std::size_t>(i - 1)], x));
    return frame;
}

Vec quaternion_j_apply(std::span<const double> x) {
    if (x.size() % 4 != 0)
        throw DimensionError("quaternion action needs a real dimension divisible by 4");
    Vec out(x.size());
    for (std::size_t b = 0; b < x.size(); b += 4) {
        // j * (a + bi + cj + dk) = -c + di + aj - bk
        out[b] = -x[b + 2];
        out[b + 1] = x[b + 3];
        out[b + 2] = x[b];
        out[b + 3] = -x[b + 1];
    }
    return out;
}

std::pair<Vec, Vec> quaternion_frame(std::span<const double> x) {
    if (std::abs(norm(x) - 1.0) > 1e-9)
        throw ValidationError("quaternion_frame: x must be a unit vector");
    return {Vec(x.begin(), x.end()), quaternion_j_apply(x)};
}

namespace {

// Gram-Schmidt rank with a relative tolerance; basis entries are kept
// orthonormal. Works over R (stride 1 view) and over C via the caller.
bool gs_accept_real(std::vector<Vec>& basis, std::span<const double> v, double tol) {
    Vec r(v.begin(), v.end());
    double orig = norm(v);
    for (const Vec& b : basis) {
        double c = dot(r, b);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * b[i];
    }
    if (norm(r) <= tol * std::max(orig, 1e-300)) return false;
    basis.push_back(normalized(r));
    return true;
}

bool gs_accept_complex(std::vector<Vec>& basis, std::span<const double> v, double tol) {
    Vec r(v.begin(), v.end());
    double orig = norm(v);
    for (const Vec& b : basis) {
        Complex c = hermitian_dot(r, b);
        Vec cb = complex_scaled(b, c);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= cb[i];
    }
    if (norm(r) <= tol * std::max(orig, 1e-300)) return false;
    basis.push_back(normalized(r));
    return true;
}

}  // namespace

std::vector<std::size_t> extract_complex_independent(const std::vector<Vec>& vectors) {
    constexpr double tol = 1e-8;
    if (vectors.empty()) return {};
    std::size_t d = vectors[0].size();
    if (d % 2 != 0)
        throw DimensionError("extract_complex_independent: ambient dimension must be even");
    for (const Vec& v : vectors)
        if (v.size() != d) throw DimensionError("extract_complex_independent: mixed dimensions");

    std::vector<Vec> rbasis;
    for (const Vec& v : vectors)
        if (!gs_accept_real(rbasis, v, tol))
            throw NotIndependentError(
                "extract_complex_independent: inputs are not linearly independent over R");

    std::size_t want = (vectors.size() + 1) / 2;
    std::vector<std::size_t> chosen;
    std::vector<Vec> cbasis;
    for (std::size_t i = 0; i < vectors.size() && chosen.size() < want; ++i)
        if (gs_accept_complex(cbasis, vectors[i], tol)) chosen.push_back(i);
    if (chosen.size() != want)
        throw Error("extract_complex_independent: found only " + std::to_string(chosen.size()) +
                    " complex-independent vectors, expected " + std::to_string(want));
    return chosen;
}

FrameSection FrameSection::make(Kind kind, int dim, int k) {
    FrameSection s;
    s.kind = kind;
    s.dim = dim;
    s.k = k;
    switch (kind) {
        case Kind::identity:
            if (k != 1) throw ValidationError("identity section has frame length 1");
            s.j_signs = {+1};
            break;
        case Kind::quaternionic:
            if (k != 2) throw ValidationError("quaternionic section has frame length 2");
            if (dim % 4 != 0)
                throw DimensionError("quaternionic section needs a dimension divisible by 4");
            s.j_signs = {+1, -1};
            break;
        case Kind::radon_hurwitz: {
            s.family = rh_matrices(dim);
            int rho = static_cast<int>(s.family.matrices.size()) + 1;
            if (k < 1 || k > rho)
                throw FrameTooLong("radon_hurwitz section: k=" + std::to_string(k) +
                                   " exceeds rho(" + std::to_string(dim) + ")=" + std::to_string(rho));
            s.j_signs.assign(static_cast<std::size_t>(k), +1);
            if (dim % 2 == 0 && !s.family.matrices.empty()) {
                const SquareMatrix& j = s.family.matrices[0];
                for (int i = 1; i < k; ++i) {
                    const SquareMatrix& a = s.family.matrices[static_cast<std::size_t>(i - 1)];
                    SquareMatrix aj = mat_mul(a, j);
                    SquareMatrix ja = mat_mul(j, a);
                    double comm = mat_max_abs_diff(aj, ja);
                    SquareMatrix neg = ja;
                    for (double& v : neg.a) v = -v;
                    double anti = mat_max_abs_diff(aj, neg);
                    if (comm < 1e-12)
                        s.j_signs[static_cast<std::size_t>(i)] = +1;
                    else if (anti < 1e-12)
                        s.j_signs[static_cast<std::size_t>(i)] = -1;
                    else
                        throw Error("frame matrix neither commutes nor anticommutes with J");
                }
            }
            break;
        }
    }
    return s;
}

std::vector<Vec> FrameSection::at(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim)
        throw DimensionError("FrameSection::at: point dimension mismatch");
    switch (kind) {
        case Kind::identity:
            return {Vec(x.begin(), x.end())};
        case Kind::quaternionic: {
            auto [first, second] = quaternion_frame(x);
            return {std::move(first), std::move(second)};
        }
        case Kind::radon_hurwitz:
            return frame_at(x, family, k);
    }
    return {};
}

}  // namespace equipart
