#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "equipart/linalg.hpp"

namespace equipart {

struct SquareMatrix {
    std::size_t n = 0;
    std::vector<double> a;  // row-major

    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n_) : n(n_), a(n_ * n_, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    static SquareMatrix identity(std::size_t n);
};

SquareMatrix mat_mul(const SquareMatrix& x, const SquareMatrix& y);
SquareMatrix mat_transpose(const SquareMatrix& x);
double mat_max_abs_diff(const SquareMatrix& x, const SquareMatrix& y);
Vec mat_apply(const SquareMatrix& x, std::span<const double> v);

// Pairwise-anticommuting orthogonal complex structures on R^n. When n is even
// the first matrix is exactly the interleaved complex structure J (pairs
// (2i, 2i+1) rotated), and every later matrix anticommutes with it.
struct AnticommutingFamily {
    std::size_t dim = 0;
    std::vector<SquareMatrix> matrices;
};

// Hurwitz-Radon number: for n = 2^(a+4b) * odd with 0 <= a <= 3,
// rho(n) = 2^a + 8b, the longest equivariant frame the sphere S^{n-1} carries.
int rh_rho(int n);

// rho(n)-1 matrices realizing the bound, built from the complex, quaternion
// and octonion left multiplications with period-8 doubling. Entries are
// exactly 0 or +-1.
AnticommutingFamily rh_matrices(int n);

// (x, A_1 x, ..., A_{k-1} x): an orthonormal k-frame, linear (hence odd) in x.
std::vector<Vec> frame_at(std::span<const double> x, const AnticommutingFamily& fam, int k);

// Componentwise quaternion left multiplication by j on R^{4m}, quaternion
// blocks ordered (1, i, j, k) with the complex units embedded as (1, i).
Vec quaternion_j_apply(std::span<const double> x);

// The section (x, jx) of the complex 2-frame bundle: Hermitian-orthonormal,
// with (lambda x, conj(lambda) j x) under complex scalars lambda.
std::pair<Vec, Vec> quaternion_frame(std::span<const double> x);

// Given k real-linearly-independent vectors in R^{2t}, greedily select
// ceil(k/2) of them that are linearly independent over C.
std::vector<std::size_t> extract_complex_independent(const std::vector<Vec>& vectors);

// Rule producing a Z_q-equivariant orthonormal k-frame at every sphere point.
struct FrameSection {
    enum class Kind { identity, radon_hurwitz, quaternionic };

    Kind kind = Kind::identity;
    int dim = 0;  // ambient real dimension
    int k = 1;
    AnticommutingFamily family;  // radon_hurwitz only
    std::vector<int> j_signs;    // +1 if vector i commutes with J, -1 if it anticommutes

    static FrameSection make(Kind kind, int dim, int k);

    std::vector<Vec> at(std::span<const double> x) const;

    // Z_q weight of frame vector i: s_i(zeta x) = zeta^r s_i(x) with r in {1, q-1}.
    int exponent(int i, int q) const { return j_signs[static_cast<std::size_t>(i)] > 0 ? 1 : q - 1; }
};

}  // namespace equipart
