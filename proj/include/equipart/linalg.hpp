#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "equipart/errors.hpp"

namespace equipart {

using Vec = std::vector<double>;
using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline Vec normalized(std::span<const double> a) {
    double n = norm(a);
    if (n == 0.0) throw ValidationError("cannot normalize a zero vector");
    Vec out(a.begin(), a.end());
    for (double& x : out) x /= n;
    return out;
}

// Coordinates of R^{2t} are read as C^t in interleaved order
// (Re z_1, Im z_1, ..., Re z_t, Im z_t). This convention is global.
inline CVec to_complex(std::span<const double> x) {
    if (x.size() % 2 != 0)
        throw DimensionError("complex view needs an even number of real coordinates");
    CVec z(x.size() / 2);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = Complex(x[2 * i], x[2 * i + 1]);
    return z;
}

inline Vec to_real(const CVec& z) {
    Vec x(2 * z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        x[2 * i] = z[i].real();
        x[2 * i + 1] = z[i].imag();
    }
    return x;
}

// Hermitian form <z, a> = sum z_i * conj(a_i) on interleaved real coordinates.
inline Complex hermitian_dot(std::span<const double> z, std::span<const double> a) {
    if (z.size() != a.size())
        throw DimensionError("hermitian_dot: operand sizes differ");
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i + 1 < z.size(); i += 2) {
        // (zr + i zi)(ar - i ai)
        re += z[i] * a[i] + z[i + 1] * a[i + 1];
        im += z[i + 1] * a[i] - z[i] * a[i + 1];
    }
    return {re, im};
}

// x <- lambda * x, complex scalar acting on interleaved pairs.
inline Vec complex_scaled(std::span<const double> x, Complex lambda) {
    Vec out(x.size());
    for (std::size_t i = 0; i + 1 < x.size(); i += 2) {
        out[i] = lambda.real() * x[i] - lambda.imag() * x[i + 1];
        out[i + 1] = lambda.imag() * x[i] + lambda.real() * x[i + 1];
    }
    return out;
}

inline double hermitian_norm(std::span<const double> z) {
    return norm(z);  // |z|_C agrees with the Euclidean norm of the real view
}

// Numerically stable logistic sigmoid.
inline double logistic(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

}  // namespace equipart
