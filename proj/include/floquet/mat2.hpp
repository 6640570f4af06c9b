#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "floquet/params.hpp"

namespace floquet {

// Dense 2x2 complex matrix, row-major.  All Bloch-space work happens on
// these; the closed-form exponential below keeps single-k evaluations at
// a handful of trig calls instead of a general expm.
struct Mat2C {
    std::array<cdouble, 4> a{};  // [ (0,0) (0,1) (1,0) (1,1) ]

    cdouble& operator()(int r, int c) { return a[2 * r + c]; }
    const cdouble& operator()(int r, int c) const { return a[2 * r + c]; }

    static Mat2C identity() { return Mat2C{{cdouble(1), cdouble(0), cdouble(0), cdouble(1)}}; }
    static Mat2C zero() { return Mat2C{}; }

    cdouble trace() const { return a[0] + a[3]; }
    cdouble det() const { return a[0] * a[3] - a[1] * a[2]; }

    Mat2C adjoint() const {
        return Mat2C{{std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])}};
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& z : a) m = std::max(m, std::abs(z));
        return m;
    }

    friend Mat2C operator*(const Mat2C& x, const Mat2C& y) {
        return Mat2C{{x.a[0] * y.a[0] + x.a[1] * y.a[2], x.a[0] * y.a[1] + x.a[1] * y.a[3],
                      x.a[2] * y.a[0] + x.a[3] * y.a[2], x.a[2] * y.a[1] + x.a[3] * y.a[3]}};
    }
    friend Mat2C operator+(const Mat2C& x, const Mat2C& y) {
        return Mat2C{{x.a[0] + y.a[0], x.a[1] + y.a[1], x.a[2] + y.a[2], x.a[3] + y.a[3]}};
    }
    friend Mat2C operator-(const Mat2C& x, const Mat2C& y) {
        return Mat2C{{x.a[0] - y.a[0], x.a[1] - y.a[1], x.a[2] - y.a[2], x.a[3] - y.a[3]}};
    }
    friend Mat2C operator*(cdouble s, const Mat2C& x) {
        return Mat2C{{s * x.a[0], s * x.a[1], s * x.a[2], s * x.a[3]}};
    }

    // Inverse via the adjugate; valid whenever det != 0 (our propagators
    // are unimodular, det = 1, so this never loses accuracy).
    Mat2C inverse() const {
        const cdouble d = det();
        const cdouble s = cdouble(1.0) / d;
        return Mat2C{{s * a[3], -s * a[1], -s * a[2], s * a[0]}};
    }
};

inline double max_abs_diff(const Mat2C& x, const Mat2C& y) { return (x - y).max_abs(); }

// Pauli-basis coefficients: M = c0*I + cx*sx + cy*sy + cz*sz.
struct PauliCoeffs {
    cdouble c0, cx, cy, cz;
};

inline PauliCoeffs pauli_decompose(const Mat2C& m) {
    const cdouble i(0.0, 1.0);
    return PauliCoeffs{0.5 * (m.a[0] + m.a[3]), 0.5 * (m.a[1] + m.a[2]),
                       0.5 * i * (m.a[1] - m.a[2]), 0.5 * (m.a[0] - m.a[3])};
}

inline Mat2C from_pauli(const PauliCoeffs& c) {
    const cdouble i(0.0, 1.0);
    return Mat2C{{c.c0 + c.cz, c.cx - i * c.cy, c.cx + i * c.cy, c.c0 - c.cz}};
}

// exp(-i * t * (cx*sx + cy*sy + cz*sz)) in closed form:
//
//   exp(-i t c.sigma) = cos(eps t) I - i sin(eps t)/eps (c.sigma),
//   eps = principal sqrt(cx^2 + cy^2 + cz^2)  (complex in general).
//
// sin(eps t)/eps is evaluated by series for |eps t| < 1e-4, which covers
// eps = 0 exactly and avoids the 0/0 at gap-closing parameters.
inline Mat2C expm_traceless(cdouble cx, cdouble cy, cdouble cz, double t) {
    const cdouble i(0.0, 1.0);
    const cdouble eps = std::sqrt(cx * cx + cy * cy + cz * cz);
    const cdouble et = eps * t;
    cdouble f;  // sin(eps t)/eps = t * sinc(eps t)
    if (std::abs(et) < 1e-4) {
        const cdouble z = et * et;
        f = t * (1.0 - z / 6.0 * (1.0 - z / 20.0 * (1.0 - z / 42.0)));
    } else {
        f = std::sin(et) / eps;
    }
    const cdouble c0 = std::cos(et);
    const cdouble gx = -i * f * cx;
    const cdouble gy = -i * f * cy;
    const cdouble gz = -i * f * cz;
    return from_pauli(PauliCoeffs{c0, gx, gy, gz});
}

}  // namespace floquet
