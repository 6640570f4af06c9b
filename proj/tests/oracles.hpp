#pragma once

// Independent reference routes used only by tests.  These deliberately
// avoid the closed forms and phase-unwrapping tricks inside the library,
// so agreement between the two routes is a meaningful check rather than
// the same code evaluated twice.

#include <complex>
#include <random>

#include <floquet/mat2.hpp>
#include <floquet/params.hpp>

namespace oracle {

using floquet::cdouble;
using floquet::Mat2C;

// Dense matrix exponential by scaling-and-squaring with a Taylor kernel:
// scale the argument below 1/16, sum the series to machine floor, square
// back up.
inline Mat2C expm(const Mat2C& m) {
    int squarings = 0;
    double norm = m.max_abs();
    while (norm > 0.0625 && squarings < 60) {
        norm *= 0.5;
        ++squarings;
    }
    const double scale = std::ldexp(1.0, -squarings);
    const Mat2C x = cdouble(scale) * m;

    Mat2C sum = Mat2C::identity();
    Mat2C term = Mat2C::identity();
    for (int k = 1; k <= 30; ++k) {
        term = cdouble(1.0 / k) * (term * x);
        sum = sum + term;
        if (term.max_abs() < 1e-20 * sum.max_abs()) break;
    }
    for (int k = 0; k < squarings; ++k) sum = sum * sum;
    return sum;
}

// exp(-i * t * h) through the dense route.
inline Mat2C evolution(const Mat2C& h, double t) {
    return expm(cdouble(0.0, -t) * h);
}

// Uniform draw helpers with caller-owned engines so every test fixes its
// own seed.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline cdouble complex_uniform(std::mt19937_64& rng, double radius) {
    return cdouble(uniform(rng, -radius, radius), uniform(rng, -radius, radius));
}

inline Mat2C random_mat2(std::mt19937_64& rng, double radius) {
    return Mat2C{{complex_uniform(rng, radius), complex_uniform(rng, radius),
                  complex_uniform(rng, radius), complex_uniform(rng, radius)}};
}

}  // namespace oracle
