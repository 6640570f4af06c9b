#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "floquet/errors.hpp"

namespace floquet {

using cdouble = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

// Parameters of the two-step quenched drive over one period T = 1:
// the chain evolves under h1 for the first half period and h2 for the
// second.  h1 carries the nonreciprocal intracell hopping gamma and the
// long-range hoppings t1 (nearest) and t2 (next-nearest); h2 carries the
// onsite coupling mu and the hoppings omega1, omega2.
//
// The complex hopping amplitude is gamma = gamma0 * e^{i*theta} with
// gamma0 >= 0 and theta in (0, 2*pi]; theta = 2*pi means real gamma.
struct DriveParams {
    cdouble t1{0.0, 0.0};
    cdouble t2{0.0, 0.0};
    double gamma0 = 0.0;
    double theta = 2.0 * pi;
    double mu = 0.0;
    double omega1 = 0.0;
    double omega2 = 0.0;

    static constexpr double period = 1.0;
};

// Reduce an angle into the representative interval (0, 2*pi].
inline double reduce_theta(double theta) {
    if (!std::isfinite(theta)) throw SpecError("theta must be finite");
    double r = std::fmod(theta, 2.0 * pi);
    if (r <= 0.0) r += 2.0 * pi;
    return r;
}

// Throws SpecError on out-of-contract values; returns the normalized copy.
inline DriveParams validated(DriveParams p) {
    auto finite = [](cdouble z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
    if (!finite(p.t1) || !finite(p.t2) || !std::isfinite(p.mu) ||
        !std::isfinite(p.omega1) || !std::isfinite(p.omega2) || !std::isfinite(p.gamma0))
        throw SpecError("drive parameters must be finite");
    if (p.gamma0 < 0.0) throw SpecError("gamma0 must be >= 0, got " + std::to_string(p.gamma0));
    p.theta = reduce_theta(p.theta);
    return p;
}

// gamma = gamma0 * e^{i*theta}.
inline cdouble gamma_of(const DriveParams& p) {
    return p.gamma0 * std::polar(1.0, p.theta);
}

// Assign a complex gamma by splitting it into (gamma0, theta).
// gamma = 0 maps to (0, 2*pi) so the stored theta stays in contract.
inline void set_gamma(DriveParams& p, cdouble gamma) {
    p.gamma0 = std::abs(gamma);
    p.theta = p.gamma0 == 0.0 ? 2.0 * pi : reduce_theta(std::arg(gamma));
}

}  // namespace floquet
