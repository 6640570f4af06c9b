#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "floquet/mat2.hpp"
#include "floquet/params.hpp"

namespace floquet {

// Bloch Hamiltonians of the two half-period quenches.
//
//   H1(k) = [2 t1 cos k + 2 t2 cos 2k] sx + 2 i gamma sy
//   H2(k) = 2 mu sx + [2 omega1 sin k + 2 omega2 sin 2k] sy
//
// gamma = gamma0 e^{i theta} makes H1 non-Hermitian except at theta = pi/2
// (pure imaginary gamma, where 2i*gamma*sy is Hermitian).

struct PauliXY {
    cdouble cx, cy;
};

inline PauliXY h1_coeffs(double k, const DriveParams& p) {
    const cdouble i(0.0, 1.0);
    return PauliXY{2.0 * p.t1 * std::cos(k) + 2.0 * p.t2 * std::cos(2.0 * k),
                   2.0 * i * gamma_of(p)};
}

inline PauliXY h2_coeffs(double k, const DriveParams& p) {
    return PauliXY{cdouble(2.0 * p.mu),
                   cdouble(2.0 * p.omega1 * std::sin(k) + 2.0 * p.omega2 * std::sin(2.0 * k))};
}

inline Mat2C h1_bloch(double k, const DriveParams& p) {
    const auto c = h1_coeffs(k, p);
    return from_pauli(PauliCoeffs{cdouble(0), c.cx, c.cy, cdouble(0)});
}

inline Mat2C h2_bloch(double k, const DriveParams& p) {
    const auto c = h2_coeffs(k, p);
    return from_pauli(PauliCoeffs{cdouble(0), c.cx, c.cy, cdouble(0)});
}

// exp(-i * t * H) for a traceless sx/sy Hamiltonian given by coefficients.
inline Mat2C evolution(const PauliXY& c, double t) {
    return expm_traceless(c.cx, c.cy, cdouble(0), t);
}

// One-period Floquet operator, H1 first then H2 (period T = 1):
//   U(k) = exp(-i H2 / 2) exp(-i H1 / 2).
inline Mat2C floquet_u(double k, const DriveParams& p) {
    return evolution(h2_coeffs(k, p), 0.5) * evolution(h1_coeffs(k, p), 0.5);
}

// Symmetric time frames obtained by shifting the period start by a quarter
// step; both have the same quasienergy spectrum as U(k) and obey the
// sublattice symmetry sz U_s sz = U_s^{-1}:
//   U_1(k) = exp(-i H2/4) exp(-i H1/2) exp(-i H2/4)
//   U_2(k) = exp(-i H1/4) exp(-i H2/2) exp(-i H1/4)
inline Mat2C floquet_u_frame(int s, double k, const DriveParams& p) {
    const auto c1 = h1_coeffs(k, p);
    const auto c2 = h2_coeffs(k, p);
    if (s == 1) return evolution(c2, 0.25) * evolution(c1, 0.5) * evolution(c2, 0.25);
    if (s == 2) return evolution(c1, 0.25) * evolution(c2, 0.5) * evolution(c1, 0.25);
    throw SpecError("frame index must be 1 or 2, got " + std::to_string(s));
}

// Sublattice symmetry forces each frame operator onto the form
//   U_s(k) = cos(E) I - i (n_x sx + n_y sy)
// with cos(E)^2 + n_x^2 + n_y^2 = 1.  The winding of n_x + i n_y and
// n_x - i n_y around the Brillouin zone carries the topology.
struct FrameComponents {
    cdouble cos_e;  // cos of the quasienergy band at this k
    cdouble nx, ny;
};

inline FrameComponents frame_components(int s, double k, const DriveParams& p) {
    const cdouble i(0.0, 1.0);
    const PauliCoeffs c = pauli_decompose(floquet_u_frame(s, k, p));
    // A sigma_z component can only come from a construction bug (each
    // factor lives in span{I, sx, sy} and the product algebra closes onto
    // span{I, sx, sy} plus an sz term that cancels for symmetric frames).
    const double scale = std::max({1.0, std::abs(c.c0), std::abs(c.cx), std::abs(c.cy)});
    if (std::abs(c.cz) > 1e-9 * scale)
        throw NumericalOverflowError("frame operator acquired a sigma_z component of " +
                                     std::to_string(std::abs(c.cz)) + " at k = " +
                                     std::to_string(k));
    return FrameComponents{c.c0, i * c.cx, i * c.cy};
}

// Auxiliary Bloch angles; for a split drive (pure-sx and pure-sy steps)
// the frame components reduce to trig functions of these.
struct AuxAngles {
    cdouble hx, hy;
};

inline AuxAngles aux_angles(double k, const DriveParams& p) {
    return AuxAngles{p.mu + p.t1 * std::cos(k) + p.t2 * std::cos(2.0 * k),
                     cdouble(p.omega1 * std::sin(k) + p.omega2 * std::sin(2.0 * k))};
}

}  // namespace floquet
