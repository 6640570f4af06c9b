#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "floquet/bloch.hpp"
#include "floquet/errors.hpp"
#include "floquet/params.hpp"
#include "floquet/rational.hpp"

namespace floquet {

inline constexpr int kMaxLoopSamples = 1 << 20;

struct LoopResult {
    std::int64_t winding = 0;
    double min_modulus = 0.0;   // smallest |f| seen on the final grid
    int samples_used = 0;       // grid size that met the step criterion
    double residual = 0.0;      // |sum of phase steps / 2pi - winding|
};

// Total phase of a closed loop f : [-pi, pi] -> C* in units of 2*pi.
//
// Uniform sampling with per-step unwrapped increments arg(f_{j+1}/f_j);
// the grid doubles until every increment is below pi/2, which rules out
// branch ambiguity for any f whose phase velocity is resolved by the
// grid.  Throws GapClosureError if the loop passes within gap_tolerance
// of the origin (winding undefined) and NonConvergenceError if the
// sample cap is reached with steps still too large.
template <typename F>
LoopResult loop_winding(F&& f, int samples = 4096, double gap_tolerance = 1e-8) {
    int n = std::max(64, samples);
    std::vector<cdouble> v;
    while (true) {
        if (n > kMaxLoopSamples)
            throw NonConvergenceError("loop_winding: phase step >= pi/2 at the cap of " +
                                      std::to_string(kMaxLoopSamples) + " samples");
        v.resize(n);
        double min_mod = std::numeric_limits<double>::infinity();
        double min_k = 0.0;
        for (int j = 0; j < n; ++j) {
            const double k = -pi + 2.0 * pi * (j + 1) / n;
            v[j] = f(k);
            const double m = std::abs(v[j]);
            if (m < min_mod) { min_mod = m; min_k = k; }
        }
        if (min_mod <= gap_tolerance)
            throw GapClosureError(min_k, "loop_winding: |f| = " + std::to_string(min_mod) +
                                             " <= gap tolerance at k = " + std::to_string(min_k));
        double total = 0.0;
        double max_step = 0.0;
        for (int j = 0; j < n; ++j) {
            const double step = std::arg(v[(j + 1) % n] / v[j]);
            max_step = std::max(max_step, std::abs(step));
            total += step;
        }
        if (max_step < 0.5 * pi) {
            const double turns = total / (2.0 * pi);
            LoopResult r;
            r.winding = std::llround(turns);
            r.min_modulus = min_mod;
            r.samples_used = n;
            r.residual = std::abs(turns - static_cast<double>(r.winding));
            return r;
        }
        n *= 2;
    }
}

struct FrameWinding {
    Rational w;             // (wind(nx + i ny) - wind(nx - i ny)) / 2
    double min_modulus = 0.0;
    int samples_used = 0;
    double residual = 0.0;
};

// Winding number of symmetric time frame s in {1, 2}.
inline FrameWinding frame_winding(int s, const DriveParams& p, int samples = 4096,
                                  double gap_tolerance = 1e-8) {
    auto loop = [&](double sign) {
        return loop_winding(
            [&](double k) {
                const FrameComponents fc = frame_components(s, k, p);
                return fc.nx + cdouble(0.0, sign) * fc.ny;
            },
            samples, gap_tolerance);
    };
    try {
        const LoopResult plus = loop(+1.0);
        const LoopResult minus = loop(-1.0);
        FrameWinding fw;
        fw.w = Rational(plus.winding - minus.winding, 2);
        fw.min_modulus = std::min(plus.min_modulus, minus.min_modulus);
        fw.samples_used = std::max(plus.samples_used, minus.samples_used);
        fw.residual = std::max(plus.residual, minus.residual);
        return fw;
    } catch (const GapClosureError& e) {
        throw GapClosureError(e.k, "frame " + std::to_string(s) + ": " + e.what());
    }
}

struct WindingResult {
    Rational w1, w2;    // frame windings (integers whenever the loops are gapped)
    Rational w0, wpi;   // invariants of the 0 and pi quasienergy gaps
    double min_modulus = 0.0;
    int samples_used = 0;
    double residual = 0.0;
};

// Full invariant pair: W0 = (W1 + W2)/2, Wpi = (W1 - W2)/2, exactly.
// |W0| counts the zero modes of the open chain and |Wpi| the pi modes.
inline WindingResult invariants(const DriveParams& p, int samples = 4096,
                                double gap_tolerance = 1e-8) {
    const FrameWinding f1 = frame_winding(1, p, samples, gap_tolerance);
    const FrameWinding f2 = frame_winding(2, p, samples, gap_tolerance);
    WindingResult r;
    r.w1 = f1.w;
    r.w2 = f2.w;
    r.w0 = (f1.w + f2.w) / Rational(2);
    r.wpi = (f1.w - f2.w) / Rational(2);
    r.min_modulus = std::min(f1.min_modulus, f2.min_modulus);
    r.samples_used = std::max(f1.samples_used, f2.samples_used);
    r.residual = std::max(f1.residual, f2.residual);
    return r;
}

}  // namespace floquet
