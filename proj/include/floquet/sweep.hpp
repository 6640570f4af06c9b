#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "floquet/errors.hpp"
#include "floquet/params.hpp"
#include "floquet/rational.hpp"
#include "floquet/realspace.hpp"
#include "floquet/winding.hpp"

namespace floquet {

// Sweepable parameters.  `gamma` is the complex combination
// gamma0 * e^{i theta}; it can only be the target of a binding
// (e.g. gamma = 0.75i * t1), never an axis.
enum class Param { t1, t2, gamma0, theta, mu, omega1, omega2, gamma };

inline const char* param_name(Param p) {
    switch (p) {
        case Param::t1: return "t1";
        case Param::t2: return "t2";
        case Param::gamma0: return "gamma0";
        case Param::theta: return "theta";
        case Param::mu: return "mu";
        case Param::omega1: return "omega1";
        case Param::omega2: return "omega2";
        case Param::gamma: return "gamma";
    }
    throw SpecError("unknown parameter enum value");
}

inline Param param_from_name(const std::string& s) {
    for (Param p : {Param::t1, Param::t2, Param::gamma0, Param::theta, Param::mu,
                    Param::omega1, Param::omega2, Param::gamma})
        if (s == param_name(p)) return p;
    throw SpecError("unknown parameter name '" + s + "'");
}

// Quantities a sweep can record per cell.
enum class Target { W0, Wpi, W1, W2, n0, npi };

inline const char* target_name(Target t) {
    switch (t) {
        case Target::W0: return "W0";
        case Target::Wpi: return "Wpi";
        case Target::W1: return "W1";
        case Target::W2: return "W2";
        case Target::n0: return "n0";
        case Target::npi: return "npi";
    }
    throw SpecError("unknown target enum value");
}

inline Target target_from_name(const std::string& s) {
    for (Target t : {Target::W0, Target::Wpi, Target::W1, Target::W2, Target::n0, Target::npi})
        if (s == target_name(t)) return t;
    throw SpecError("unknown target name '" + s + "'");
}

struct AxisSpec {
    Param param = Param::t1;
    double lo = 0.0, hi = 1.0;
    int count = 2;

    double value(int i) const {
        if (count == 1) return lo;
        return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
};

// param = coeff * (current value of the source axis).
struct Binding {
    Param target = Param::gamma;
    cdouble coeff{1.0, 0.0};
    Param source = Param::t1;
};

struct SweepSpec {
    AxisSpec x, y;
    std::vector<Binding> bindings;
    DriveParams base;
    std::vector<Target> targets;
    int samples = 4096;
    int cells = 200;              // chain length for n0/npi targets
    double eps_e = 1e-2;
    double gap_tolerance = 1e-8;
};

enum class CellStatus { ok, gap_closure, error };

inline const char* status_name(CellStatus s) {
    switch (s) {
        case CellStatus::ok: return "ok";
        case CellStatus::gap_closure: return "gap_closure";
        case CellStatus::error: return "error";
    }
    throw SpecError("unknown cell status");
}

struct Cell {
    CellStatus status = CellStatus::error;
    Rational value;
};

struct PhaseDiagram {
    SweepSpec spec;
    // grid[t][iy * nx + ix] for target index t; ix runs along axis x
    // (rightward), iy along axis y (upward).
    std::vector<std::vector<Cell>> grid;
    double elapsed_seconds = 0.0;  // wall time; not serialized

    int nx() const { return spec.x.count; }
    int ny() const { return spec.y.count; }
    const Cell& at(int t, int ix, int iy) const { return grid[t][iy * nx() + ix]; }
};

namespace detail {

inline void set_axis_value(DriveParams& p, Param ax, double v) {
    switch (ax) {
        case Param::t1: p.t1 = v; return;
        case Param::t2: p.t2 = v; return;
        case Param::gamma0: p.gamma0 = v; return;
        case Param::theta: p.theta = v; return;
        case Param::mu: p.mu = v; return;
        case Param::omega1: p.omega1 = v; return;
        case Param::omega2: p.omega2 = v; return;
        case Param::gamma: break;
    }
    throw SpecError("gamma cannot be a sweep axis; bind it to one instead");
}

inline void set_bound_value(DriveParams& p, Param target, cdouble v) {
    switch (target) {
        case Param::gamma: set_gamma(p, v); return;
        case Param::t1: p.t1 = v; return;
        case Param::t2: p.t2 = v; return;
        case Param::gamma0: p.gamma0 = v.real(); return;
        case Param::theta: p.theta = v.real(); return;
        case Param::mu: p.mu = v.real(); return;
        case Param::omega1: p.omega1 = v.real(); return;
        case Param::omega2: p.omega2 = v.real(); return;
    }
    throw SpecError("unknown binding target");
}

inline bool real_only_param(Param p) {
    return p != Param::gamma && p != Param::t1 && p != Param::t2;
}

}  // namespace detail

inline void validate_spec(const SweepSpec& s) {
    if (s.x.param == s.y.param) throw SpecError("sweep axes must be distinct parameters");
    if (s.x.param == Param::gamma || s.y.param == Param::gamma)
        throw SpecError("gamma cannot be a sweep axis; bind it to one instead");
    if (s.x.count < 2) throw SpecError("axis x needs at least 2 points");
    if (s.y.count < 1) throw SpecError("axis y needs at least 1 point");
    for (const AxisSpec* ax : {&s.x, &s.y})
        if (!std::isfinite(ax->lo) || !std::isfinite(ax->hi))
            throw SpecError("axis range must be finite");
    for (const Binding& b : s.bindings) {
        if (b.source != s.x.param && b.source != s.y.param)
            throw SpecError(std::string("binding source '") + param_name(b.source) +
                            "' is not a sweep axis");
        if (b.target == s.x.param || b.target == s.y.param)
            throw SpecError(std::string("binding target '") + param_name(b.target) +
                            "' is already a sweep axis");
        if (detail::real_only_param(b.target) && b.coeff.imag() != 0.0)
            throw SpecError(std::string("binding target '") + param_name(b.target) +
                            "' is real-valued; coefficient must be real");
        for (const Binding& other : s.bindings)
            if (&other != &b && other.target == b.target)
                throw SpecError(std::string("parameter '") + param_name(b.target) +
                                "' bound more than once");
    }
    if (s.targets.empty()) throw SpecError("sweep needs at least one target");
    if (s.samples < 64) throw SpecError("samples must be >= 64");
    if (s.cells < 5) throw SpecError("cells must be >= 5");
    if (!(s.eps_e > 0.0) || !(s.eps_e < 1.0)) throw SpecError("eps_e must lie in (0, 1)");
    if (!(s.gap_tolerance > 0.0)) throw SpecError("gap_tolerance must be > 0");
}

// Drive parameters at one grid cell: axes applied first, bindings second.
inline DriveParams cell_params(const SweepSpec& s, int ix, int iy) {
    DriveParams p = s.base;
    const double xv = s.x.value(ix);
    const double yv = s.y.value(iy);
    detail::set_axis_value(p, s.x.param, xv);
    detail::set_axis_value(p, s.y.param, yv);
    for (const Binding& b : s.bindings)
        detail::set_bound_value(p, b.target, b.coeff * (b.source == s.x.param ? xv : yv));
    return validated(p);
}

// Evaluate the whole grid.  Worker threads pull cell indices from a shared
// counter and write into disjoint slots, so the result (and every file
// serialized from it) is independent of the worker count.
inline PhaseDiagram run_sweep(const SweepSpec& spec, int workers = 1) {
    validate_spec(spec);
    const auto t_start = std::chrono::steady_clock::now();

    bool want_winding = false, want_edges = false;
    for (Target t : spec.targets)
        (t == Target::n0 || t == Target::npi ? want_edges : want_winding) = true;

    PhaseDiagram d;
    d.spec = spec;
    const int ncells = spec.x.count * spec.y.count;
    d.grid.assign(spec.targets.size(), std::vector<Cell>(ncells));

    auto eval_cell = [&](int idx) {
        const int ix = idx % spec.x.count;
        const int iy = idx / spec.x.count;
        CellStatus status = CellStatus::ok;
        WindingResult w;
        QuasiSpectrum qs;
        try {
            const DriveParams p = cell_params(spec, ix, iy);
            if (want_winding) w = invariants(p, spec.samples, spec.gap_tolerance);
            if (want_edges)
                qs = quasi_spectrum(open_floquet(build_chain(p, spec.cells)), spec.eps_e);
        } catch (const GapClosureError&) {
            status = CellStatus::gap_closure;
        } catch (const FloquetError&) {
            status = CellStatus::error;
        }
        for (std::size_t t = 0; t < spec.targets.size(); ++t) {
            Cell& cell = d.grid[t][idx];
            cell.status = status;
            if (status != CellStatus::ok) continue;
            switch (spec.targets[t]) {
                case Target::W0: cell.value = w.w0; break;
                case Target::Wpi: cell.value = w.wpi; break;
                case Target::W1: cell.value = w.w1; break;
                case Target::W2: cell.value = w.w2; break;
                case Target::n0: cell.value = Rational(qs.n0); break;
                case Target::npi: cell.value = Rational(qs.npi); break;
            }
        }
    };

    workers = std::max(1, workers);
    if (workers == 1) {
        for (int idx = 0; idx < ncells; ++idx) eval_cell(idx);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (int idx = next.fetch_add(1); idx < ncells; idx = next.fetch_add(1))
                    eval_cell(idx);
            });
        for (auto& th : pool) th.join();
    }

    d.elapsed_seconds = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - t_start).count();
    return d;
}

// Family of diagrams over hopping phases theta: each member re-binds
// gamma = coeff * e^{i theta} * (x-axis value), so the modulus of gamma
// tracks the x axis (theta = pi/2 with coeff = 0.75 is the familiar
// gamma = 0.75i * t1 diagram when x sweeps t1).
inline std::vector<PhaseDiagram> theta_family(const SweepSpec& base,
                                              const std::vector<double>& thetas,
                                              double coeff = 0.75, int workers = 1) {
    std::vector<PhaseDiagram> family;
    family.reserve(thetas.size());
    for (double th : thetas) {
        SweepSpec s = base;
        std::erase_if(s.bindings, [](const Binding& b) { return b.target == Param::gamma; });
        s.bindings.push_back(Binding{Param::gamma, std::polar(coeff, th), base.x.param});
        family.push_back(run_sweep(s, workers));
    }
    return family;
}

namespace detail {
inline std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
}  // namespace detail

// CSV layout: one row per (target, cell), row-major over the grid with
// explicit coordinates, targets in spec order:
//   x_name,x_value,y_name,y_value,target,value,status
// `value` is an exact integer or rational "p/q"; empty for cells whose
// status is not ok.
inline void write_diagram_csv(std::ostream& os, const PhaseDiagram& d) {
    os << "x_name,x_value,y_name,y_value,target,value,status\n";
    const char* xn = param_name(d.spec.x.param);
    const char* yn = param_name(d.spec.y.param);
    for (std::size_t t = 0; t < d.spec.targets.size(); ++t)
        for (int iy = 0; iy < d.ny(); ++iy)
            for (int ix = 0; ix < d.nx(); ++ix) {
                const Cell& c = d.at(static_cast<int>(t), ix, iy);
                os << xn << ',' << detail::fmt_coord(d.spec.x.value(ix)) << ',' << yn << ','
                   << detail::fmt_coord(d.spec.y.value(iy)) << ','
                   << target_name(d.spec.targets[t]) << ',';
                if (c.status == CellStatus::ok) os << c.value.str();
                os << ',' << status_name(c.status) << '\n';
            }
}

inline Rational rational_from_str(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(s));
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw SpecError("malformed rational '" + s + "'");
    }
}

// Rebuild a diagram from its CSV (coordinates, targets, values, statuses).
// Base drive parameters are not stored in the CSV, so the returned spec
// carries defaults for everything but the axes and targets.
inline PhaseDiagram read_diagram_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "x_name,x_value,y_name,y_value,target,value,status")
        throw SpecError("diagram CSV: bad or missing header");

    struct Row {
        std::string xn, yn, target, value, status;
        double xv, yv;
    };
    std::vector<Row> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        Row r;
        std::string xv, yv;
        if (!std::getline(ss, r.xn, ',') || !std::getline(ss, xv, ',') ||
            !std::getline(ss, r.yn, ',') || !std::getline(ss, yv, ',') ||
            !std::getline(ss, r.target, ',') || !std::getline(ss, r.value, ',') ||
            !std::getline(ss, r.status))
            throw SpecError("diagram CSV: malformed row '" + line + "'");
        r.xv = std::stod(xv);
        r.yv = std::stod(yv);
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw SpecError("diagram CSV: no data rows");

    PhaseDiagram d;
    d.spec.x.param = param_from_name(rows.front().xn);
    d.spec.y.param = param_from_name(rows.front().yn);

    // Rows are x-major: in the first target block, the leading run with
    // y == y0 spans one grid row and fixes the x coordinates.
    const std::string& t0 = rows.front().target;
    std::size_t block = 0;
    while (block < rows.size() && rows[block].target == t0) ++block;
    std::vector<double> xs, ys;
    for (std::size_t j = 0; j < block && rows[j].yv == rows.front().yv; ++j)
        xs.push_back(rows[j].xv);
    if (block % xs.size() != 0) throw SpecError("diagram CSV: ragged grid rows");
    for (std::size_t j = 0; j < block; j += xs.size()) ys.push_back(rows[j].yv);
    d.spec.x.lo = xs.front();
    d.spec.x.hi = xs.back();
    d.spec.x.count = static_cast<int>(xs.size());
    d.spec.y.lo = ys.front();
    d.spec.y.hi = ys.back();
    d.spec.y.count = static_cast<int>(ys.size());

    const int ncells = d.spec.x.count * d.spec.y.count;
    if (rows.size() % ncells != 0)
        throw SpecError("diagram CSV: row count does not tile the grid");
    for (std::size_t base = 0; base < rows.size(); base += ncells) {
        d.spec.targets.push_back(target_from_name(rows[base].target));
        std::vector<Cell> cells(ncells);
        for (int j = 0; j < ncells; ++j) {
            const Row& r = rows[base + j];
            Cell c;
            if (r.status == "ok") c.status = CellStatus::ok;
            else if (r.status == "gap_closure") c.status = CellStatus::gap_closure;
            else if (r.status == "error") c.status = CellStatus::error;
            else throw SpecError("diagram CSV: unknown status '" + r.status + "'");
            if (c.status == CellStatus::ok) c.value = rational_from_str(r.value);
            cells[j] = c;
        }
        d.grid.push_back(std::move(cells));
    }
    return d;
}

// Discrete colors for integer invariants; see docs/colormap.md.
struct Rgb {
    unsigned char r, g, b;
};

inline Rgb heatmap_color(const Cell& c) {
    if (c.status == CellStatus::gap_closure) return Rgb{0, 0, 0};
    if (c.status == CellStatus::error) return Rgb{64, 64, 64};
    if (!c.value.is_integer()) return Rgb{255, 255, 255};
    static constexpr Rgb palette[13] = {
        {73, 0, 106},    // -6
        {122, 1, 119},   // -5
        {174, 1, 126},   // -4
        {221, 52, 151},  // -3
        {247, 104, 161}, // -2
        {250, 179, 174}, // -1
        {240, 240, 240}, //  0
        {199, 233, 180}, // +1
        {127, 205, 187}, // +2
        {65, 182, 196},  // +3
        {29, 145, 192},  // +4
        {34, 94, 168},   // +5
        {12, 44, 132},   // +6
    };
    const std::int64_t v = std::clamp<std::int64_t>(c.value.as_integer(), -6, 6);
    return palette[v + 6];
}

// Binary PPM (P6) render of one target's grid: one pixel per cell,
// axis x rightward, axis y upward (top pixel row = largest y).
inline std::string render_heatmap(const PhaseDiagram& d, Target target) {
    int t = -1;
    for (std::size_t j = 0; j < d.spec.targets.size(); ++j)
        if (d.spec.targets[j] == target) t = static_cast<int>(j);
    if (t < 0)
        throw SpecError(std::string("target '") + target_name(target) +
                        "' was not recorded by this sweep");
    std::string out = "P6\n" + std::to_string(d.nx()) + " " + std::to_string(d.ny()) + "\n255\n";
    out.reserve(out.size() + static_cast<std::size_t>(3) * d.nx() * d.ny());
    for (int iy = d.ny() - 1; iy >= 0; --iy)
        for (int ix = 0; ix < d.nx(); ++ix) {
            const Rgb c = heatmap_color(d.at(t, ix, iy));
            out.push_back(static_cast<char>(c.r));
            out.push_back(static_cast<char>(c.g));
            out.push_back(static_cast<char>(c.b));
        }
    return out;
}

}  // namespace floquet
