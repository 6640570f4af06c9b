// Command-line front end: computes winding invariants, complex quasienergy
// spectra, edge-mode counts, bulk-boundary checks, and phase-diagram sweeps
// for the periodically quenched non-Hermitian chain.
//
// Every subcommand prints exactly one JSON object on stdout; progress and
// error text go to stderr.  Exit codes: 0 success, 1 computation failure
// (gap closure, overflow, failed verification), 2 usage error.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <floquet/floquet.hpp>

namespace {

using floquet::cdouble;
using floquet::Rational;
using json = nlohmann::json;

// Exact invariants serialize as JSON integers when integral, "p/q" otherwise.
json json_of(const Rational& r) {
    if (r.is_integer()) return json(r.as_integer());
    return json(r.str());
}

// One config-assignable option: JSON key (flag name with '-' -> '_'),
// the CLI11 option, and a setter used when the flag was not passed.
struct ConfigEntry {
    std::string key;
    CLI::Option* opt;
    std::function<void(const json&)> set;
};

struct Options {
    double t1 = 0.0, t2 = 0.0;  // complex in the library; real on the CLI
    floquet::DriveParams base;
    int samples = 4096;
    int cells = 200;
    double eps_e = 1e-2;
    std::string config_path;

    // sweep only
    std::string axis_x, axis_y, grid;
    std::vector<std::string> bindings;
    std::vector<std::string> targets;
    std::string out_csv, out_ppm;
    int workers = 0;

    std::vector<ConfigEntry> config;

    floquet::DriveParams drive() const {
        floquet::DriveParams p = base;
        p.t1 = t1;
        p.t2 = t2;
        return floquet::validated(p);
    }
};

std::string key_of(const std::string& flag) {
    std::string key = flag.substr(2);
    for (char& c : key)
        if (c == '-') c = '_';
    return key;
}

void add_double(Options& o, CLI::App* cmd, const std::string& flag, double& ref,
                const char* desc) {
    CLI::Option* opt = cmd->add_option(flag, ref, desc)->capture_default_str();
    o.config.push_back({key_of(flag), opt, [&ref](const json& v) { ref = v.get<double>(); }});
}

void add_int(Options& o, CLI::App* cmd, const std::string& flag, int& ref, const char* desc) {
    CLI::Option* opt = cmd->add_option(flag, ref, desc)->capture_default_str();
    o.config.push_back({key_of(flag), opt, [&ref](const json& v) { ref = v.get<int>(); }});
}

void add_string(Options& o, CLI::App* cmd, const std::string& flag, std::string& ref,
                const char* desc) {
    CLI::Option* opt = cmd->add_option(flag, ref, desc);
    o.config.push_back(
        {key_of(flag), opt, [&ref](const json& v) { ref = v.get<std::string>(); }});
}

void add_string_list(Options& o, CLI::App* cmd, const std::string& flag,
                     std::vector<std::string>& ref, const char* desc) {
    CLI::Option* opt = cmd->add_option(flag, ref, desc);
    o.config.push_back({key_of(flag), opt, [&ref](const json& v) {
                            ref.clear();
                            if (v.is_array())
                                for (const auto& e : v) ref.push_back(e.get<std::string>());
                            else
                                ref.push_back(v.get<std::string>());
                        }});
}

void add_drive_options(Options& o, CLI::App* cmd) {
    add_double(o, cmd, "--t1", o.t1, "nearest-neighbour quench-1 hopping");
    add_double(o, cmd, "--t2", o.t2, "next-nearest quench-1 hopping");
    add_double(o, cmd, "--gamma0", o.base.gamma0, "modulus of the intracell hopping gamma");
    add_double(o, cmd, "--theta", o.base.theta, "phase of gamma (2*pi means real gamma)");
    add_double(o, cmd, "--mu", o.base.mu, "onsite intracell coupling of quench 2");
    add_double(o, cmd, "--omega1", o.base.omega1, "nearest-neighbour quench-2 hopping");
    add_double(o, cmd, "--omega2", o.base.omega2, "next-nearest quench-2 hopping");
    add_int(o, cmd, "--samples", o.samples, "initial Brillouin-zone samples");
    add_int(o, cmd, "--cells", o.cells, "open-chain length in unit cells");
    add_double(o, cmd, "--epsilon-e", o.eps_e, "quasienergy window for mode counting");
    cmd->add_option("--config", o.config_path, "JSON file with defaults for these flags");
}

// Precedence: explicit flags > config file values > built-in defaults.
void apply_config(const Options& o) {
    if (o.config_path.empty()) return;
    std::ifstream in(o.config_path);
    if (!in) throw floquet::SpecError("cannot open config file '" + o.config_path + "'");
    json cfg;
    try {
        in >> cfg;
    } catch (const json::parse_error& e) {
        throw floquet::SpecError("config file '" + o.config_path + "': " + e.what());
    }
    if (!cfg.is_object()) throw floquet::SpecError("config file must hold a JSON object");
    for (const auto& [key, value] : cfg.items()) {
        bool found = false;
        for (const ConfigEntry& entry : o.config)
            if (entry.key == key) {
                found = true;
                if (entry.opt->count() == 0) {
                    try {
                        entry.set(value);
                    } catch (const json::exception& e) {
                        throw floquet::SpecError("config key '" + key + "': " + e.what());
                    }
                }
            }
        if (!found)
            throw floquet::SpecError("config key '" + key + "' matches no option of this "
                                     "subcommand");
    }
}

json params_json(const floquet::DriveParams& p) {
    return json{{"t1", p.t1.real()},       {"t2", p.t2.real()}, {"gamma0", p.gamma0},
                {"theta", p.theta},        {"mu", p.mu},        {"omega1", p.omega1},
                {"omega2", p.omega2}};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int worker_default() {
    if (const char* env = std::getenv("FLOQUET_WORKERS")) {
        try {
            return std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            throw floquet::SpecError(std::string("FLOQUET_WORKERS is not an integer: '") + env +
                                     "'");
        }
    }
    return 1;
}

// "a", "-2.5", "i", "-i", "0.75i", "1+2i", "1.5-0.25i" -> complex.
cdouble parse_complex(std::string s) {
    std::erase(s, ' ');
    if (s.empty()) throw floquet::SpecError("empty complex literal");
    auto to_real = [](const std::string& t) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            throw floquet::SpecError("malformed number '" + t + "'");
        }
        if (used != t.size()) throw floquet::SpecError("malformed number '" + t + "'");
        return v;
    };
    if (s.back() != 'i') return cdouble(to_real(s), 0.0);
    s.pop_back();  // imaginary tail
    // Split at the last +/- that is not a leading sign or an exponent sign.
    std::size_t split = std::string::npos;
    for (std::size_t j = s.size(); j-- > 1;)
        if ((s[j] == '+' || s[j] == '-') && s[j - 1] != 'e' && s[j - 1] != 'E') {
            split = j;
            break;
        }
    auto imag_of = [&](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return to_real(t);
    };
    if (split == std::string::npos) return cdouble(0.0, imag_of(s));
    return cdouble(to_real(s.substr(0, split)), imag_of(s.substr(split)));
}

// "t1:0:10:41" -> axis sweeping t1 over [0, 10] with 41 points.
floquet::AxisSpec parse_axis(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    if (parts.size() != 4)
        throw floquet::SpecError("axis '" + text + "' must look like param:lo:hi:count");
    floquet::AxisSpec ax;
    ax.param = floquet::param_from_name(parts[0]);
    try {
        ax.lo = std::stod(parts[1]);
        ax.hi = std::stod(parts[2]);
        ax.count = std::stoi(parts[3]);
    } catch (const std::exception&) {
        throw floquet::SpecError("axis '" + text + "' has malformed numbers");
    }
    return ax;
}

// "gamma=0.75i*t1" -> bind gamma to 0.75i times the t1 axis.
floquet::Binding parse_binding(const std::string& text) {
    const auto eq = text.find('=');
    const auto star = text.rfind('*');
    if (eq == std::string::npos || star == std::string::npos || star < eq)
        throw floquet::SpecError("binding '" + text + "' must look like param=coeff*axis");
    floquet::Binding b;
    b.target = floquet::param_from_name(text.substr(0, eq));
    b.coeff = parse_complex(text.substr(eq + 1, star - eq - 1));
    b.source = floquet::param_from_name(text.substr(star + 1));
    return b;
}

int run_invariants(const Options& o) {
    const auto w = floquet::invariants(o.drive(), o.samples);
    emit(json{{"W0", json_of(w.w0)},
              {"Wpi", json_of(w.wpi)},
              {"W1", json_of(w.w1)},
              {"W2", json_of(w.w2)},
              {"min_modulus", w.min_modulus},
              {"samples_used", w.samples_used},
              {"residual", w.residual},
              {"params", params_json(o.drive())}});
    return 0;
}

int run_spectrum(const Options& o) {
    const auto p = o.drive();
    const auto qs =
        floquet::quasi_spectrum(floquet::open_floquet(floquet::build_chain(p, o.cells)), o.eps_e);
    json j{{"cells", o.cells},
           {"modes", qs.energies.size()},
           {"n0", qs.n0},
           {"npi", qs.npi},
           {"zero_count", qs.zero_count},
           {"pi_count", qs.pi_count},
           {"odd_pairing", qs.odd_pairing},
           {"band_overlap", qs.band_overlap},
           {"degenerate_classification", qs.degenerate_classification},
           {"params", params_json(p)}};
    if (!o.out_csv.empty()) {
        std::ofstream out(o.out_csv, std::ios::binary);
        if (!out) throw floquet::SpecError("cannot open output file '" + o.out_csv + "'");
        floquet::write_spectrum_csv(out, qs);
        j["csv"] = o.out_csv;
    }
    emit(j);
    return 0;
}

int run_edges(const Options& o) {
    const auto p = o.drive();
    const auto qs = floquet::quasi_spectrum(
        floquet::open_floquet(floquet::build_chain(p, o.cells)), o.eps_e, /*with_vectors=*/true);
    json modes = json::array();
    for (std::size_t j = 0; j < qs.energies.size(); ++j) {
        if (qs.classes[j] == 'b') continue;
        modes.push_back(json{{"re_E", qs.energies[j].real()},
                             {"im_E", qs.energies[j].imag()},
                             {"class", qs.classes[j] == '0' ? "zero" : "pi"},
                             {"edge_weight", qs.edge_weight[j]}});
    }
    emit(json{{"cells", o.cells},
              {"n0", qs.n0},
              {"npi", qs.npi},
              {"zero_count", qs.zero_count},
              {"pi_count", qs.pi_count},
              {"odd_pairing", qs.odd_pairing},
              {"band_overlap", qs.band_overlap},
              {"degenerate_classification", qs.degenerate_classification},
              {"modes", modes},
              {"params", params_json(p)}});
    return 0;
}

int run_verify(const Options& o) {
    const auto r = floquet::verify_bulk_boundary(o.drive(), o.cells, o.samples, o.eps_e);
    emit(json{{"pass", r.pass},
              {"W0", json_of(r.w0)},
              {"Wpi", json_of(r.wpi)},
              {"n0", r.n0},
              {"npi", r.npi},
              {"min_modulus", r.min_modulus},
              {"odd_pairing", r.odd_pairing},
              {"band_overlap", r.band_overlap},
              {"degenerate_classification", r.degenerate_classification},
              {"params", params_json(o.drive())}});
    return r.pass ? 0 : 1;
}

int run_sweep_cmd(const Options& o) {
    floquet::SweepSpec spec;
    if (o.axis_x.empty() || o.axis_y.empty())
        throw floquet::SpecError("sweep needs --axis-x and --axis-y");
    spec.x = parse_axis(o.axis_x);
    spec.y = parse_axis(o.axis_y);
    if (!o.grid.empty()) {
        const auto x = o.grid.find('x');
        try {
            if (x == std::string::npos) throw std::invalid_argument(o.grid);
            spec.x.count = std::stoi(o.grid.substr(0, x));
            spec.y.count = std::stoi(o.grid.substr(x + 1));
        } catch (const std::exception&) {
            throw floquet::SpecError("grid '" + o.grid + "' must look like NXxNY");
        }
    }
    for (const std::string& b : o.bindings) spec.bindings.push_back(parse_binding(b));
    if (o.targets.empty()) throw floquet::SpecError("sweep needs at least one --target");
    for (const std::string& t : o.targets) {
        std::string cur;
        for (char c : t + ",") {
            if (c == ',') {
                if (!cur.empty()) spec.targets.push_back(floquet::target_from_name(cur));
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
    }
    spec.base = o.drive();
    spec.samples = o.samples;
    spec.cells = o.cells;
    spec.eps_e = o.eps_e;

    const int workers = o.workers > 0 ? o.workers : worker_default();
    std::cerr << "sweep: " << spec.x.count << "x" << spec.y.count << " grid, "
              << spec.targets.size() << " target(s), " << workers << " worker(s)\n";
    const floquet::PhaseDiagram d = floquet::run_sweep(spec, workers);

    int ok = 0, gap = 0, err = 0;
    for (const auto& cell : d.grid[0]) {
        if (cell.status == floquet::CellStatus::ok) ++ok;
        if (cell.status == floquet::CellStatus::gap_closure) ++gap;
        if (cell.status == floquet::CellStatus::error) ++err;
    }
    json j{{"nx", d.nx()},
           {"ny", d.ny()},
           {"cells_total", d.nx() * d.ny()},
           {"ok", ok},
           {"gap_closure", gap},
           {"error", err},
           {"elapsed_seconds", d.elapsed_seconds},
           {"workers", workers}};
    json names = json::array();
    for (auto t : spec.targets) names.push_back(floquet::target_name(t));
    j["targets"] = names;

    if (!o.out_csv.empty()) {
        std::ofstream out(o.out_csv, std::ios::binary);
        if (!out) throw floquet::SpecError("cannot open output file '" + o.out_csv + "'");
        floquet::write_diagram_csv(out, d);
        j["csv"] = o.out_csv;
    }
    if (!o.out_ppm.empty()) {
        json written = json::array();
        for (auto t : spec.targets) {
            std::string path = o.out_ppm;
            if (spec.targets.size() > 1) {
                const auto dot = path.rfind('.');
                const std::string tag = std::string("_") + floquet::target_name(t);
                if (dot == std::string::npos) path += tag;
                else path.insert(dot, tag);
            }
            std::ofstream out(path, std::ios::binary);
            if (!out) throw floquet::SpecError("cannot open output file '" + path + "'");
            const std::string bytes = floquet::render_heatmap(d, t);
            out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
            written.push_back(path);
        }
        j["ppm"] = written;
    }
    emit(j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Floquet invariants and spectra of a periodically quenched "
                 "non-Hermitian long-range chain"};
    app.require_subcommand(1);

    Options inv_o, spec_o, edge_o, ver_o, swp_o;

    CLI::App* inv = app.add_subcommand("invariants", "winding invariants (W0, Wpi, W1, W2)");
    add_drive_options(inv_o, inv);

    CLI::App* spc =
        app.add_subcommand("spectrum", "complex quasienergy spectrum of a finite chain");
    add_drive_options(spec_o, spc);
    add_string(spec_o, spc, "--out-csv", spec_o.out_csv, "write per-mode CSV here");

    CLI::App* edg = app.add_subcommand("edges", "edge-mode counts and localization weights");
    add_drive_options(edge_o, edg);

    CLI::App* ver = app.add_subcommand("verify", "bulk-boundary check: edge pairs vs |W0|, |Wpi|");
    add_drive_options(ver_o, ver);

    CLI::App* swp = app.add_subcommand("sweep", "phase diagram over a parameter plane");
    add_drive_options(swp_o, swp);
    add_string(swp_o, swp, "--axis-x", swp_o.axis_x, "x axis as param:lo:hi:count");
    add_string(swp_o, swp, "--axis-y", swp_o.axis_y, "y axis as param:lo:hi:count");
    add_string(swp_o, swp, "--grid", swp_o.grid, "override axis counts, e.g. 41x41");
    add_string_list(swp_o, swp, "--bind", swp_o.bindings,
                    "bind a parameter, e.g. gamma=0.75i*t1");
    add_string_list(swp_o, swp, "--target", swp_o.targets,
                    "quantities to record: W0,Wpi,W1,W2,n0,npi");
    add_int(swp_o, swp, "--workers", swp_o.workers,
            "worker threads (default $FLOQUET_WORKERS or 1)");
    add_string(swp_o, swp, "--out-csv", swp_o.out_csv, "write the diagram CSV here");
    add_string(swp_o, swp, "--out-ppm", swp_o.out_ppm, "write heatmap PPM(s) here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (inv->parsed()) {
            apply_config(inv_o);
            return run_invariants(inv_o);
        }
        if (spc->parsed()) {
            apply_config(spec_o);
            return run_spectrum(spec_o);
        }
        if (edg->parsed()) {
            apply_config(edge_o);
            return run_edges(edge_o);
        }
        if (ver->parsed()) {
            apply_config(ver_o);
            return run_verify(ver_o);
        }
        apply_config(swp_o);
        return run_sweep_cmd(swp_o);
    } catch (const floquet::SpecError& e) {
        std::cout << json{{"error", {{"type", "SpecError"}, {"message", e.what()}}}}.dump(2)
                  << "\n";
        return 2;
    } catch (const floquet::InvalidSizeError& e) {
        std::cout << json{{"error", {{"type", "InvalidSize"}, {"message", e.what()}}}}.dump(2)
                  << "\n";
        return 2;
    } catch (const floquet::GapClosureError& e) {
        std::cout << json{{"error", {{"type", "GapClosure"}, {"message", e.what()}, {"k", e.k}}}}
                         .dump(2)
                  << "\n";
        return 1;
    } catch (const floquet::NonConvergenceError& e) {
        std::cout << json{{"error", {{"type", "NonConvergence"}, {"message", e.what()}}}}.dump(2)
                  << "\n";
        return 1;
    } catch (const floquet::NumericalOverflowError& e) {
        std::cout << json{{"error", {{"type", "NumericalOverflow"}, {"message", e.what()}}}}
                         .dump(2)
                  << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cout << json{{"error", {{"type", "Internal"}, {"message", e.what()}}}}.dump(2)
                  << "\n";
        return 1;
    }
}
