// Copyright 2026 The curvegate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// curvegate command-line driver: synth, analyze, sweep.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "curvegate/analysis.hpp"
#include "curvegate/curve.hpp"
#include "curvegate/error.hpp"
#include "curvegate/io.hpp"
#include "curvegate/simulator.hpp"
#include "curvegate/synthesis.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace curvegate;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kNotConverged = 3;

struct Config {
    std::string builtin, curve_file, pulse_file, out = ".";
    std::vector<std::string> params;
    std::vector<std::string> target;
    std::string grid, compare;
    double phi0 = 0.0;
    std::size_t samples = 4096;
    std::size_t refinement = 0;
    std::optional<std::uint64_t> seed;
    double tol1 = 1e-3, tol2 = 1e-3, fit_floor = 1e-13;
    bool lab_frame = false;
};

json vec(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json complex_pair(Complex z) { return json::array({z.real(), z.imag()}); }

std::string csv_line(std::initializer_list<double> values) {
    std::string s;
    for (double v : values) {
        if (!s.empty()) s += ',';
        s += io::format_double(v);
    }
    return s + '\n';
}

/// Collects output files and writes the manifest last.
class Run {
public:
    Run(std::string command, const Config& cfg) : command_(std::move(command)), cfg_(cfg), dir_(cfg.out) {
        fs::create_directories(dir_);
    }

    [[nodiscard]] std::string path(const std::string& name) const { return (dir_ / name).string(); }

    void wrote(const std::string& name) { outputs_.push_back(name); }

    void write_json(const std::string& name, const json& doc) {
        io::write_text_file(path(name), doc.dump(2) + "\n");
        wrote(name);
    }

    void write_text(const std::string& name, const std::string& text) {
        io::write_text_file(path(name), text);
        wrote(name);
    }

    void input(const std::string& file) { inputs_.push_back(file); }

    void warn(const std::string& w) {
        std::cerr << "warning: " << w << '\n';
        warnings_.push_back(w);
    }

    void finish() {
        json m;
        m["tool"] = "curvegate";
        m["version"] = CURVEGATE_VERSION;
        m["command"] = command_;
        json c;
        if (!cfg_.builtin.empty()) c["builtin"] = cfg_.builtin;
        if (!cfg_.curve_file.empty()) c["curve_file"] = cfg_.curve_file;
        if (!cfg_.pulse_file.empty()) c["pulse_file"] = cfg_.pulse_file;
        c["params"] = cfg_.params;
        c["phi0"] = cfg_.phi0;
        c["samples"] = cfg_.samples;
        c["refinement"] = cfg_.refinement;
        c["seed"] = cfg_.seed ? json(*cfg_.seed) : json(nullptr);
        c["target"] = cfg_.target;
        c["grid"] = cfg_.grid;
        c["compare"] = cfg_.compare;
        c["tol1"] = cfg_.tol1;
        c["tol2"] = cfg_.tol2;
        c["fit_floor"] = cfg_.fit_floor;
        c["lab_frame"] = cfg_.lab_frame;
        m["config"] = c;
        json in = json::array();
        for (const auto& f : inputs_) in.push_back({{"path", f}, {"sha256", io::sha256_file(f)}});
        m["inputs"] = in;
        json out = json::array();
        for (const auto& f : outputs_) out.push_back({{"file", f}, {"sha256", io::sha256_file(path(f))}});
        m["outputs"] = out;
        m["warnings"] = warnings_;
        io::write_text_file(path("manifest.json"), m.dump(2) + "\n");
    }

private:
    std::string command_;
    const Config& cfg_;
    fs::path dir_;
    std::vector<std::string> inputs_, outputs_, warnings_;
};

CurveParams parse_params(const Config& cfg) {
    CurveParams p;
    for (const auto& kv : cfg.params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw InputError("--param expects k=v, got '" + kv + "'");
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(kv.substr(eq + 1), &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != kv.size() - eq - 1) throw InputError("--param " + kv + ": value is not a number");
        p[kv.substr(0, eq)] = v;
    }
    if (cfg.seed && cfg.builtin == "fourier" && !p.contains("seed")) p["seed"] = static_cast<double>(*cfg.seed);
    return p;
}

SpaceCurve load_source_curve(const Config& cfg, Run& run) {
    ReparamOptions opts;
    opts.n_samples = cfg.samples;
    if (cfg.samples < 16) throw InputError("--samples must be at least 16");
    if (!cfg.builtin.empty() && !cfg.curve_file.empty()) throw InputError("give either --builtin or --curve-file");
    if (!cfg.builtin.empty()) return builtin_curve(cfg.builtin, parse_params(cfg), opts);
    if (!cfg.curve_file.empty()) {
        if (!cfg.params.empty()) throw InputError("--param applies to --builtin curves only");
        run.input(cfg.curve_file);
        return load_curve(cfg.curve_file, opts);
    }
    throw InputError("a curve source is required: --builtin NAME or --curve-file PATH");
}

json gate_json(const TargetGate& g) {
    json j;
    j["axis"] = vec(g.axis);
    j["angle"] = g.angle;
    j["theta_T"] = g.phase_theta_T;
    j["unitary"] = {{"u1", complex_pair(g.unitary.u1)}, {"u2", complex_pair(g.unitary.u2)}};
    j["euler"] = {{"chi", g.final_angles.chi},
                  {"phi", g.final_angles.phi},
                  {"theta", g.final_angles.theta},
                  {"degenerate", g.final_angles.degenerate}};
    j["phi0"] = g.phi0;
    j["closure_residual"] = g.closure_residual;
    j["non_robust"] = g.non_robust;
    j["pole_degenerate"] = g.pole_degenerate;
    j["warnings"] = g.warnings;
    return j;
}

void write_pulse(Run& run, const PulseWaveform& p, const std::string& stem) {
    save_pulse_csv(p, run.path(stem + ".csv"));
    run.wrote(stem + ".csv");
    save_pulse_json(p, run.path(stem + ".json"));
    run.wrote(stem + ".json");
}

int cmd_synth(const Config& cfg) {
    Run run("synth", cfg);
    const SpaceCurve curve = load_source_curve(cfg, run);
    const FrenetData f = frenet_data(curve);
    if (f.flagged_count() > 0) run.warn(std::to_string(f.flagged_count()) + " samples below the curvature floor");
    const PulseWaveform pulse = pulses_from_curve(f, cfg.phi0, curve.source_tag());
    const TargetGate gate = target_gate_from_curve(curve, f, cfg.phi0, cfg.tol1);
    for (const auto& w : gate.warnings) run.warn(w);

    write_pulse(run, pulse, "pulse");
    std::string frenet = "t,kappa,tau\n";
    for (std::size_t i = 0; i < f.size(); ++i) frenet += csv_line({curve.time(i), f.curvature[i], f.torsion[i]});
    run.write_text("frenet.csv", frenet);
    save_curve_csv(curve, run.path("curve.csv"));
    run.wrote("curve.csv");

    const Propagation check = propagate(pulse, 0.0);
    json g = gate_json(gate);
    g["source"] = curve.source_tag();
    g["length"] = curve.total_length();
    g["samples"] = curve.intervals();
    g["flagged_samples"] = f.flagged_count();
    g["propagation"] = {{"distance", phase_aligned_distance(check.unitary, gate.unitary)},
                        {"refinement", check.refinement},
                        {"converged", check.converged}};
    if (cfg.lab_frame) {
        const std::vector<double> det = single_axis_detuning(pulse);
        const PulseWaveform lab = transform_to_lab_frame(pulse, det);
        write_pulse(run, lab, "pulse_lab");
        double mean = 0.0;
        for (double d : det) mean += d;
        mean /= static_cast<double>(det.size());
        double var = 0.0;
        for (double d : det) var += (d - mean) * (d - mean);
        const double sd = std::sqrt(var / static_cast<double>(det.size()));
        g["lab_frame"] = {{"mean_detuning", mean},
                          {"detuning_cv", mean != 0.0 ? sd / std::abs(mean) : 0.0},
                          {"frame_rotation",
                           {{"u1", complex_pair(frame_rotation(det, pulse.dt()).u1)},
                            {"u2", complex_pair(frame_rotation(det, pulse.dt()).u2)}}}};
    }
    run.write_json("gate.json", g);
    run.finish();
    return check.converged ? kOk : kNotConverged;
}

json report_json(const RobustnessReport& r, const PulseWaveform& p) {
    json j;
    j["classification"] = r.classification;
    j["predicted_slope"] = r.predicted_slope;
    j["length"] = r.length;
    j["closure_residual"] = r.closure_residual;
    j["projected_areas"] = vec(r.projected_areas);
    j["r2_vector"] = vec(r.r2_vector);
    j["magnus"] = {{"a1_vector", vec(r.magnus.a1_vector)},
                   {"a2_vector", vec(r.magnus.a2_vector)},
                   {"a1_norm", r.magnus_a1_norm},
                   {"a2_norm", r.magnus_a2_norm},
                   {"substeps", r.magnus.substeps},
                   {"refinement", r.magnus_refinement},
                   {"last_change", r.magnus_last_change}};
    j["tol1"] = r.tol1;
    j["tol2"] = r.tol2;
    const auto& rc = r.reconstruction;
    j["reconstruction"] = {{"refinement", rc.refinement},
                           {"speed_error", rc.speed_error},
                           {"converged", rc.converged},
                           {"theta_T", rc.theta.empty() ? 0.0 : rc.theta.back()}};
    j["pulse"] = {{"samples", p.size()},
                  {"dt", p.dt()},
                  {"duration", p.duration()},
                  {"sha256", p.metadata.file_sha256},
                  {"resample_error_bound",
                   p.metadata.resample_error_bound ? json(*p.metadata.resample_error_bound) : json(nullptr)},
                  {"warnings", p.metadata.warnings}};
    j["warnings"] = r.warnings;
    return j;
}

PulseWaveform load_pulse(const Config& cfg, Run& run) {
    if (cfg.pulse_file.empty()) throw InputError("--pulse-file is required");
    run.input(cfg.pulse_file);
    PulseWaveform p = import_external_pulse(cfg.pulse_file);
    for (const auto& w : p.metadata.warnings) run.warn(w);
    return p;
}

int cmd_analyze(const Config& cfg) {
    Run run("analyze", cfg);
    const PulseWaveform pulse = load_pulse(cfg, run);
    ReportOptions opts;
    opts.tol1 = cfg.tol1;
    opts.tol2 = cfg.tol2;
    if (cfg.refinement > 0) opts.reconstruction.refinement = cfg.refinement;
    const RobustnessReport rep = robustness_report(pulse, opts);
    for (const auto& w : rep.warnings) run.warn(w);
    run.write_json("report.json", report_json(rep, pulse));
    save_curve_csv(rep.reconstruction.curve, run.path("curve.csv"));
    run.wrote("curve.csv");
    std::string theta = "t,theta\n";
    for (std::size_t i = 0; i < rep.reconstruction.theta.size(); ++i) {
        theta += csv_line({pulse.time(i), rep.reconstruction.theta[i]});
    }
    run.write_text("theta.csv", theta);
    run.finish();
    std::cout << "classification: " << rep.classification << " (predicted slope " << rep.predicted_slope << ")\n";
    const bool converged = rep.reconstruction.converged && rep.magnus_last_change < opts.magnus_tol;
    return converged ? kOk : kNotConverged;
}

std::vector<double> parse_numbers(const std::string& s, const std::string& what) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw InputError(what + ": '" + item + "' is not a number");
        v.push_back(x);
    }
    return v;
}

double parse_angle(const std::string& s) {
    if (s == "pi") return std::numbers::pi;
    if (s == "-pi") return -std::numbers::pi;
    const auto v = parse_numbers(s, "angle");
    if (v.size() != 1) throw InputError("angle expects one number");
    return v[0];
}

/// Explicit targets: `axis=x,y,z angle=RAD` or `matrix=re00,im00,re01,im01,re10,im10,re11,im11`.
std::optional<TargetGate> parse_target(const std::vector<std::string>& tokens) {
    std::map<std::string, std::string> kv;
    for (const auto& tok : tokens) {
        std::stringstream ss(tok);
        std::string part;
        while (ss >> part) {
            if (part == "from-curve") {
                kv["from-curve"] = "";
                continue;
            }
            const auto eq = part.find('=');
            if (eq == std::string::npos) throw InputError("--target: cannot parse '" + part + "'");
            kv[part.substr(0, eq)] = part.substr(eq + 1);
        }
    }
    if (kv.contains("from-curve")) {
        if (kv.size() != 1) throw InputError("--target from-curve takes no other keys");
        return std::nullopt;
    }
    if (kv.contains("matrix")) {
        if (kv.size() != 1) throw InputError("--target matrix=... takes no other keys");
        const auto m = parse_numbers(kv["matrix"], "matrix");
        if (m.size() != 8) throw InputError("--target matrix expects 8 numbers (re, im of row-major entries)");
        const Complex2x2 u{{Complex{m[0], m[1]}, Complex{m[2], m[3]}, Complex{m[4], m[5]}, Complex{m[6], m[7]}}};
        const Complex2x2 uu = u.adjoint() * u;
        const double err = std::abs(uu(0, 0) - 1.0) + std::abs(uu(1, 1) - 1.0) + std::abs(uu(0, 1)) + std::abs(uu(1, 0));
        if (!(err < 1e-8)) throw InputError("--target matrix is not unitary");
        const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
        const Complex s = 1.0 / std::sqrt(det);
        return gate_from_unitary(Unitary2{s * u(0, 0), s * u(1, 0)});
    }
    if (!kv.contains("axis") || !kv.contains("angle") || kv.size() != 2) {
        throw InputError("--target expects 'axis=x,y,z angle=RAD', 'matrix=...' or 'from-curve'");
    }
    const auto a = parse_numbers(kv["axis"], "axis");
    if (a.size() != 3) throw InputError("--target axis expects three numbers");
    const Vec3 axis{a[0], a[1], a[2]};
    if (!(norm(axis) > 0.0)) throw InputError("--target axis must be nonzero");
    return gate_from_axis_angle(axis, parse_angle(kv["angle"]));
}

/// `lo:hi:n[:log|:lin]`, values of delta_beta * T.
std::vector<double> parse_grid(const std::string& spec, double duration) {
    if (spec.empty()) return sweep_grid(duration);
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() < 3 || parts.size() > 4) throw InputError("--grid expects lo:hi:npts[:log|:lin]");
    const double lo = parse_numbers(parts[0], "grid lo").at(0);
    const double hi = parse_numbers(parts[1], "grid hi").at(0);
    const double np = parse_numbers(parts[2], "grid npts").at(0);
    if (!(np >= 2.0) || np != std::floor(np) || np > 1e5) throw InputError("--grid npts must be an integer >= 2");
    const std::size_t n = static_cast<std::size_t>(np);
    const std::string mode = parts.size() == 4 ? parts[3] : "log";
    if (mode == "log") return sweep_grid(duration, lo, hi, n);
    if (mode != "lin") throw InputError("--grid spacing must be log or lin");
    if (!(lo > 0.0) || !(hi > lo)) throw InputError("--grid needs 0 < lo < hi");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = (lo + (hi - lo) * static_cast<double>(i) / (n - 1)) / duration;
    return g;
}

json sweep_json(const NoiseSweepResult& r) {
    json j;
    j["slope"] = std::isfinite(r.slope) ? json(r.slope) : json(nullptr);
    j["intercept"] = std::isfinite(r.intercept) ? json(r.intercept) : json(nullptr);
    j["residual"] = std::isfinite(r.residual) ? json(r.residual) : json(nullptr);
    j["fit_points"] = r.fit_points;
    j["fit_range"] = json::array({r.fit_lo, r.fit_hi});
    j["max_asymmetry"] = r.max_asymmetry;
    j["validity_bound"] = r.validity_bound;
    j["refinement"] = r.refinement;
    j["converged"] = r.converged;
    j["warnings"] = r.warnings;
    return j;
}

std::string sweep_csv(const NoiseSweepResult& r) {
    std::string s = "delta_beta,infidelity\n";
    for (std::size_t i = 0; i < r.delta_beta.size(); ++i) s += csv_line({r.delta_beta[i], r.infidelity[i]});
    return s;
}

int cmd_sweep(const Config& cfg) {
    Run run("sweep", cfg);
    const std::optional<TargetGate> explicit_target = parse_target(cfg.target);
    if (!cfg.compare.empty() && cfg.compare != "square") throw InputError("--compare accepts only 'square'");
    const bool from_file = !cfg.pulse_file.empty();
    if (from_file && (!cfg.builtin.empty() || !cfg.curve_file.empty())) {
        throw InputError("give either --pulse-file or a curve source");
    }
    PulseWaveform pulse;
    TargetGate target;
    std::string target_source = "explicit";
    if (from_file) {
        pulse = load_pulse(cfg, run);
        if (explicit_target) {
            target = *explicit_target;
        } else {
            // the reconstructed curve starts with T = z and N set by the initial phase
            const ReconstructedCurve rc = curve_from_pulse(pulse);
            target = target_gate_from_curve(rc.curve, frenet_data(rc.curve), pulse.phi()[0], cfg.tol1);
            target_source = "reconstructed-curve";
        }
    } else {
        const SpaceCurve curve = load_source_curve(cfg, run);
        const FrenetData f = frenet_data(curve);
        pulse = pulses_from_curve(f, cfg.phi0, curve.source_tag());
        target = explicit_target ? *explicit_target : target_gate_from_curve(curve, f, cfg.phi0, cfg.tol1);
        if (!explicit_target) target_source = "curve";
    }
    if (cfg.target.empty()) throw InputError("--target is required");
    for (const auto& w : target.warnings) run.warn(w);

    SweepOptions opts;
    opts.fit_floor = cfg.fit_floor;
    opts.propagation.refinement = cfg.refinement;
    const std::vector<double> grid = parse_grid(cfg.grid, pulse.duration());
    const NoiseSweepResult main = infidelity_sweep(pulse, target.unitary, grid, opts);
    for (const auto& w : main.warnings) run.warn(w);
    run.write_text("sweep.csv", sweep_csv(main));

    json fit;
    fit["target"] = {{"source", target_source},
                     {"axis", vec(target.axis)},
                     {"angle", target.angle},
                     {"unitary", {{"u1", complex_pair(target.unitary.u1)}, {"u2", complex_pair(target.unitary.u2)}}}};
    fit["duration"] = pulse.duration();
    fit["gate_error_at_zero_noise"] = average_gate_infidelity(propagate(pulse, 0.0).unitary, target.unitary);
    fit["fit"] = sweep_json(main);
    bool converged = main.converged;
    if (cfg.compare == "square") {
        const PulseWaveform sq = square_pulse(target.axis, target.angle, pulse.duration());
        const NoiseSweepResult base = infidelity_sweep(sq, target.unitary, grid, opts);
        run.write_text("sweep_square.csv", sweep_csv(base));
        fit["square"] = sweep_json(base);
        converged = converged && base.converged;
    }
    run.write_json("fit.json", fit);
    run.finish();
    std::cout << "slope: " << (std::isfinite(main.slope) ? io::format_double(main.slope) : "nan") << '\n';
    return converged ? kOk : kNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"curvegate: noise-robust single-qubit gates from space curves"};
    app.set_version_flag("--version", std::string(CURVEGATE_VERSION));
    app.require_subcommand(1);
    Config cfg;

    auto curve_source = [&](CLI::App* sub) {
        sub->add_option("--builtin", cfg.builtin, "builtin curve name");
        sub->add_option("--param", cfg.params, "builtin parameter k=v (repeatable)");
        sub->add_option("--curve-file", cfg.curve_file, "curve CSV (t,x,y,z) or JSON");
        sub->add_option("--phi0", cfg.phi0, "initial drive phase in rad")->capture_default_str();
        sub->add_option("--samples", cfg.samples, "arc-length intervals")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "seed for the fourier builtin");
    };
    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out, "output directory")->capture_default_str();
        sub->add_option("--tol1", cfg.tol1, "closure tolerance relative to length")->capture_default_str();
    };

    CLI::App* synth = app.add_subcommand("synth", "curve -> pulse files and gate report");
    curve_source(synth);
    common(synth);
    synth->add_flag("--lab-frame", cfg.lab_frame, "also export the single-axis lab-frame pulse");

    CLI::App* analyze = app.add_subcommand("analyze", "pulse -> robustness report and curve");
    analyze->add_option("--pulse-file", cfg.pulse_file, "pulse CSV or JSON")->required();
    analyze->add_option("--refinement", cfg.refinement, "initial reconstruction substeps per sample");
    analyze->add_option("--tol2", cfg.tol2, "area tolerance relative to length^2")->capture_default_str();
    common(analyze);

    CLI::App* sweep = app.add_subcommand("sweep", "quasistatic-noise infidelity sweep and slope fit");
    sweep->add_option("--pulse-file", cfg.pulse_file, "pulse CSV or JSON");
    curve_source(sweep);
    sweep->add_option("--target", cfg.target, "'axis=x,y,z angle=RAD' | 'matrix=...' | from-curve")->expected(1, 2);
    sweep->add_option("--grid", cfg.grid, "lo:hi:npts[:log|:lin] in units of delta_beta*T");
    sweep->add_option("--compare", cfg.compare, "baseline: square");
    sweep->add_option("--refinement", cfg.refinement, "propagation substeps per sample (0 = adaptive)");
    sweep->add_option("--fit-floor", cfg.fit_floor, "infidelities below this are left out of the fit")
        ->capture_default_str();
    common(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }
    try {
        if (*synth) return cmd_synth(cfg);
        if (*analyze) return cmd_analyze(cfg);
        return cmd_sweep(cfg);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNotConverged;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
}
