#include "logse/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "logse/operators.hpp"

namespace logse {

using json = nlohmann::json;

ExperimentKind kind_from_string(const std::string& s) {
    if (s == "temporal") return ExperimentKind::temporal;
    if (s == "spatial") return ExperimentKind::spatial;
    if (s == "cfl") return ExperimentKind::cfl;
    if (s == "soliton") return ExperimentKind::soliton;
    if (s == "vortex") return ExperimentKind::vortex;
    if (s == "profile") return ExperimentKind::profile;
    throw std::invalid_argument("unknown experiment kind: " + s);
}

std::string to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::temporal: return "temporal";
        case ExperimentKind::spatial: return "spatial";
        case ExperimentKind::cfl: return "cfl";
        case ExperimentKind::soliton: return "soliton";
        case ExperimentKind::vortex: return "vortex";
        case ExperimentKind::profile: return "profile";
    }
    return "?";
}

void ExperimentConfig::validate() const {
    if (!(b > a) || !(T > 0.0)) throw std::invalid_argument("config: bad domain or horizon");
    const bool sweep = kind == ExperimentKind::temporal || kind == ExperimentKind::spatial ||
                       kind == ExperimentKind::cfl;
    if (!sweep) return;
    if (hs.empty()) throw std::invalid_argument("config: sweep needs a mesh list");
    double min_h = *std::min_element(hs.begin(), hs.end());
    double min_tau = T;
    for (double t : taus) min_tau = std::min(min_tau, t);
    for (double c : ratios)
        for (double h : hs) min_tau = std::min(min_tau, c * h * h);
    if (kind == ExperimentKind::spatial) min_tau = std::min(min_tau, tau_e * 10.0);
    if (!(tau_e <= min_tau / 10.0))
        throw std::invalid_argument("config: reference tau_e must be <= min sweep tau / 10");
    if (!(h_e <= min_h / 4.0))
        throw std::invalid_argument("config: reference h_e must be <= min sweep h / 4");
}

ExperimentConfig preset_config(ExperimentKind kind, const std::string& preset) {
    const bool paper = preset == "paper";
    if (!paper && preset != "desk")
        throw std::invalid_argument("unknown preset: " + preset + " (expected paper or desk)");

    ExperimentConfig c;
    c.kind = kind;
    switch (kind) {
        case ExperimentKind::temporal:
            c.initial = "h2";
            c.lambda = -1.0;
            c.T = 1.0;
            // ray constant 1/8: large ratios sit outside the step-size
            // restriction and excite the high-mode instability (see README)
            if (paper) {
                c.hs = {0.125, 0.0625, 0.03125, 0.015625};  // 2^-3 .. 2^-6
                c.taus = {1e-1, 5e-2, 2e-2, 1e-2, 5e-3, 2e-3, 1e-3};
                c.ratios = {0.125};
                c.tau_e = 2.5e-6;  // <= (finest ray step)/10
                c.h_e = 1.0 / 256.0;
            } else {
                c.T = 0.25;
                c.hs = {0.125, 0.0625, 0.03125};
                c.taus = {2e-2, 1e-2, 5e-3};
                c.ratios = {0.125};
                c.tau_e = 1e-5;
                c.h_e = 1.0 / 128.0;
            }
            break;
        case ExperimentKind::spatial:
            c.initial = "h2";
            c.lambda = -1.0;
            if (paper) {
                c.T = 0.1;
                c.hs = {0.5, 0.25, 0.125, 0.0625, 0.03125};  // 2^-1 .. 2^-5
                c.tau_e = 1e-6;
                c.h_e = 1.0 / 128.0;
            } else {
                c.T = 0.1;
                c.hs = {0.5, 0.25, 0.125};
                c.tau_e = 1e-5;
                c.h_e = 1.0 / 32.0;
            }
            break;
        case ExperimentKind::cfl:
            c.initial = "h2";
            c.lambda = -1.0;
            c.T = paper ? 1.0 : 0.25;
            c.hs = paper ? std::vector<double>{0.125, 0.0625, 0.03125}
                         : std::vector<double>{0.25, 0.125, 0.0625};
            c.ratios = {0.1, 1.0, 10.0};
            c.tau_e = paper ? 5e-6 : 1e-5;
            c.h_e = paper ? 1.0 / 256.0 : 1.0 / 64.0;
            break;
        case ExperimentKind::soliton:
            c.a = -32.0;
            c.b = 32.0;
            c.initial = "two_gaussons";
            c.lambda = -1.0;
            c.T = 1.0;
            if (paper) {
                c.n = 2048;  // h = 2^-5
                c.tau = 2.5e-5;
            } else {
                c.n = 1024;  // h = 2^-4
                c.tau = 1e-4;
            }
            break;
        case ExperimentKind::vortex:
            c.initial = "vortex";
            if (paper) {
                c.a = -32.0;
                c.b = 32.0;
                c.n = 2048;  // h = 2^-5
                c.tau = 1e-5;
                c.T = 1.0;
            } else {
                c.a = -16.0;
                c.b = 16.0;
                c.n = 256;
                c.tau = 1e-3;
                c.T = 0.5;
            }
            c.lambda = c.vortex_lambda;
            break;
        case ExperimentKind::profile:
            c.initial = "vortex";
            c.profile_mesh = paper ? 2048 : 400;
            break;
    }
    return c;
}

namespace {

PotentialSpec potential_from_json(const json& j, PotentialSpec base) {
    for (auto& [key, val] : j.items()) {
        if (key == "kind") {
            std::string k = val.get<std::string>();
            if (k == "zero")
                base.kind = PotentialSpec::Kind::zero;
            else if (k == "square_well")
                base.kind = PotentialSpec::Kind::square_well;
            else if (k == "disorder")
                base.kind = PotentialSpec::Kind::disorder;
            else if (k == "tabulated")
                base.kind = PotentialSpec::Kind::tabulated;
            else
                throw std::invalid_argument("config: unknown potential kind " + k);
        } else if (key == "depth")
            base.depth = val.get<double>();
        else if (key == "half_width")
            base.half_width = val.get<double>();
        else if (key == "alpha")
            base.alpha = val.get<double>();
        else if (key == "seed")
            base.seed = val.get<std::uint64_t>();
        else if (key == "n_ref")
            base.n_ref = val.get<int>();
        else if (key == "table")
            base.table = val.get<std::vector<double>>();
        else
            throw std::invalid_argument("config: unknown potential key " + key);
    }
    return base;
}

}  // namespace

ExperimentConfig load_config(const std::string& json_path, ExperimentConfig base) {
    std::ifstream is(json_path);
    if (!is) throw std::invalid_argument("cannot open config file " + json_path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    for (auto& [key, val] : j.items()) {
        if (key == "a") base.a = val.get<double>();
        else if (key == "b") base.b = val.get<double>();
        else if (key == "n") base.n = val.get<int>();
        else if (key == "lambda") base.lambda = val.get<double>();
        else if (key == "T") base.T = val.get<double>();
        else if (key == "tau") base.tau = val.get<double>();
        else if (key == "scheme") {
            std::string s = val.get<std::string>();
            if (s == "ewi_fs") base.scheme = Scheme::ewi_fs;
            else if (s == "strang") base.scheme = Scheme::strang;
            else throw std::invalid_argument("config: unknown scheme " + s);
        } else if (key == "cfl_policy") {
            std::string s = val.get<std::string>();
            if (s == "enforce") base.cfl_policy = CflPolicy::enforce;
            else if (s == "warn") base.cfl_policy = CflPolicy::warn;
            else if (s == "off") base.cfl_policy = CflPolicy::off;
            else throw std::invalid_argument("config: unknown cfl policy " + s);
        } else if (key == "cfl_constant") base.cfl_constant = val.get<double>();
        else if (key == "potential") base.potential = potential_from_json(val, base.potential);
        else if (key == "initial") base.initial = val.get<std::string>();
        else if (key == "gausson") {
            for (auto& [gk, gv] : val.items()) {
                if (gk == "x0") base.gausson.x0 = gv.get<double>();
                else if (gk == "v") base.gausson.v = gv.get<double>();
                else if (gk == "k1") base.gausson.k1 = gv.get<double>();
                else if (gk == "k2") base.gausson.k2 = gv.get<double>();
                else if (gk == "c1") base.gausson.c1 = gv.get<double>();
                else if (gk == "c2") base.gausson.c2 = gv.get<double>();
                else throw std::invalid_argument("config: unknown gausson key " + gk);
            }
        } else if (key == "vortex_lambda") base.vortex_lambda = val.get<double>();
        else if (key == "vortex_x0") base.vortex_x0 = val.get<double>();
        else if (key == "vortex_r0") base.vortex_r0 = val.get<double>();
        else if (key == "profile_mesh") base.profile_mesh = val.get<int>();
        else if (key == "taus") base.taus = val.get<std::vector<double>>();
        else if (key == "hs") base.hs = val.get<std::vector<double>>();
        else if (key == "ratios") base.ratios = val.get<std::vector<double>>();
        else if (key == "tau_e") base.tau_e = val.get<double>();
        else if (key == "h_e") base.h_e = val.get<double>();
        else if (key == "check_reference") base.check_reference = val.get<bool>();
        else if (key == "snapshot_times") base.snapshot_times = val.get<std::vector<double>>();
        else if (key == "seed") base.seed = val.get<std::uint64_t>();
        else if (key == "out_dir") base.out_dir = val.get<std::string>();
        else throw std::invalid_argument("config: unknown key " + key);
    }
    return base;
}

namespace {

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["kind"] = to_string(c.kind);
    j["a"] = c.a;
    j["b"] = c.b;
    j["n"] = c.n;
    j["lambda"] = c.lambda;
    j["T"] = c.T;
    j["tau"] = c.tau;
    j["scheme"] = c.scheme == Scheme::ewi_fs ? "ewi_fs" : "strang";
    j["cfl_policy"] = c.cfl_policy == CflPolicy::enforce
                          ? "enforce"
                          : (c.cfl_policy == CflPolicy::warn ? "warn" : "off");
    j["cfl_constant"] = c.cfl_constant;
    json p;
    switch (c.potential.kind) {
        case PotentialSpec::Kind::zero: p["kind"] = "zero"; break;
        case PotentialSpec::Kind::square_well:
            p["kind"] = "square_well";
            p["depth"] = c.potential.depth;
            p["half_width"] = c.potential.half_width;
            break;
        case PotentialSpec::Kind::disorder:
            p["kind"] = "disorder";
            p["alpha"] = c.potential.alpha;
            p["seed"] = c.potential.seed;
            p["n_ref"] = c.potential.n_ref;
            break;
        case PotentialSpec::Kind::tabulated:
            p["kind"] = "tabulated";
            p["size"] = c.potential.table.size();
            break;
    }
    j["potential"] = p;
    j["initial"] = c.initial;
    j["gausson"] = {{"x0", c.gausson.x0}, {"v", c.gausson.v},   {"k1", c.gausson.k1},
                    {"k2", c.gausson.k2}, {"c1", c.gausson.c1}, {"c2", c.gausson.c2}};
    j["vortex_lambda"] = c.vortex_lambda;
    j["vortex_x0"] = c.vortex_x0;
    j["vortex_r0"] = c.vortex_r0;
    j["profile_mesh"] = c.profile_mesh;
    j["taus"] = c.taus;
    j["hs"] = c.hs;
    j["ratios"] = c.ratios;
    j["tau_e"] = c.tau_e;
    j["h_e"] = c.h_e;
    j["check_reference"] = c.check_reference;
    j["snapshot_times"] = c.snapshot_times;
    j["seed"] = c.seed;
    j["out_dir"] = c.out_dir;
    return j;
}

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out_dir);
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

// snap tau to the nearest exact divisor of T
double snap_tau(double T, double tau) {
    long n = std::max(1L, std::lround(T / tau));
    return T / static_cast<double>(n);
}

int grid_points(const ExperimentConfig& cfg, double h) {
    double n = (cfg.b - cfg.a) / h;
    int ni = static_cast<int>(std::lround(n));
    if (std::abs(n - ni) > 1e-9 || ni < 4 || ni % 2 != 0)
        throw std::invalid_argument("config: h must give an even node count >= 4");
    return ni;
}

SpectralField make_initial(const ExperimentConfig& cfg, const Grid& grid) {
    if (cfg.initial == "h2") return h2_datum(grid);
    if (cfg.initial == "two_gaussons") return two_gaussons(grid, cfg.gausson);
    if (cfg.initial == "gaussian") {
        GaussonPairParams p = cfg.gausson;
        p.x0 = 0.0;
        p.v = 0.0;
        p.c2 = 0.0;
        return two_gaussons(grid, p);
    }
    if (cfg.initial == "tanh") return tanh_datum(grid);
    if (cfg.initial == "vortex") {
        VortexProfile prof =
            solve_vortex_profile(cfg.vortex_lambda, cfg.vortex_r0, cfg.profile_mesh);
        return vortex_dipole(grid, prof, cfg.vortex_x0);
    }
    throw std::invalid_argument("config: unknown initial data " + cfg.initial);
}

SolverConfig solver_config(const ExperimentConfig& cfg, double tau, Scheme scheme) {
    SolverConfig s;
    s.lambda = cfg.lambda;
    s.tau = tau;
    s.T = cfg.T;
    s.scheme = scheme;
    s.cfl_policy = cfg.cfl_policy;
    s.cfl_constant = cfg.cfl_constant;
    return s;
}

SpectralField run_to_T(const ExperimentConfig& cfg, double tau, double h, Scheme scheme) {
    Grid grid = Grid::make_1d(cfg.a, cfg.b, grid_points(cfg, h));
    SpectralField psi = make_initial(cfg, grid);
    return evolve(psi, cfg.potential, solver_config(cfg, tau, scheme), {}).final_state;
}

// Strang reference at (tau_e, h_e), plus the (tau_e/2, h_e) self-consistency
// probe when requested. Returns (reference, probe distance).
std::pair<SpectralField, double> make_reference(const ExperimentConfig& cfg) {
    SpectralField ref = run_to_T(cfg, snap_tau(cfg.T, cfg.tau_e), cfg.h_e, Scheme::strang);
    double probe = 0.0;
    if (cfg.check_reference) {
        SpectralField finer =
            run_to_T(cfg, snap_tau(cfg.T, cfg.tau_e / 2.0), cfg.h_e, Scheme::strang);
        probe = error_norms(ref, finer).first;
    }
    return {ref, probe};
}

ConvergenceRow sweep_point(const ExperimentConfig& cfg, double tau, double h,
                           const SpectralField& ref) {
    SpectralField out = run_to_T(cfg, tau, h, cfg.scheme);
    auto [e2, e1] = error_norms(out, ref);
    return {tau, h, e2, e1};
}

double min_error(const std::vector<ConvergenceReport>& reports) {
    double m = 1e300;
    for (const auto& r : reports)
        for (const auto& row : r.rows) m = std::min(m, row.e_l2);
    return m;
}

void write_report(const ExperimentConfig& cfg, const ConvergenceReport& rep,
                  const std::string& stem) {
    write_report_csv(rep, out_path(cfg, stem + ".csv"));
    write_report_json(rep, out_path(cfg, stem + ".json"));
}

}  // namespace

void write_manifest(const ExperimentConfig& cfg, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << config_to_json(cfg).dump(2) << "\n";
}

TemporalResult run_temporal_convergence(const ExperimentConfig& cfg) {
    cfg.validate();
    auto [ref, probe] = make_reference(cfg);

    TemporalResult res;
    for (double h : cfg.hs) {
        if (cfg.taus.empty()) break;
        ConvergenceReport rep;
        rep.axis = "temporal";
        for (double tau : cfg.taus) rep.rows.push_back(sweep_point(cfg, snap_tau(cfg.T, tau), h, ref));
        fit_report(rep);
        res.per_h.push_back(rep);
    }
    for (double c : cfg.ratios) {
        ConvergenceReport rep;
        rep.axis = "fixed_ratio";
        rep.ratio_c = c;
        for (double h : cfg.hs) rep.rows.push_back(sweep_point(cfg, snap_tau(cfg.T, c * h * h), h, ref));
        fit_report(rep);
        res.per_ratio.push_back(rep);
    }
    double floor = std::min(min_error(res.per_h), min_error(res.per_ratio));
    res.reference_reliable = !cfg.check_reference || probe < 0.1 * floor;

    write_manifest(cfg, out_path(cfg, "manifest.json"));
    for (std::size_t i = 0; i < res.per_h.size(); ++i)
        write_report(cfg, res.per_h[i], "temporal_h" + std::to_string(i));
    for (std::size_t i = 0; i < res.per_ratio.size(); ++i)
        write_report(cfg, res.per_ratio[i], "temporal_ratio" + std::to_string(i));
    return res;
}

SpatialResult run_spatial_convergence(const ExperimentConfig& cfg) {
    cfg.validate();
    auto [ref, probe] = make_reference(cfg);

    SpatialResult res;
    res.report.axis = "spatial";
    double tau = snap_tau(cfg.T, cfg.tau_e);
    for (double h : cfg.hs) res.report.rows.push_back(sweep_point(cfg, tau, h, ref));
    fit_report(res.report);

    // consecutive-pair slope beyond any reasonable fixed order flags the
    // spectral-accuracy regime of smooth data
    for (std::size_t i = 1; i < res.report.rows.size(); ++i) {
        const auto& c0 = res.report.rows[i - 1];
        const auto& c1 = res.report.rows[i];
        double slope = std::log(c0.e_l2 / c1.e_l2) / std::log(c0.h / c1.h);
        if (slope > 6.0) res.spectral_flag = true;
    }
    res.reference_reliable = !cfg.check_reference || probe < 0.1 * min_error({res.report});

    write_manifest(cfg, out_path(cfg, "manifest.json"));
    write_report(cfg, res.report, "spatial");
    return res;
}

CflResult run_cfl_study(const ExperimentConfig& cfg) {
    cfg.validate();
    auto [ref, probe] = make_reference(cfg);

    CflResult res;
    for (double c : cfg.ratios) {
        ConvergenceReport rep;
        rep.axis = "fixed_ratio";
        rep.ratio_c = c;
        for (double h : cfg.hs) rep.rows.push_back(sweep_point(cfg, snap_tau(cfg.T, c * h * h), h, ref));
        fit_report(rep);
        res.rays.push_back(rep);
    }

    // violating ray tau = c sqrt(h): far outside tau ~ h^2
    const double cv = 0.1;
    res.violating.axis = "fixed_ratio";
    res.violating.ratio_c = cv;
    for (double h : cfg.hs)
        res.violating.rows.push_back(sweep_point(cfg, snap_tau(cfg.T, cv * std::sqrt(h)), h, ref));
    fit_report(res.violating);

    // control: same violating ray with the nonlinearity switched off and a
    // smooth potential, where the integrator has no step-size restriction
    ExperimentConfig lin = cfg;
    lin.lambda = 0.0;
    lin.potential = PotentialSpec::disorder(6.0, cfg.seed, 1 << 12);
    auto [lref, lprobe] = make_reference(lin);
    res.control.axis = "fixed_ratio";
    res.control.ratio_c = cv;
    for (double h : cfg.hs)
        res.control.rows.push_back(
            sweep_point(lin, snap_tau(cfg.T, cv * std::sqrt(h)), h, lref));
    fit_report(res.control);

    double floor = std::min(min_error(res.rays), min_error({res.violating, res.control}));
    res.reference_reliable =
        !cfg.check_reference || (probe < 0.1 * floor && lprobe < 0.1 * floor);

    write_manifest(cfg, out_path(cfg, "manifest.json"));
    for (std::size_t i = 0; i < res.rays.size(); ++i)
        write_report(cfg, res.rays[i], "cfl_ray" + std::to_string(i));
    write_report(cfg, res.violating, "cfl_violating");
    write_report(cfg, res.control, "cfl_control");
    return res;
}

SolitonResult run_soliton_collision(const ExperimentConfig& cfg) {
    Grid grid = Grid::make_1d(cfg.a, cfg.b, cfg.n);
    SpectralField psi = make_initial(cfg, grid);

    SamplingPlan plan;
    plan.sample_every = std::max(1L, std::lround(cfg.T / cfg.tau) / 64);
    if (cfg.snapshot_times.empty()) {
        for (int k = 0; k <= 64; ++k) plan.snapshot_times.push_back(cfg.T * k / 64.0);
    } else {
        plan.snapshot_times = cfg.snapshot_times;
    }

    SolitonResult res;
    res.trace = evolve(psi, cfg.potential, solver_config(cfg, snap_tau(cfg.T, cfg.tau),
                                                         cfg.scheme), plan);

    // centroid of |psi|^2 per half-line and sqrt|psi| raster rows
    const Axis& ax = grid.axes[0];
    const int stride = std::max(1, cfg.n / 512);
    std::ofstream raster(out_path(cfg, "raster.csv"));
    raster.precision(17);
    raster << "t";
    for (int j = 0; j < cfg.n; j += stride) raster << "," << ax.node(Basis::periodic, j);
    raster << "\n";

    for (const auto& [t, snap] : res.trace.snapshots) {
        std::vector<cd> nodal = inverse_transform(snap);
        double ml = 0, mr = 0, xl = 0, xr = 0;
        for (int j = 0; j < cfg.n; ++j) {
            double x = ax.node(Basis::periodic, j);
            double rho = std::norm(nodal[j]);
            if (x < 0.0) {
                ml += rho;
                xl += x * rho;
            } else {
                mr += rho;
                xr += x * rho;
            }
        }
        res.centroids.push_back({t, ml > 0 ? xl / ml : 0.0, mr > 0 ? xr / mr : 0.0});
        raster << t;
        for (int j = 0; j < cfg.n; j += stride) raster << "," << std::sqrt(std::abs(nodal[j]));
        raster << "\n";
    }

    std::ofstream cen(out_path(cfg, "centroids.csv"));
    cen.precision(17);
    cen << "t,centroid_left,centroid_right\n";
    for (const auto& row : res.centroids) cen << row[0] << "," << row[1] << "," << row[2] << "\n";

    write_trace_csv(res.trace, out_path(cfg, "trace.csv"));
    write_manifest(cfg, out_path(cfg, "manifest.json"));
    return res;
}

std::pair<int, int> winding_census(const std::vector<cd>& nodal, int nx, int ny) {
    auto phase = [&](int i, int j) { return std::arg(nodal[static_cast<std::size_t>(i) * ny + j]); };
    auto wrap = [](double d) {
        while (d > pi) d -= 2.0 * pi;
        while (d < -pi) d += 2.0 * pi;
        return d;
    };
    int plus = 0, minus = 0;
    for (int i = 0; i + 1 < nx; ++i)
        for (int j = 0; j + 1 < ny; ++j) {
            double s = wrap(phase(i + 1, j) - phase(i, j)) +
                       wrap(phase(i + 1, j + 1) - phase(i + 1, j)) +
                       wrap(phase(i, j + 1) - phase(i + 1, j + 1)) +
                       wrap(phase(i, j) - phase(i, j + 1));
            long w = std::lround(s / (2.0 * pi));
            if (w > 0) plus += static_cast<int>(w);
            if (w < 0) minus += static_cast<int>(-w);
        }
    return {plus, minus};
}

namespace {

struct Charge {
    double x, y;
    int w;
};

std::vector<Charge> locate_charges(const std::vector<cd>& nodal, const Grid& grid) {
    const Axis& ax = grid.axes[0];
    const Axis& ay = grid.axes[1];
    const int nx = ax.n_nodes(Basis::neumann);
    const int ny = ay.n_nodes(Basis::neumann);
    auto phase = [&](int i, int j) { return std::arg(nodal[static_cast<std::size_t>(i) * ny + j]); };
    auto wrap = [](double d) {
        while (d > pi) d -= 2.0 * pi;
        while (d < -pi) d += 2.0 * pi;
        return d;
    };
    std::vector<Charge> charges;
    for (int i = 0; i + 1 < nx; ++i)
        for (int j = 0; j + 1 < ny; ++j) {
            double s = wrap(phase(i + 1, j) - phase(i, j)) +
                       wrap(phase(i + 1, j + 1) - phase(i + 1, j)) +
                       wrap(phase(i, j + 1) - phase(i + 1, j + 1)) +
                       wrap(phase(i, j) - phase(i, j + 1));
            int w = static_cast<int>(std::lround(s / (2.0 * pi)));
            if (w != 0)
                charges.push_back({0.5 * (ax.node(Basis::neumann, i) + ax.node(Basis::neumann, i + 1)),
                                   0.5 * (ay.node(Basis::neumann, j) + ay.node(Basis::neumann, j + 1)),
                                   w});
        }
    return charges;
}

VortexCensus census_of(const std::vector<cd>& nodal, const Grid& grid, double t) {
    VortexCensus c;
    c.t = t;
    std::vector<Charge> charges = locate_charges(nodal, grid);
    double xp = 0, xm = 0;
    int np = 0, nm = 0;
    for (const Charge& ch : charges) {
        if (ch.w > 0) {
            c.n_plus += ch.w;
            xp += ch.x;
            ++np;
        } else {
            c.n_minus -= ch.w;
            xm += ch.x;
            ++nm;
        }
    }
    if (np > 0 && nm > 0) c.separation = std::abs(xp / np - xm / nm);

    // core radius: walk +x from the positive charge until |psi| recovers to 1/2
    if (np > 0) {
        const Axis& ax = grid.axes[0];
        const Axis& ay = grid.axes[1];
        const int ny = ay.n_nodes(Basis::neumann);
        double cx = xp / np, cy = 0.0;
        double ysum = 0.0;
        for (const Charge& ch : charges)
            if (ch.w > 0) ysum += ch.y;
        cy = ysum / np;
        int i0 = static_cast<int>(std::lround((cx - ax.a) / ax.h()));
        int j0 = static_cast<int>(std::lround((cy - ay.a) / ay.h()));
        j0 = std::clamp(j0, 0, ny - 1);
        double prev = 0.0;
        for (int i = i0; i < ax.n_nodes(Basis::neumann); ++i) {
            double m = std::abs(nodal[static_cast<std::size_t>(i) * ny + j0]);
            if (m >= 0.5) {
                double x1 = ax.node(Basis::neumann, i);
                double frac = (m > prev) ? (0.5 - prev) / (m - prev) : 1.0;
                c.core_radius = (x1 - ax.h()) + frac * ax.h() - cx;
                break;
            }
            prev = m;
        }
    }
    return c;
}

}  // namespace

VortexResult run_vortex_dipole(const ExperimentConfig& cfg) {
    Grid grid = Grid::make_2d(cfg.a, cfg.b, cfg.n, cfg.a, cfg.b, cfg.n);
    ExperimentConfig c = cfg;
    c.lambda = cfg.vortex_lambda;
    SpectralField psi = make_initial(c, grid);

    SamplingPlan plan;
    plan.sample_every = std::max(1L, std::lround(cfg.T / cfg.tau) / 16);
    if (cfg.snapshot_times.empty()) {
        for (double f : {0.0, 0.125, 0.25, 0.375, 0.5, 0.75, 1.0})
            plan.snapshot_times.push_back(f * cfg.T);
    } else {
        plan.snapshot_times = cfg.snapshot_times;
    }

    VortexResult res;
    res.trace = evolve(psi, cfg.potential,
                       solver_config(c, snap_tau(cfg.T, cfg.tau), cfg.scheme), plan);

    std::ofstream cen(out_path(cfg, "census.csv"));
    cen.precision(17);
    cen << "t,n_plus,n_minus,separation,core_radius\n";
    const int stride = std::max(1, cfg.n / 128);
    int idx = 0;
    for (const auto& [t, snap] : res.trace.snapshots) {
        std::vector<cd> nodal = inverse_transform(snap);
        VortexCensus vc = census_of(nodal, grid, t);
        res.census.push_back(vc);
        cen << vc.t << "," << vc.n_plus << "," << vc.n_minus << "," << vc.separation << ","
            << vc.core_radius << "\n";

        // |psi| raster of the snapshot, downsampled
        std::ofstream snapcsv(out_path(cfg, "vortex_t" + std::to_string(idx++) + ".csv"));
        snapcsv.precision(17);
        const int nn = grid.axes[0].n_nodes(Basis::neumann);
        for (int i = 0; i < nn; i += stride) {
            for (int j = 0; j < nn; j += stride) {
                if (j > 0) snapcsv << ",";
                snapcsv << std::abs(nodal[static_cast<std::size_t>(i) * nn + j]);
            }
            snapcsv << "\n";
        }
    }

    write_trace_csv(res.trace, out_path(cfg, "trace.csv"));
    write_manifest(cfg, out_path(cfg, "manifest.json"));
    return res;
}

VortexProfile run_profile(const ExperimentConfig& cfg) {
    VortexProfile p = solve_vortex_profile(cfg.vortex_lambda, cfg.vortex_r0, cfg.profile_mesh);
    write_profile_csv(p, out_path(cfg, "profile.csv"));
    write_manifest(cfg, out_path(cfg, "manifest.json"));
    return p;
}

}  // namespace logse
