#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "logse/experiments.hpp"
#include "logse/initial_data.hpp"

using namespace logse;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
    fs::path p = fs::temp_directory_path() / ("logse_exp_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    REQUIRE(is.good());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream os(p);
    os << text;
}

}  // namespace

TEST_CASE("experiment kinds round-trip and config validation") {
    for (const char* name : {"temporal", "spatial", "cfl", "soliton", "vortex", "profile"})
        CHECK(to_string(kind_from_string(name)) == name);
    CHECK_THROWS_AS(kind_from_string("bogus"), std::invalid_argument);

    ExperimentConfig c = preset_config(ExperimentKind::temporal, "desk");
    CHECK_NOTHROW(c.validate());

    ExperimentConfig bad = c;
    bad.b = bad.a;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = c;
    bad.hs.clear();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = c;
    bad.tau_e = 0.1;  // coarser than the sweep it is supposed to resolve
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = c;
    bad.h_e = bad.hs.front();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    // single-run kinds need no sweep lattice
    ExperimentConfig sol = preset_config(ExperimentKind::soliton, "desk");
    sol.hs.clear();
    CHECK_NOTHROW(sol.validate());
}

TEST_CASE("presets validate for every kind") {
    for (auto kind : {ExperimentKind::temporal, ExperimentKind::spatial, ExperimentKind::cfl,
                      ExperimentKind::soliton, ExperimentKind::vortex, ExperimentKind::profile}) {
        for (const char* preset : {"paper", "desk"}) {
            ExperimentConfig c = preset_config(kind, preset);
            CHECK(c.kind == kind);
            CHECK_NOTHROW(c.validate());
        }
    }
    CHECK_THROWS_AS(preset_config(ExperimentKind::temporal, "quick"), std::invalid_argument);
}

TEST_CASE("json config overlay: known keys apply, unknown keys rejected") {
    fs::path dir = fresh_dir("cfg");
    write_file(dir / "good.json", R"({
        "a": -8.0, "b": 8.0, "n": 128, "lambda": 2.5, "T": 0.5, "tau": 0.002,
        "scheme": "strang", "cfl_policy": "enforce", "cfl_constant": 2.0,
        "potential": {"kind": "disorder", "alpha": 4.0, "seed": 11, "n_ref": 4096},
        "initial": "two_gaussons",
        "gausson": {"x0": 3.0, "v": 4.0},
        "hs": [0.25, 0.125], "ratios": [0.5], "tau_e": 1e-6, "h_e": 0.03125,
        "seed": 9, "out_dir": "elsewhere"
    })");

    ExperimentConfig base = preset_config(ExperimentKind::temporal, "desk");
    ExperimentConfig c = load_config((dir / "good.json").string(), base);
    CHECK(c.a == -8.0);
    CHECK(c.b == 8.0);
    CHECK(c.n == 128);
    CHECK(c.lambda == 2.5);
    CHECK(c.T == 0.5);
    CHECK(c.tau == 0.002);
    CHECK(c.scheme == Scheme::strang);
    CHECK(c.cfl_policy == CflPolicy::enforce);
    CHECK(c.cfl_constant == 2.0);
    CHECK(c.potential.kind == PotentialSpec::Kind::disorder);
    CHECK(c.potential.alpha == 4.0);
    CHECK(c.potential.seed == 11);
    CHECK(c.initial == "two_gaussons");
    CHECK(c.gausson.x0 == 3.0);
    CHECK(c.gausson.v == 4.0);
    CHECK(c.gausson.k1 == 1.0);  // untouched keys keep base values
    CHECK(c.hs == std::vector<double>{0.25, 0.125});
    CHECK(c.ratios == std::vector<double>{0.5});
    CHECK(c.seed == 9);
    CHECK(c.out_dir == "elsewhere");

    write_file(dir / "unknown.json", R"({"lambda": 1.0, "lambdaa": 2.0})");
    CHECK_THROWS_AS(load_config((dir / "unknown.json").string(), base), std::invalid_argument);

    write_file(dir / "badpot.json", R"({"potential": {"kind": "harmonic"}})");
    CHECK_THROWS_AS(load_config((dir / "badpot.json").string(), base), std::invalid_argument);

    write_file(dir / "syntax.json", "{not json");
    CHECK_THROWS_AS(load_config((dir / "syntax.json").string(), base), std::invalid_argument);

    CHECK_THROWS_AS(load_config((dir / "missing.json").string(), base), std::invalid_argument);
}

TEST_CASE("manifest echoes the configuration") {
    fs::path dir = fresh_dir("manifest");
    ExperimentConfig c = preset_config(ExperimentKind::soliton, "desk");
    c.seed = 1234;
    c.lambda = -2.0;
    c.potential = PotentialSpec::disorder(0.0, 1234, 1 << 12);
    write_manifest(c, (dir / "manifest.json").string());

    nlohmann::json j = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(j["kind"] == "soliton");
    CHECK(j["seed"] == 1234);
    CHECK(j["lambda"] == -2.0);
    CHECK(j["initial"] == "two_gaussons");
    CHECK(j["potential"]["kind"] == "disorder");
    CHECK(j["potential"]["seed"] == 1234);
    CHECK(j["gausson"]["x0"] == 4.0);
}

TEST_CASE("winding census counts signed plaquette circulation") {
    const int n = 64;
    Grid grid = Grid::make_2d(-8.0, 8.0, n, -8.0, 8.0, n);

    std::vector<cd> constant(static_cast<std::size_t>(n) * n, cd(0.7, -0.2));
    CHECK(winding_census(constant, n, n) == std::pair<int, int>{0, 0});

    // product ansatz: +1 vortex at (1,0), -1 vortex at (-1,0)
    std::vector<cd> dipole(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double x = grid.axes[0].node(Basis::neumann, i);
            double y = grid.axes[1].node(Basis::neumann, j);
            dipole[static_cast<std::size_t>(i) * n + j] =
                cd(x - 1.0, y) * std::conj(cd(x + 1.0, y));
        }
    CHECK(winding_census(dipole, n, n) == std::pair<int, int>{1, 1});

    // co-rotating pair: total charge +2
    std::vector<cd> pair(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double x = grid.axes[0].node(Basis::neumann, i);
            double y = grid.axes[1].node(Basis::neumann, j);
            pair[static_cast<std::size_t>(i) * n + j] = cd(x - 1.0, y) * cd(x + 1.0, y);
        }
    CHECK(winding_census(pair, n, n) == std::pair<int, int>{2, 0});
}

TEST_CASE("vortex dipole datum carries charges (+1, -1) with the expected separation") {
    const int n = 96;
    Grid grid = Grid::make_2d(-16.0, 16.0, n, -16.0, 16.0, n);
    const int nn = grid.axes[0].n_nodes(Basis::neumann);
    VortexProfile prof = solve_vortex_profile(16.0, 8.0, 200);
    for (double x0 : {0.5, 0.25}) {
        SpectralField psi = vortex_dipole(grid, prof, x0);
        std::vector<cd> nodal = inverse_transform(psi);
        CHECK(winding_census(nodal, nn, nn) == std::pair<int, int>{1, 1});
    }
}

TEST_CASE("soliton collision without potential stays reflection-symmetric") {
    ExperimentConfig c = preset_config(ExperimentKind::soliton, "desk");
    c.n = 256;
    c.tau = 5e-4;
    c.T = 0.5;
    c.out_dir = fresh_dir("soliton_sym").string();
    SolitonResult r = run_soliton_collision(c);

    REQUIRE(r.centroids.size() > 10);
    double h = (c.b - c.a) / c.n;
    for (const auto& row : r.centroids) CHECK(std::abs(row[1] + row[2]) < 2.0 * h);
    // packets launched at -+x0 with velocities +-v actually move toward each other
    CHECK(r.centroids.front()[2] > 3.0);
    CHECK(r.centroids.back()[2] < r.centroids.front()[2]);

    // the exponential integrator only conserves mass up to its O(tau) error
    double m0 = r.trace.samples.front().mass;
    CHECK(std::abs(r.trace.samples.back().mass - m0) < 1e-2 * m0);

    for (const char* f : {"raster.csv", "centroids.csv", "trace.csv", "manifest.json"})
        CHECK(fs::exists(fs::path(c.out_dir) / f));

    // raster rows: header + one per snapshot, sqrt-scale values
    std::istringstream raster(slurp(fs::path(c.out_dir) / "raster.csv"));
    std::string line;
    std::getline(raster, line);
    CHECK(line.substr(0, 2) == "t,");
    std::size_t rows = 0;
    while (std::getline(raster, line)) ++rows;
    CHECK(rows == r.centroids.size());
}

TEST_CASE("experiments are deterministic: same seed, byte-identical outputs") {
    ExperimentConfig c = preset_config(ExperimentKind::soliton, "desk");
    c.n = 128;
    c.tau = 1e-3;
    c.T = 0.05;
    c.seed = 7;
    c.potential = PotentialSpec::disorder(0.0, c.seed, 1 << 12);

    fs::path d1 = fresh_dir("det1"), d2 = fresh_dir("det2");
    c.out_dir = d1.string();
    run_soliton_collision(c);
    c.out_dir = d2.string();
    run_soliton_collision(c);
    for (const char* f : {"raster.csv", "centroids.csv", "trace.csv"})
        CHECK(slurp(d1 / f) == slurp(d2 / f));
}

TEST_CASE("spatial sweep flags spectral accuracy for a smooth gaussian") {
    ExperimentConfig c = preset_config(ExperimentKind::spatial, "desk");
    c.initial = "gaussian";
    c.T = 0.1;
    c.hs = {1.0, 0.5, 0.25};
    c.tau_e = 1e-4;
    c.h_e = 0.0625;
    c.out_dir = fresh_dir("spatial_gauss").string();
    SpatialResult r = run_spatial_convergence(c);
    CHECK(r.spectral_flag);
    CHECK(r.reference_reliable);
    REQUIRE(r.report.rows.size() == 3);
    CHECK(r.report.rows.back().e_l2 < 1e-4);
    CHECK(fs::exists(fs::path(c.out_dir) / "spatial.csv"));
    CHECK(fs::exists(fs::path(c.out_dir) / "manifest.json"));
}

TEST_CASE("temporal runner emits per-h and per-ratio reports") {
    ExperimentConfig c = preset_config(ExperimentKind::temporal, "desk");
    c.T = 0.125;
    c.hs = {0.5, 0.25, 0.125};
    c.taus = {5e-3, 2.5e-3, 1.25e-3};
    c.ratios = {0.125};
    c.tau_e = 1e-4;
    c.h_e = 0.03125;
    c.out_dir = fresh_dir("temporal_small").string();
    TemporalResult r = run_temporal_convergence(c);

    REQUIRE(r.per_h.size() == 3);
    REQUIRE(r.per_ratio.size() == 1);
    CHECK(r.reference_reliable);
    for (const auto& rep : r.per_h) {
        REQUIRE(rep.rows.size() == 3);
        CHECK(rep.rows[0].tau > rep.rows[2].tau);           // coarse to fine
        CHECK(rep.rows[0].h == rep.rows[2].h);              // fixed mesh
        CHECK(rep.rows[2].e_l2 < rep.rows[0].e_l2 * 1.05);  // no blow-up on refinement
    }
    const auto& ray = r.per_ratio[0];
    REQUIRE(ray.rows.size() == 3);
    CHECK(ray.ratio_c == 0.125);
    CHECK(ray.rows[2].tau == doctest::Approx(0.125 * 0.125 * 0.125).epsilon(1e-6));
    for (int i = 0; i < 3; ++i) {
        CHECK(fs::exists(fs::path(c.out_dir) / ("temporal_h" + std::to_string(i) + ".csv")));
        CHECK(fs::exists(fs::path(c.out_dir) / ("temporal_h" + std::to_string(i) + ".json")));
    }
    CHECK(fs::exists(fs::path(c.out_dir) / "temporal_ratio0.csv"));
}

TEST_CASE("cfl study: admissible rays converge faster than the violating ray") {
    ExperimentConfig c = preset_config(ExperimentKind::cfl, "desk");
    c.T = 0.25;
    c.hs = {0.5, 0.25, 0.125};
    c.ratios = {0.1};
    c.tau_e = 1e-4;
    c.h_e = 0.03125;
    c.out_dir = fresh_dir("cfl_small").string();
    CflResult r = run_cfl_study(c);

    REQUIRE(r.rays.size() == 1);
    REQUIRE(r.violating.rows.size() == 3);
    REQUIRE(r.control.rows.size() == 3);
    CHECK(r.rays[0].slope_l2 > r.violating.slope_l2);
    // the lambda=0 run on the violating ray is a linear-equation control:
    // no singular nonlinearity, so no order reduction
    CHECK(r.control.slope_l2 > r.violating.slope_l2);
    CHECK(r.control.slope_l2 > 0.7);
    for (const char* f : {"cfl_ray0.csv", "cfl_violating.csv", "cfl_control.csv"})
        CHECK(fs::exists(fs::path(c.out_dir) / f));
}

TEST_CASE("vortex dipole desk run keeps its charges over a short horizon") {
    ExperimentConfig c = preset_config(ExperimentKind::vortex, "desk");
    c.n = 128;
    c.tau = 2e-3;
    c.T = 0.05;
    c.out_dir = fresh_dir("vortex_small").string();
    VortexResult r = run_vortex_dipole(c);

    REQUIRE(!r.census.empty());
    CHECK(r.census.front().t == 0.0);
    CHECK(r.census.front().n_plus == 1);
    CHECK(r.census.front().n_minus == 1);
    CHECK(r.census.front().separation == doctest::Approx(2.0 * c.vortex_x0).epsilon(0.5));
    CHECK(r.census.front().core_radius > 0.0);
    CHECK(r.census.back().n_plus == 1);
    CHECK(r.census.back().n_minus == 1);
    CHECK(fs::exists(fs::path(c.out_dir) / "census.csv"));
    CHECK(fs::exists(fs::path(c.out_dir) / "vortex_t0.csv"));
    CHECK(fs::exists(fs::path(c.out_dir) / "trace.csv"));
}

TEST_CASE("profile runner writes the radial profile") {
    ExperimentConfig c = preset_config(ExperimentKind::profile, "desk");
    c.out_dir = fresh_dir("profile_small").string();
    VortexProfile p = run_profile(c);
    CHECK(p.lambda == 16.0);
    CHECK(p.u.size() == 400);
    CHECK(p(p.r0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fs::exists(fs::path(c.out_dir) / "profile.csv"));
    CHECK(fs::exists(fs::path(c.out_dir) / "manifest.json"));
}
