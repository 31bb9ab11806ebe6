#ifndef LOGSE_EXPERIMENTS_HPP
#define LOGSE_EXPERIMENTS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "logse/diagnostics.hpp"
#include "logse/initial_data.hpp"
#include "logse/potentials.hpp"
#include "logse/propagators.hpp"

namespace logse {

enum class ExperimentKind { temporal, spatial, cfl, soliton, vortex, profile };

ExperimentKind kind_from_string(const std::string& s);
std::string to_string(ExperimentKind k);

// One experiment run, fully determined by (config, seed). The sweep runners
// compare against a Strang reference at (tau_e, h_e); the single-run
// experiments (soliton, vortex) integrate one trajectory and write rasters
// and snapshots.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::temporal;

    // domain (square in 2D) and single-run resolution
    double a = -16.0;
    double b = 16.0;
    int n = 256;

    double lambda = -1.0;
    double T = 1.0;
    double tau = 1e-3;
    Scheme scheme = Scheme::ewi_fs;
    CflPolicy cfl_policy = CflPolicy::warn;
    double cfl_constant = 1.0;

    PotentialSpec potential = PotentialSpec::zero();

    // initial data: "h2" | "two_gaussons" | "gaussian" | "tanh" | "vortex"
    std::string initial = "h2";
    GaussonPairParams gausson;

    // vortex-dipole parameters
    double vortex_lambda = 16.0;
    double vortex_x0 = 0.5;
    double vortex_r0 = 8.0;
    int profile_mesh = 400;

    // sweep lattices and reference-solver settings
    std::vector<double> taus;
    std::vector<double> hs;
    std::vector<double> ratios;  // rays tau = c h^2
    double tau_e = 1e-5;
    double h_e = 1.0 / 256.0;
    bool check_reference = true;  // (tau_e/2, h_e) self-consistency probe

    std::vector<double> snapshot_times;

    std::uint64_t seed = 0;
    std::string out_dir = ".";

    // reference strictly finer than every sweep point:
    // tau_e <= min tau / 10 and h_e <= min h / 4 (taus from ratios included)
    void validate() const;
};

// Built-in defaults per experiment; preset is "paper" or "desk".
ExperimentConfig preset_config(ExperimentKind kind, const std::string& preset);

// Overlay a JSON config file onto a base config; unknown keys are rejected.
ExperimentConfig load_config(const std::string& json_path, ExperimentConfig base);

// Config echo + seed, written next to the outputs of every run.
void write_manifest(const ExperimentConfig& cfg, const std::string& path);

struct TemporalResult {
    std::vector<ConvergenceReport> per_h;      // tau sweep at each fixed h
    std::vector<ConvergenceReport> per_ratio;  // tau = c h^2 rays
    bool reference_reliable = true;
};

struct SpatialResult {
    ConvergenceReport report;
    bool spectral_flag = false;  // consecutive-row slope exceeds any fixed order
    bool reference_reliable = true;
};

struct CflResult {
    std::vector<ConvergenceReport> rays;  // tau = c h^2 per ratio
    ConvergenceReport violating;          // tau = c sqrt(h)
    ConvergenceReport control;            // violating ray, lambda = 0
    bool reference_reliable = true;
};

struct SolitonResult {
    // (t, left-half centroid, right-half centroid) of |psi|^2
    std::vector<std::array<double, 3>> centroids;
    EvolutionTrace trace;
};

struct VortexCensus {
    double t = 0.0;
    int n_plus = 0;
    int n_minus = 0;
    double separation = 0.0;   // x-distance between the two charges (0 if lost)
    double core_radius = 0.0;  // radius where |psi| recovers to 1/2
};

struct VortexResult {
    std::vector<VortexCensus> census;  // one entry per snapshot time
    EvolutionTrace trace;
};

TemporalResult run_temporal_convergence(const ExperimentConfig& cfg);
SpatialResult run_spatial_convergence(const ExperimentConfig& cfg);
CflResult run_cfl_study(const ExperimentConfig& cfg);
SolitonResult run_soliton_collision(const ExperimentConfig& cfg);
VortexResult run_vortex_dipole(const ExperimentConfig& cfg);
VortexProfile run_profile(const ExperimentConfig& cfg);

// Winding-number census of a nodal 2D field: per-plaquette wrapped phase
// circulation, counted by sign.
std::pair<int, int> winding_census(const std::vector<cd>& nodal, int nx, int ny);

}  // namespace logse

#endif
