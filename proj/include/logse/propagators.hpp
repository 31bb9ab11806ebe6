#ifndef LOGSE_PROPAGATORS_HPP
#define LOGSE_PROPAGATORS_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "logse/field.hpp"
#include "logse/potentials.hpp"

namespace logse {

enum class Scheme { ewi_fs, strang };
enum class CflPolicy { enforce, warn, off };

struct StepSizeError : std::runtime_error {
    double admissible_tau;
    StepSizeError(const std::string& msg, double adm)
        : std::runtime_error(msg), admissible_tau(adm) {}
};

struct BlowUpError : std::runtime_error {
    long step_index;
    BlowUpError(const std::string& msg, long step) : std::runtime_error(msg), step_index(step) {}
};

struct SolverConfig {
    double lambda = -1.0;
    double tau = 1e-3;
    double T = 1.0;
    Scheme scheme = Scheme::ewi_fs;
    CflPolicy cfl_policy = CflPolicy::warn;
    double cfl_constant = 1.0;  // C-tilde in tau |ln tau| <= C h^2 / |ln h|

    // round(T/tau); |T - n tau| must be < 1e-12 T
    long n_steps() const;
    void validate() const;
};

// Largest tau with tau |ln tau| <= bound (used to report an admissible step).
double admissible_tau(double bound);

// tau |ln tau| <= C h^2/|ln h| with h the finest mesh size of the grid.
// Returns the admissible tau if violated, nullopt otherwise.
std::optional<double> cfl_violation(const Grid& grid, const SolverConfig& cfg);

// One step of either scheme, precomputing the diagonal symbol tables and
// reusing nodal scratch across steps. State lives in coefficient space.
class Stepper {
  public:
    Stepper(const Grid& grid, Basis basis, std::vector<double> V, const SolverConfig& cfg);

    void step(std::vector<cd>& coeffs) const;
    void ewi_step(std::vector<cd>& coeffs) const;
    void strang_step(std::vector<cd>& coeffs) const;

    const Grid& grid() const { return grid_; }
    Basis basis() const { return basis_; }

  private:
    Grid grid_;
    Basis basis_;
    std::vector<double> potential_;
    double lambda_;
    double tau_;
    Scheme scheme_;
    std::vector<cd> kinetic_;       // e^{-i tau mu^2}
    std::vector<cd> half_kinetic_;  // e^{-i tau mu^2 / 2}
    std::vector<cd> ewi_weight_;    // -i tau phi_1(-i tau mu^2)
    mutable std::vector<cd> nodal_, scratch_;
};

// Convenience single-step wrappers.
SpectralField ewi_fs_step(const SpectralField& state, const PotentialSpec& V,
                          const SolverConfig& cfg);
SpectralField strang_step(const SpectralField& state, const PotentialSpec& V,
                          const SolverConfig& cfg);

struct TraceSample {
    double t = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    double l2_norm = 0.0;
    double h1_norm = 0.0;
    double h2_norm = 0.0;
};

struct EvolutionTrace {
    std::vector<TraceSample> samples;
    std::vector<std::pair<double, SpectralField>> snapshots;
    SpectralField final_state;
};

struct SamplingPlan {
    long sample_every = 0;            // diagnostics every k steps (0: first/last only)
    std::vector<double> snapshot_times;  // nearest step times, deduplicated
};

// Drive the configured scheme over n = 0..T/tau. Detects NaN/Inf after each
// step and aborts with the offending step index.
EvolutionTrace evolve(const SpectralField& initial, const PotentialSpec& V,
                      const SolverConfig& cfg, const SamplingPlan& plan = {});

void write_trace_csv(const EvolutionTrace& trace, const std::string& path);

}  // namespace logse

#endif
