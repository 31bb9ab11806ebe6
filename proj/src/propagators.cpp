#include "logse/propagators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "logse/diagnostics.hpp"
#include "logse/nonlinearity.hpp"
#include "logse/operators.hpp"

namespace logse {

long SolverConfig::n_steps() const {
    long n = std::lround(T / tau);
    if (n < 1 || std::abs(T - n * tau) >= 1e-12 * T)
        throw std::invalid_argument("T must be an integer multiple of tau");
    return n;
}

void SolverConfig::validate() const {
    if (!(tau > 0.0) || !(T > 0.0) || tau > T * (1.0 + 1e-12))
        throw std::invalid_argument("require 0 < tau <= T");
    (void)n_steps();
}

double admissible_tau(double bound) {
    // solve tau |ln tau| = bound by a few fixed-point sweeps
    double tau = std::min(bound, 0.1);
    for (int it = 0; it < 50; ++it) {
        double lt = std::abs(std::log(tau));
        tau = bound / std::max(lt, 1.0);
    }
    return tau;
}

std::optional<double> cfl_violation(const Grid& grid, const SolverConfig& cfg) {
    double h = grid.axes[0].h();
    for (const auto& ax : grid.axes) h = std::min(h, ax.h());
    double bound = cfg.cfl_constant * h * h / std::max(std::abs(std::log(h)), 1.0);
    double lhs = cfg.tau * std::abs(std::log(cfg.tau));
    if (lhs > bound) return admissible_tau(bound);
    return std::nullopt;
}

namespace {

void guard_cfl(const Grid& grid, const SolverConfig& cfg) {
    // the step-size restriction is the exponential integrator's convergence
    // condition; the splitting reference is not subject to it
    if (cfg.scheme != Scheme::ewi_fs) return;
    if (cfg.cfl_policy == CflPolicy::off) return;
    auto adm = cfl_violation(grid, cfg);
    if (!adm) return;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "time step restriction violated: tau=%.3e exceeds admissible tau=%.3e", cfg.tau,
                  *adm);
    if (cfg.cfl_policy == CflPolicy::enforce) throw StepSizeError(buf, *adm);
    std::fprintf(stderr, "warning: %s\n", buf);
}

}  // namespace

Stepper::Stepper(const Grid& grid, Basis basis, std::vector<double> V, const SolverConfig& cfg)
    : grid_(grid),
      basis_(basis),
      potential_(std::move(V)),
      lambda_(cfg.lambda),
      tau_(cfg.tau),
      scheme_(cfg.scheme) {
    if (!potential_.empty() && potential_.size() != grid_.n_nodes_total(basis_))
        throw std::invalid_argument("stepper: potential size mismatch");
    const std::size_t m = grid_.n_coeffs_total(basis_);
    kinetic_.resize(m);
    half_kinetic_.resize(m);
    ewi_weight_.resize(m);
    for_each_mode(grid_, basis_, [&](std::size_t i, double mu2, double) {
        kinetic_[i] = std::exp(cd(0.0, -tau_ * mu2));
        half_kinetic_[i] = std::exp(cd(0.0, -0.5 * tau_ * mu2));
        ewi_weight_[i] = cd(0.0, -tau_) * phi1_scalar(cd(0.0, -tau_ * mu2));
    });
    nodal_.resize(grid_.n_nodes_total(basis_));
    scratch_.resize(m);
}

// hat(psi)^{n+1}_l = e^{-i tau mu_l^2} hat(psi)^n_l
//                    - i tau phi_1(-i tau mu_l^2) hat(B(psi^n))_l
void Stepper::ewi_step(std::vector<cd>& coeffs) const {
    inverse_transform_into(coeffs.data(), grid_, basis_, nodal_.data());
    apply_B_into(nodal_.data(), potential_.empty() ? nullptr : potential_.data(), lambda_,
                 nodal_.size(), nodal_.data());
    forward_transform_into(nodal_.data(), grid_, basis_, scratch_.data());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        coeffs[i] = kinetic_[i] * coeffs[i] + ewi_weight_[i] * scratch_[i];
}

// half kinetic, exact nonlinear/potential phase flow, half kinetic. The
// nonlinear subflow holds |psi| pointwise constant; psi = 0 stays fixed.
void Stepper::strang_step(std::vector<cd>& coeffs) const {
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] *= half_kinetic_[i];
    inverse_transform_into(coeffs.data(), grid_, basis_, nodal_.data());
    const double* V = potential_.empty() ? nullptr : potential_.data();
    for (std::size_t i = 0; i < nodal_.size(); ++i) {
        double r = std::abs(nodal_[i]);
        if (r == 0.0) continue;
        double phase = -tau_ * ((V ? V[i] : 0.0) + lambda_ * 2.0 * std::log(r));
        nodal_[i] *= std::exp(cd(0.0, phase));
    }
    forward_transform_into(nodal_.data(), grid_, basis_, coeffs.data());
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] *= half_kinetic_[i];
}

void Stepper::step(std::vector<cd>& coeffs) const {
    scheme_ == Scheme::ewi_fs ? ewi_step(coeffs) : strang_step(coeffs);
}

namespace {

SpectralField single_step(const SpectralField& state, const PotentialSpec& V,
                          const SolverConfig& cfg, Scheme scheme) {
    SolverConfig c = cfg;
    c.scheme = scheme;
    guard_cfl(state.grid, c);
    Stepper st(state.grid, state.basis, potential_values(V, state.grid, state.basis), c);
    SpectralField out = state;
    st.step(out.coeffs);
    return out;
}

}  // namespace

SpectralField ewi_fs_step(const SpectralField& state, const PotentialSpec& V,
                          const SolverConfig& cfg) {
    return single_step(state, V, cfg, Scheme::ewi_fs);
}

SpectralField strang_step(const SpectralField& state, const PotentialSpec& V,
                          const SolverConfig& cfg) {
    return single_step(state, V, cfg, Scheme::strang);
}

EvolutionTrace evolve(const SpectralField& initial, const PotentialSpec& V,
                      const SolverConfig& cfg, const SamplingPlan& plan) {
    cfg.validate();
    guard_cfl(initial.grid, cfg);
    const long n_steps = cfg.n_steps();
    std::vector<double> pot = potential_values(V, initial.grid, initial.basis);
    Stepper stepper(initial.grid, initial.basis, pot, cfg);

    // map requested snapshot times to nearest step indices
    std::vector<long> snap_steps;
    for (double t : plan.snapshot_times) {
        long k = std::lround(t / cfg.tau);
        if (k >= 0 && k <= n_steps) snap_steps.push_back(k);
    }
    std::sort(snap_steps.begin(), snap_steps.end());
    snap_steps.erase(std::unique(snap_steps.begin(), snap_steps.end()), snap_steps.end());

    EvolutionTrace trace;
    SpectralField state = initial;
    auto record = [&](long k) {
        TraceSample s;
        s.t = k * cfg.tau;
        s.mass = mass(state);
        s.energy = energy(state, pot, cfg.lambda);
        s.l2_norm = sobolev_norm(state, 0.0);
        s.h1_norm = sobolev_norm(state, 1.0);
        s.h2_norm = sobolev_norm(state, 2.0);
        trace.samples.push_back(s);
    };
    auto snap = [&](long k) {
        if (std::binary_search(snap_steps.begin(), snap_steps.end(), k))
            trace.snapshots.emplace_back(k * cfg.tau, state);
    };

    record(0);
    snap(0);
    for (long k = 1; k <= n_steps; ++k) {
        stepper.step(state.coeffs);
        bool finite = true;
        for (const cd& c : state.coeffs)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
                finite = false;
                break;
            }
        if (!finite)
            throw BlowUpError("non-finite field detected at step " + std::to_string(k), k);
        if ((plan.sample_every > 0 && k % plan.sample_every == 0) || k == n_steps) record(k);
        snap(k);
    }
    trace.final_state = std::move(state);
    return trace;
}

void write_trace_csv(const EvolutionTrace& trace, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os.precision(17);
    os << "t,mass,energy,l2_norm,h1_norm,h2_norm\n";
    for (const auto& s : trace.samples)
        os << s.t << "," << s.mass << "," << s.energy << "," << s.l2_norm << "," << s.h1_norm
           << "," << s.h2_norm << "\n";
}

}  // namespace logse
