// Experiment runner: convergence sweeps, CFL study, soliton collisions in a
// disorder medium, and 2D vortex-dipole dynamics for the logarithmic
// Schrodinger equation.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical blow-up.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "logse/experiments.hpp"

using namespace logse;

namespace {

int run(ExperimentKind kind, const std::string& config_path, const std::string& out_dir,
        const std::string& preset, std::uint64_t seed, bool seed_set) {
    ExperimentConfig cfg = preset_config(kind, preset);
    if (!config_path.empty()) cfg = load_config(config_path, cfg);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed_set) cfg.seed = seed;
    cfg.kind = kind;

    switch (kind) {
        case ExperimentKind::temporal: {
            TemporalResult r = run_temporal_convergence(cfg);
            for (const auto& rep : r.per_ratio)
                std::printf("ratio c=%g: L2 slope %.3f, H1 slope %.3f\n", rep.ratio_c,
                            rep.slope_l2, rep.slope_h1);
            for (const auto& rep : r.per_h)
                std::printf("fixed h=%g: L2 slope %.3f, H1 slope %.3f\n", rep.rows.front().h,
                            rep.slope_l2, rep.slope_h1);
            if (!r.reference_reliable)
                std::fprintf(stderr, "warning: reference self-consistency probe failed; "
                                     "errors may be unreliable\n");
            break;
        }
        case ExperimentKind::spatial: {
            SpatialResult r = run_spatial_convergence(cfg);
            std::printf("spatial: L2 slope %.3f, H1 slope %.3f%s\n", r.report.slope_l2,
                        r.report.slope_h1, r.spectral_flag ? " (spectral-accuracy regime)" : "");
            if (!r.reference_reliable)
                std::fprintf(stderr, "warning: reference self-consistency probe failed; "
                                     "errors may be unreliable\n");
            break;
        }
        case ExperimentKind::cfl: {
            CflResult r = run_cfl_study(cfg);
            for (const auto& rep : r.rays)
                std::printf("ray tau=%g h^2: L2 slope %.3f\n", rep.ratio_c, rep.slope_l2);
            std::printf("violating ray tau=%g sqrt(h): L2 slope %.3f\n", r.violating.ratio_c,
                        r.violating.slope_l2);
            std::printf("linear control on the violating ray: L2 slope %.3f\n",
                        r.control.slope_l2);
            break;
        }
        case ExperimentKind::soliton: {
            SolitonResult r = run_soliton_collision(cfg);
            const auto& last = r.centroids.back();
            std::printf("soliton: final centroids %.4f / %.4f, mass drift %.3e\n", last[1],
                        last[2],
                        r.trace.samples.back().mass - r.trace.samples.front().mass);
            break;
        }
        case ExperimentKind::vortex: {
            VortexResult r = run_vortex_dipole(cfg);
            for (const auto& c : r.census)
                std::printf("t=%.4f: charges +%d/-%d, separation %.4f, core radius %.4f\n", c.t,
                            c.n_plus, c.n_minus, c.separation, c.core_radius);
            break;
        }
        case ExperimentKind::profile: {
            VortexProfile p = run_profile(cfg);
            std::printf("profile: lambda=%g, R0=%g, %zu mesh points, u(R0/2)=%.6f\n", p.lambda,
                        p.r0, p.u.size(), p(p.r0 / 2.0));
            break;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"logarithmic Schrodinger equation experiments"};
    app.require_subcommand(1);

    std::string config_path, out_dir, preset = "desk";
    std::uint64_t seed = 0;
    bool seed_set = false;
    app.add_option("--config", config_path, "JSON config overlaying the preset")
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--preset", preset, "parameter preset")
        ->check(CLI::IsMember({"paper", "desk"}));
    app.add_option("--seed", seed, "RNG seed for disorder potentials")
        ->each([&](const std::string&) { seed_set = true; });

    for (const char* name : {"temporal", "spatial", "cfl", "soliton", "vortex", "profile"})
        app.add_subcommand(name)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        ExperimentKind kind = kind_from_string(app.get_subcommands().front()->get_name());
        return run(kind, config_path, out_dir, preset, seed, seed_set);
    } catch (const BlowUpError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const StepSizeError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
