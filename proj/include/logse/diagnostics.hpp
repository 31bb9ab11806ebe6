#ifndef LOGSE_DIAGNOSTICS_HPP
#define LOGSE_DIAGNOSTICS_HPP

#include <string>
#include <utility>
#include <vector>

#include "logse/field.hpp"

namespace logse {

// Trapezoidal quadrature weight per stored node (tensorized in 2D). On the
// periodic grid this is plain h; Neumann endpoints carry half weights;
// Dirichlet endpoints are not stored (their values vanish).
template <typename F>
void for_each_node(const Grid& grid, Basis basis, F&& f) {
    auto axis_weight = [&](const Axis& ax, int i) {
        double w = ax.h();
        if (basis == Basis::neumann && (i == 0 || i == ax.n)) w *= 0.5;
        return w;
    };
    if (grid.dim() == 1) {
        const Axis& ax = grid.axes[0];
        for (int i = 0; i < ax.n_nodes(basis); ++i)
            f(static_cast<std::size_t>(i), axis_weight(ax, i));
    } else {
        const Axis& ax = grid.axes[0];
        const Axis& ay = grid.axes[1];
        const int ny = ay.n_nodes(basis);
        std::size_t idx = 0;
        for (int i = 0; i < ax.n_nodes(basis); ++i) {
            double wx = axis_weight(ax, i);
            for (int j = 0; j < ny; ++j, ++idx) f(idx, wx * axis_weight(ay, j));
        }
    }
}

// Mass M = int |psi|^2 via the coefficient Parseval sum.
double mass(const SpectralField& field);

// Energy E = int |grad psi|^2 + V |psi|^2 + F(|psi|^2), with
// F(rho) = lambda (rho ln rho - rho) and F(0) = 0. The gradient term is
// computed in coefficient space; the V and F terms by nodal trapezoidal
// quadrature (F(|psi|^2) is not band-limited).
double energy(const SpectralField& field, const std::vector<double>& V, double lambda);

// (e_L2, e_H1) of numeric - reference. The reference must live on a
// finer-or-equal grid over the same domain; numeric is zero-padded up.
std::pair<double, double> error_norms(const SpectralField& numeric,
                                      const SpectralField& reference);

struct ConvergenceRow {
    double tau = 0.0;
    double h = 0.0;
    double e_l2 = 0.0;
    double e_h1 = 0.0;
};

struct ConvergenceReport {
    std::string axis;  // "temporal" | "spatial" | "fixed_ratio"
    double ratio_c = 0.0;
    std::vector<ConvergenceRow> rows;
    double slope_l2 = 0.0;
    double slope_h1 = 0.0;
    std::size_t fit_begin = 0;  // first row index used in the fits
};

// Least-squares slope of log(error) vs log(parameter). Requires >= 3 rows
// with strictly monotone parameters. When >= 6 rows are given, the two
// coarsest (largest-parameter) points are excluded from the fit.
double fit_order(const std::vector<std::pair<double, double>>& param_error);

// Fill in slope_l2/slope_h1 of a report whose rows are sorted coarse-to-fine
// along the named axis parameter.
void fit_report(ConvergenceReport& report);

void write_report_csv(const ConvergenceReport& report, const std::string& path);
void write_report_json(const ConvergenceReport& report, const std::string& path);

struct RegularityEstimate {
    double decay_exponent = 0.0;  // p in |c_l| ~ l^-p
    double sobolev_index = 0.0;   // p - 1/2
    bool spectral_regime = false; // decay too fast for an algebraic fit
};

// Fit the coefficient-magnitude envelope of a 1D cosine-basis field over
// mode numbers [l_min, l_max]. The envelope is the per-bin maximum over
// log-spaced bins, which is insensitive to parity zeros of symmetric data.
RegularityEstimate estimate_regularity(const SpectralField& field, int l_min, int l_max);

}  // namespace logse

#endif
