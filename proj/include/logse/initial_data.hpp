#ifndef LOGSE_INITIAL_DATA_HPP
#define LOGSE_INITIAL_DATA_HPP

#include <string>
#include <vector>

#include "logse/field.hpp"

namespace logse {

// psi_0(x) = x |x|^{0.51} e^{-x^2/2}, sampled on a 1D periodic grid.
SpectralField h2_datum(const Grid& grid);

struct GaussonPairParams {
    double x0 = 4.0;
    double v = 2.0;
    double k1 = 1.0;
    double k2 = 1.0;
    double c1 = 1.0;
    double c2 = 1.0;
};

// psi_0(x) = c1 e^{-k1 (x-x0)^2/2 - i v x} + c2 e^{-k2 (x+x0)^2/2 + i v x}
SpectralField two_gaussons(const Grid& grid, const GaussonPairParams& p);

// psi_0(x) = tanh(x) on a 1D Neumann (cosine) grid.
SpectralField tanh_datum(const Grid& grid);

// Radial vortex core profile: solution of
//   -(1/r) d/dr (r du/dr) + u/r^2 + lambda ln(u^2) u = 0,  0 < r < R0,
// with u(0) = 0, u(R0) = 1, extended by u(r) = 1 for r >= R0.
struct VortexProfile {
    double r0 = 8.0;
    double lambda = 16.0;
    std::vector<double> r;  // staggered mesh r_i = (i - 1/2) dr
    std::vector<double> u;

    // cubic (Catmull-Rom) interpolation of the table; u(0)=0 and u(r>=R0)=1
    double operator()(double rr) const;
};

struct BvpError : std::runtime_error {
    std::vector<double> residual_history;
    BvpError(const std::string& msg, std::vector<double> hist)
        : std::runtime_error(msg), residual_history(std::move(hist)) {}
};

// Damped Newton on a second-order finite-difference discretization, with
// continuation in lambda from small |lambda|. Max-norm residual of the
// discrete operator is driven below 1e-8.
VortexProfile solve_vortex_profile(double lambda, double r0, int mesh_points);

// 2D vortex dipole phi_+(x - x0, y) * phi_-(x + x0, y) with
// phi_pm = u(|x|) e^{+-i theta(x)} on a 2D Neumann grid.
SpectralField vortex_dipole(const Grid& grid, const VortexProfile& profile, double x0);

void write_profile_csv(const VortexProfile& profile, const std::string& path);

}  // namespace logse

#endif
