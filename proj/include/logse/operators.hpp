#ifndef LOGSE_OPERATORS_HPP
#define LOGSE_OPERATORS_HPP

#include "logse/field.hpp"

namespace logse {

// phi_1(z) = (e^z - 1)/z with phi_1(0) = 1. Direct formula for |z| > 0.5,
// truncated Taylor series below; both branches agree to ~1e-14 at the switch.
cd phi1_scalar(cd z);

// Iterate (coeff index, mu^2, L^2 weight) over a field's coefficient set.
// Row-major in 2D, matching SpectralField storage.
template <typename F>
void for_each_mode(const Grid& grid, Basis basis, F&& f) {
    if (grid.dim() == 1) {
        const Axis& ax = grid.axes[0];
        const int n = ax.n_coeffs(basis);
        for (int i = 0; i < n; ++i) {
            double mu = ax.mu(basis, i);
            f(static_cast<std::size_t>(i), mu * mu, ax.weight(basis, i));
        }
    } else {
        const Axis& ax = grid.axes[0];
        const Axis& ay = grid.axes[1];
        const int nx = ax.n_coeffs(basis);
        const int ny = ay.n_coeffs(basis);
        std::size_t idx = 0;
        for (int i = 0; i < nx; ++i) {
            double mux = ax.mu(basis, i);
            double wx = ax.weight(basis, i);
            for (int j = 0; j < ny; ++j, ++idx) {
                double muy = ay.mu(basis, j);
                f(idx, mux * mux + muy * muy, wx * ay.weight(basis, j));
            }
        }
    }
}

// e^{itDelta}: multiplies the l-th coefficient by e^{-i t mu_l^2}.
SpectralField free_propagator(const SpectralField& field, double t);
void free_propagator_inplace(SpectralField& field, double t);

// phi_1(itDelta): multiplies the l-th coefficient by phi_1(-i t mu_l^2).
SpectralField phi1_apply(const SpectralField& field, double t);

// L^2 projection P_N onto the coarse mode set: modes outside the coarse
// grid's index set are discarded, the rest are unchanged.
SpectralField project(const SpectralField& field, int coarse_n);

// Zero-pad onto a finer grid of the same domain and basis (exact in X_N).
SpectralField pad_to(const SpectralField& field, const Grid& fine);

// H^alpha norm: (sum_l w_l (1 + mu_l^2)^alpha |hat_l|^2)^{1/2}, tensorized in
// 2D; alpha = 0 is the L^2 norm.
double sobolev_norm(const SpectralField& field, double alpha);

inline double l2_norm(const SpectralField& field) { return sobolev_norm(field, 0.0); }

// Coefficient-wise Laplacian (multiplies by -mu_l^2).
SpectralField laplacian(const SpectralField& field);

}  // namespace logse

#endif
