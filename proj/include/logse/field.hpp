#ifndef LOGSE_FIELD_HPP
#define LOGSE_FIELD_HPP

#include <complex>
#include <vector>

#include "logse/grid.hpp"

namespace logse {

using cd = std::complex<double>;

// A band-limited field stored by its spectral coefficients in natural mode
// order (periodic: l = -N/2..N/2-1; sine: l = 1..N-1; cosine: l = 0..N).
// 2D coefficients are row-major with axis 0 = x.
struct SpectralField {
    Grid grid;
    Basis basis = Basis::periodic;
    std::vector<cd> coeffs;

    SpectralField() = default;
    SpectralField(Grid g, Basis bs)
        : grid(std::move(g)), basis(bs), coeffs(grid.n_coeffs_total(bs)) {}
    SpectralField(Grid g, Basis bs, std::vector<cd> c)
        : grid(std::move(g)), basis(bs), coeffs(std::move(c)) {
        if (coeffs.size() != grid.n_coeffs_total(basis))
            throw std::invalid_argument("coefficient array size does not match grid/basis");
    }

    std::size_t size() const { return coeffs.size(); }
};

// Forward/inverse transforms between nodal samples and spectral coefficients.
// The forward map is the trapezoidal-quadrature analogue of the projection
// coefficients; inverse evaluates the interpolant at the nodes. Round trips
// are exact to roundoff.
SpectralField forward_transform(const std::vector<cd>& nodal, const Grid& grid, Basis basis);
std::vector<cd> inverse_transform(const SpectralField& field);

// Buffer-reusing variants for hot loops. Sizes must match exactly.
void forward_transform_into(const cd* nodal, const Grid& grid, Basis basis, cd* coeffs);
void inverse_transform_into(const cd* coeffs, const Grid& grid, Basis basis, cd* nodal);

}  // namespace logse

#endif
