#include "logse/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace logse {

namespace {

// Uniform in (-1, 1) from the top 53 bits of the generator output. Defined
// explicitly (not via std::uniform_real_distribution) so the stream is
// reproducible across standard library implementations.
double uniform_pm1(std::mt19937_64& rng) {
    double u = static_cast<double>(rng() >> 11) * 0x1p-53;  // [0, 1)
    return 2.0 * u - 1.0;
}

}  // namespace

std::vector<double> square_well_values(const Grid& grid, Basis basis, double depth,
                                       double half_width) {
    if (grid.dim() != 1) throw std::invalid_argument("square_well: 1D grids only");
    const Axis& ax = grid.axes[0];
    std::vector<double> v(ax.n_nodes(basis));
    if (basis == Basis::periodic) {
        // Truncated Fourier series of the ideal step evaluated at the nodes:
        // the exact projection of the well onto the grid's resolved modes,
        // consistent with how the disorder potential is truncated. Pointwise
        // sampling instead leaves an O(h) defect when a jump lands on a node
        // and an O(h^2) aliasing defect otherwise, either of which caps the
        // spatial convergence order of the solver below the regularity limit
        // set by the discontinuity itself.
        const int n = static_cast<int>(v.size());
        const double L = ax.b - ax.a;
        std::vector<double> amp(std::max(n / 2, 1), 0.0);
        for (int l = 1; l < n / 2; ++l) {
            double mu = 2.0 * pi * l / L;
            amp[l] = depth * 4.0 * std::sin(mu * half_width) / (L * mu);
        }
        for (int j = 0; j < n; ++j) {
            double x = ax.node(basis, j);
            double s = depth * 2.0 * half_width / L;
            for (int l = 1; l < n / 2; ++l) s += amp[l] * std::cos(2.0 * pi * l / L * x);
            v[j] = s;
        }
        return v;
    }
    // Non-periodic bases: nodal sampling; a node exactly on the jump takes
    // the mean value, the pointwise limit of the interpolant of a step.
    const double tol = 1e-12 * std::max(1.0, half_width);
    for (std::size_t i = 0; i < v.size(); ++i) {
        double x = ax.node(basis, static_cast<int>(i));
        double d = std::abs(x) - half_width;
        v[i] = (d < -tol) ? depth : (d <= tol ? 0.5 * depth : 0.0);
    }
    return v;
}

std::vector<double> disorder_values(const Grid& grid, Basis basis, double alpha,
                                    std::uint64_t seed, int n_ref) {
    if (grid.dim() != 1) throw std::invalid_argument("disorder: 1D grids only");
    if (basis != Basis::periodic) throw std::invalid_argument("disorder: periodic basis only");
    if (n_ref < 4 || n_ref % 2 != 0)
        throw std::invalid_argument("disorder: N_ref must be a positive even integer");
    if (alpha < 0.0) throw std::invalid_argument("disorder: alpha must be >= 0");
    const Axis& ax = grid.axes[0];
    if (std::abs(ax.a + ax.b) > 1e-12 * (ax.b - ax.a))
        throw std::invalid_argument("disorder: domain must be symmetric (-L, L)");
    const double L = 0.5 * ax.length();

    // Draw xi_l for every l in T_{N_ref} in increasing-l order so that the
    // truncation to the simulation grid does not perturb the stream.
    std::mt19937_64 rng(seed);
    SpectralField f(grid, Basis::periodic);
    const int nkeep = ax.n;
    for (int l = -n_ref / 2; l < n_ref / 2; ++l) {
        double re = uniform_pm1(rng);
        double im = uniform_pm1(rng);
        if (l >= -nkeep / 2 && l < nkeep / 2) {
            double mu = pi * l / L;
            double amp = std::pow(1.0 + mu * mu, -alpha / 2.0 - 0.25);
            f.coeffs[l + nkeep / 2] = amp * cd(re, im);
        }
    }
    std::vector<cd> nodal = inverse_transform(f);
    std::vector<double> v(nodal.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = nodal[i].real();
    return v;
}

std::vector<double> potential_values(const PotentialSpec& spec, const Grid& grid, Basis basis) {
    switch (spec.kind) {
        case PotentialSpec::Kind::zero:
            return std::vector<double>(grid.n_nodes_total(basis), 0.0);
        case PotentialSpec::Kind::square_well:
            return square_well_values(grid, basis, spec.depth, spec.half_width);
        case PotentialSpec::Kind::disorder:
            return disorder_values(grid, basis, spec.alpha, spec.seed, spec.n_ref);
        case PotentialSpec::Kind::tabulated:
            if (spec.table.size() != grid.n_nodes_total(basis))
                throw std::invalid_argument("tabulated potential: size mismatch");
            return spec.table;
    }
    throw std::logic_error("unreachable");
}

}  // namespace logse
