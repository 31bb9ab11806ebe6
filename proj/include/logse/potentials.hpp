#ifndef LOGSE_POTENTIALS_HPP
#define LOGSE_POTENTIALS_HPP

#include <cstdint>
#include <vector>

#include "logse/field.hpp"

namespace logse {

// Declarative description of the real potential V.
struct PotentialSpec {
    enum class Kind { zero, square_well, disorder, tabulated };
    Kind kind = Kind::zero;

    // square_well
    double depth = -4.0;
    double half_width = 2.0;

    // disorder
    double alpha = 0.0;
    std::uint64_t seed = 0;
    int n_ref = 1 << 18;

    // tabulated
    std::vector<double> table;

    static PotentialSpec zero() { return {}; }
    static PotentialSpec square_well(double depth = -4.0, double half_width = 2.0) {
        PotentialSpec p;
        p.kind = Kind::square_well;
        p.depth = depth;
        p.half_width = half_width;
        return p;
    }
    static PotentialSpec disorder(double alpha, std::uint64_t seed, int n_ref = 1 << 18) {
        PotentialSpec p;
        p.kind = Kind::disorder;
        p.alpha = alpha;
        p.seed = seed;
        p.n_ref = n_ref;
        return p;
    }
    static PotentialSpec tabulated(std::vector<double> v) {
        PotentialSpec p;
        p.kind = Kind::tabulated;
        p.table = std::move(v);
        return p;
    }
};

// Nodal values of V_sw: `depth` on (-half_width, half_width), 0 elsewhere.
// Nodes exactly at +-half_width take the outside value 0.
std::vector<double> square_well_values(const Grid& grid, Basis basis, double depth = -4.0,
                                       double half_width = 2.0);

// Seeded random-Fourier disorder potential on a 1D grid (-L, L):
//   V_d(x) = Re sum_{l in T_Nref} (1+mu_l^2)^{-alpha/2-1/4} xi_l e^{i mu_l (x+L)}
// with xi_l = U(-1,1) + i U(-1,1) drawn from mt19937_64(seed) in increasing-l
// order (each uniform is (rng() >> 11) * 2^-53 mapped to (-1,1)). Modes
// outside the grid's resolvable set are discarded (exact truncation).
std::vector<double> disorder_values(const Grid& grid, Basis basis, double alpha,
                                    std::uint64_t seed, int n_ref = 1 << 18);

// Materialize any PotentialSpec as nodal values on the grid.
std::vector<double> potential_values(const PotentialSpec& spec, const Grid& grid, Basis basis);

}  // namespace logse

#endif
