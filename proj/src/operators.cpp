#include "logse/operators.hpp"

#include <cmath>

namespace logse {

cd phi1_scalar(cd z) {
    // The direct formula loses ~|ln z| digits to cancellation as z -> 0; the
    // series keeps full precision up to |z| = 1/2 with 18 terms.
    if (std::abs(z) > 0.5) return (std::exp(z) - 1.0) / z;
    cd s = 0.0;
    cd zk = 1.0;
    double fact = 1.0;  // (k+1)!
    for (int k = 0; k <= 17; ++k) {
        fact *= k + 1;
        s += zk / fact;
        zk *= z;
    }
    return s;
}

void free_propagator_inplace(SpectralField& field, double t) {
    for_each_mode(field.grid, field.basis, [&](std::size_t i, double mu2, double) {
        field.coeffs[i] *= std::exp(cd(0.0, -t * mu2));
    });
}

SpectralField free_propagator(const SpectralField& field, double t) {
    SpectralField out = field;
    free_propagator_inplace(out, t);
    return out;
}

SpectralField phi1_apply(const SpectralField& field, double t) {
    SpectralField out = field;
    for_each_mode(field.grid, field.basis, [&](std::size_t i, double mu2, double) {
        out.coeffs[i] *= phi1_scalar(cd(0.0, -t * mu2));
    });
    return out;
}

namespace {

// Is mode index m inside the coarse set of subinterval count n?
bool mode_in_set(Basis basis, int m, int n) {
    if (basis == Basis::periodic) return m >= -n / 2 && m < n / 2;
    if (basis == Basis::dirichlet) return m >= 1 && m <= n - 1;
    return m >= 0 && m <= n;
}

// Copy the overlapping modes of src (on src_grid) into dst (on dst_grid);
// everything else in dst stays zero.
void copy_common_modes(const SpectralField& src, SpectralField& dst) {
    const Grid& gs = src.grid;
    const Grid& gd = dst.grid;
    Basis basis = src.basis;
    auto index_of = [&](const Axis& ax, int m) {
        if (basis == Basis::periodic) return m + ax.n / 2;
        return (basis == Basis::dirichlet) ? m - 1 : m;
    };
    if (gs.dim() == 1) {
        const Axis& as = gs.axes[0];
        const Axis& ad = gd.axes[0];
        for (int i = 0; i < as.n_coeffs(basis); ++i) {
            int m = as.mode(basis, i);
            if (mode_in_set(basis, m, ad.n)) dst.coeffs[index_of(ad, m)] = src.coeffs[i];
        }
    } else {
        const Axis& asx = gs.axes[0];
        const Axis& asy = gs.axes[1];
        const Axis& adx = gd.axes[0];
        const Axis& ady = gd.axes[1];
        const int nsy = asy.n_coeffs(basis);
        const int ndy = ady.n_coeffs(basis);
        for (int i = 0; i < asx.n_coeffs(basis); ++i) {
            int mx = asx.mode(basis, i);
            if (!mode_in_set(basis, mx, adx.n)) continue;
            for (int j = 0; j < nsy; ++j) {
                int my = asy.mode(basis, j);
                if (!mode_in_set(basis, my, ady.n)) continue;
                dst.coeffs[static_cast<std::size_t>(index_of(adx, mx)) * ndy + index_of(ady, my)] =
                    src.coeffs[static_cast<std::size_t>(i) * nsy + j];
            }
        }
    }
}

}  // namespace

SpectralField project(const SpectralField& field, int coarse_n) {
    for (const Axis& ax : field.grid.axes)
        if (coarse_n > ax.n) throw std::invalid_argument("project: coarse N exceeds fine N");
    if (coarse_n < 4 || coarse_n % 2 != 0)
        throw std::invalid_argument("project: coarse N must be even and >= 4");
    Grid coarse = field.grid;
    for (Axis& ax : coarse.axes) ax.n = coarse_n;
    SpectralField out(coarse, field.basis);
    copy_common_modes(field, out);
    return out;
}

SpectralField pad_to(const SpectralField& field, const Grid& fine) {
    if (fine.dim() != field.grid.dim())
        throw std::invalid_argument("pad_to: dimension mismatch");
    for (int j = 0; j < fine.dim(); ++j) {
        const Axis& c = field.grid.axes[j];
        const Axis& f = fine.axes[j];
        if (c.a != f.a || c.b != f.b) throw std::invalid_argument("pad_to: domain mismatch");
        if (f.n < c.n) throw std::invalid_argument("pad_to: target grid is coarser");
    }
    SpectralField out(fine, field.basis);
    copy_common_modes(field, out);
    return out;
}

double sobolev_norm(const SpectralField& field, double alpha) {
    if (alpha < 0.0) throw std::invalid_argument("sobolev_norm: alpha must be >= 0");
    double s = 0.0;
    for_each_mode(field.grid, field.basis, [&](std::size_t i, double mu2, double w) {
        double wa = (alpha == 0.0) ? 1.0 : std::pow(1.0 + mu2, alpha);
        s += w * wa * std::norm(field.coeffs[i]);
    });
    return std::sqrt(s);
}

SpectralField laplacian(const SpectralField& field) {
    SpectralField out = field;
    for_each_mode(field.grid, field.basis, [&](std::size_t i, double mu2, double) {
        out.coeffs[i] *= -mu2;
    });
    return out;
}

}  // namespace logse
