#include "logse/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>

namespace logse {

namespace {

SpectralField sample_1d(const Grid& grid, Basis basis, const std::function<cd(double)>& f) {
    if (grid.dim() != 1) throw std::invalid_argument("1D grid expected");
    const Axis& ax = grid.axes[0];
    std::vector<cd> nodal(ax.n_nodes(basis));
    for (std::size_t i = 0; i < nodal.size(); ++i) nodal[i] = f(ax.node(basis, static_cast<int>(i)));
    return forward_transform(nodal, grid, basis);
}

}  // namespace

SpectralField h2_datum(const Grid& grid) {
    return sample_1d(grid, Basis::periodic, [](double x) {
        return cd(x * std::pow(std::abs(x), 0.51) * std::exp(-0.5 * x * x), 0.0);
    });
}

SpectralField two_gaussons(const Grid& grid, const GaussonPairParams& p) {
    if (!(p.k1 > 0.0) || !(p.k2 > 0.0))
        throw std::invalid_argument("two_gaussons: k1, k2 must be positive");
    return sample_1d(grid, Basis::periodic, [&](double x) {
        cd left = p.c1 * std::exp(cd(-0.5 * p.k1 * (x - p.x0) * (x - p.x0), -p.v * x));
        cd right = p.c2 * std::exp(cd(-0.5 * p.k2 * (x + p.x0) * (x + p.x0), p.v * x));
        return left + right;
    });
}

SpectralField tanh_datum(const Grid& grid) {
    return sample_1d(grid, Basis::neumann, [](double x) { return cd(std::tanh(x), 0.0); });
}

double VortexProfile::operator()(double rr) const {
    if (rr <= 0.0) return 0.0;
    if (rr >= r0) return 1.0;
    const double dr = r[1] - r[0];
    // table index: r_i = (i - 1/2) dr, i = 1..m
    double s = rr / dr + 0.5;  // fractional 1-based index
    int i = static_cast<int>(std::floor(s));
    double t = s - i;
    const int m = static_cast<int>(u.size());
    // stencil values u_{i-1}, u_i, u_{i+1}, u_{i+2} with u_0 mirrored through
    // u(0) = 0 and values past the boundary pinned at 1
    auto val = [&](int k) {
        if (k <= 0) return -((k >= -m) ? u[-k] : 1.0);  // odd through the origin
        if (k > m) return 1.0;
        return u[k - 1];
    };
    double p0 = val(i - 1), p1 = val(i), p2 = val(i + 1), p3 = val(i + 2);
    // Catmull-Rom
    return p1 + 0.5 * t * (p2 - p0 + t * (2 * p0 - 5 * p1 + 4 * p2 - p3 + t * (3 * (p1 - p2) + p3 - p0)));
}

namespace {

double safe_log_u2(double u) {
    double r = std::max(std::abs(u), 1e-300);
    return 2.0 * std::log(r);
}

// residual of the discrete radial operator on the staggered mesh
void bvp_residual(const std::vector<double>& u, double lambda, double dr,
                  std::vector<double>& F) {
    const int m = static_cast<int>(u.size());
    for (int i = 1; i <= m; ++i) {
        double ri = (i - 0.5) * dr;
        double a = i * dr;        // r_{i+1/2}
        double b = (i - 1) * dr;  // r_{i-1/2}
        double up = (i < m) ? u[i] : 2.0 - u[m - 1];  // ghost: (u_m + u_{m+1})/2 = 1
        double um = (i > 1) ? u[i - 2] : 0.0;         // weight b vanishes at i = 1
        double lap = -(a * (up - u[i - 1]) - b * (u[i - 1] - um)) / (ri * dr * dr);
        F[i - 1] = lap + u[i - 1] / (ri * ri) + lambda * safe_log_u2(u[i - 1]) * u[i - 1];
    }
}

// one Newton solve at fixed lambda; returns final max-norm residual
double bvp_newton(std::vector<double>& u, double lambda, double dr,
                  std::vector<double>& history) {
    const int m = static_cast<int>(u.size());
    std::vector<double> F(m), lower(m), diag(m), upper(m), rhs(m), du(m), utry(m), Ftry(m);
    auto maxnorm = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s = std::max(s, std::abs(x));
        return s;
    };
    auto norm2 = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
    };
    bvp_residual(u, lambda, dr, F);
    double res = maxnorm(F);
    for (int it = 0; it < 200 && res > 1e-10; ++it) {
        for (int i = 1; i <= m; ++i) {
            double ri = (i - 0.5) * dr;
            double a = i * dr;
            double b = (i - 1) * dr;
            double d = (a + b) / (ri * dr * dr) + 1.0 / (ri * ri) +
                       lambda * (safe_log_u2(u[i - 1]) + 2.0);
            if (i == m) d += 2.0 * a / (ri * dr * dr);  // ghost substitution
            diag[i - 1] = d;
            lower[i - 1] = (i > 1) ? -b / (ri * dr * dr) : 0.0;
            upper[i - 1] = (i < m) ? -a / (ri * dr * dr) : 0.0;
            rhs[i - 1] = -F[i - 1];
        }
        // Thomas solve
        for (int i = 1; i < m; ++i) {
            double w = lower[i] / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        du[m - 1] = rhs[m - 1] / diag[m - 1];
        for (int i = m - 2; i >= 0; --i) du[i] = (rhs[i] - upper[i] * du[i + 1]) / diag[i];

        // Armijo backtracking on the 2-norm of the residual (the max norm is
        // too flat near kinks of the log term to drive a line search)
        double merit = norm2(F);
        double s = 1.0;
        bool moved = false;
        for (int bt = 0; bt < 40; ++bt, s *= 0.5) {
            for (int i = 0; i < m; ++i) utry[i] = u[i] + s * du[i];
            bvp_residual(utry, lambda, dr, Ftry);
            if (norm2(Ftry) < (1.0 - 1e-4 * s) * merit) {
                u = utry;
                F = Ftry;
                res = maxnorm(F);
                moved = true;
                break;
            }
        }
        history.push_back(res);
        if (!moved) break;  // stagnated
    }
    return res;
}

}  // namespace

VortexProfile solve_vortex_profile(double lambda, double r0, int mesh_points) {
    if (lambda == 0.0) throw std::invalid_argument("solve_vortex_profile: lambda must be nonzero");
    if (!(r0 > 0.0) || mesh_points < 8)
        throw std::invalid_argument("solve_vortex_profile: bad mesh");
    const int m = mesh_points;
    const double dr = r0 / m;

    std::vector<double> u(m);
    for (int i = 1; i <= m; ++i) u[i - 1] = std::min((i - 0.5) * dr / r0, 1.0);

    // continuation in lambda from small magnitude
    std::vector<double> lams;
    double sign = lambda > 0 ? 1.0 : -1.0;
    for (double mag = 0.25; mag < std::abs(lambda); mag *= 2.0) lams.push_back(sign * mag);
    lams.push_back(lambda);

    std::vector<double> history;
    double res = 0.0;
    for (double lam : lams) res = bvp_newton(u, lam, dr, history);
    if (res > 1e-8)
        throw BvpError("vortex profile solve did not converge (residual " + std::to_string(res) +
                           ")",
                       history);

    VortexProfile p;
    p.r0 = r0;
    p.lambda = lambda;
    p.u = std::move(u);
    p.r.resize(m);
    for (int i = 1; i <= m; ++i) p.r[i - 1] = (i - 0.5) * dr;
    return p;
}

SpectralField vortex_dipole(const Grid& grid, const VortexProfile& profile, double x0) {
    if (grid.dim() != 2) throw std::invalid_argument("vortex_dipole: 2D grid expected");
    const Axis& ax = grid.axes[0];
    const Axis& ay = grid.axes[1];
    const Basis basis = Basis::neumann;
    const int nx = ax.n_nodes(basis);
    const int ny = ay.n_nodes(basis);
    std::vector<cd> nodal(static_cast<std::size_t>(nx) * ny);
    auto core = [&](double x, double y, double charge) {
        double r = std::hypot(x, y);
        if (r == 0.0) return cd(0.0, 0.0);
        double th = std::atan2(y, x);
        return profile(r) * std::exp(cd(0.0, charge * th));
    };
    for (int i = 0; i < nx; ++i) {
        double x = ax.node(basis, i);
        for (int j = 0; j < ny; ++j) {
            double y = ay.node(basis, j);
            nodal[static_cast<std::size_t>(i) * ny + j] =
                core(x - x0, y, +1.0) * core(x + x0, y, -1.0);
        }
    }
    return forward_transform(nodal, grid, basis);
}

void write_profile_csv(const VortexProfile& profile, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os.precision(17);
    os << "r,u\n";
    for (std::size_t i = 0; i < profile.r.size(); ++i)
        os << profile.r[i] << "," << profile.u[i] << "\n";
}

}  // namespace logse
