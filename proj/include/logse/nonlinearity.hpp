#ifndef LOGSE_NONLINEARITY_HPP
#define LOGSE_NONLINEARITY_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace logse {

using cd = std::complex<double>;

// g(z) = z ln(|z|^2), with the convention g(0) = 0. No small-amplitude floor
// is applied anywhere: the scheme works with the unregularized nonlinearity,
// IEEE semantics apply for tiny nonzero |z|.
inline cd g(cd z) {
    double r = std::abs(z);
    if (r == 0.0) return cd(0.0, 0.0);
    return z * (2.0 * std::log(r));
}

inline void check_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");
}

// Regularized nonlinearity g_eps(z) = z ln(|z| + eps)^2, 0 < eps < 1.
inline cd g_eps(cd z, double eps) {
    check_eps(eps);
    double t = std::log(std::abs(z) + eps);
    return z * (2.0 * t);
}

// L_eps(s) = max{|ln eps|, ln(1+s)}
inline double l_eps(double s, double eps) {
    return std::max(std::abs(std::log(eps)), std::log1p(s));
}

// B(phi) = V phi + lambda ln(|phi|^2) phi, pointwise on nodal arrays.
std::vector<cd> apply_B(const std::vector<cd>& phi, const std::vector<double>& V, double lambda);

// In-place variant for hot loops; V may be null (treated as zero).
void apply_B_into(const cd* phi, const double* V, double lambda, std::size_t n, cd* out);

// |Im[(g(z1) - g(z2)) conj(z1 - z2)]| <= 2 |z1 - z2|^2
inline bool im_pairing_check(cd z1, cd z2) {
    cd d = z1 - z2;
    double lhs = std::abs(std::imag((g(z1) - g(z2)) * std::conj(d)));
    return lhs <= 2.0 * std::norm(d) * (1.0 + 1e-12) + 1e-300;
}

// |g(z1) - g(z2)| <= 4 eps + 2 (1 + L_eps(M0)) |z1 - z2|, M0 = max(|z1|,|z2|)
inline bool lipschitz_bound_check(cd z1, cd z2, double eps) {
    check_eps(eps);
    double m0 = std::max(std::abs(z1), std::abs(z2));
    double rhs = 4.0 * eps + 2.0 * (1.0 + l_eps(m0, eps)) * std::abs(z1 - z2);
    return std::abs(g(z1) - g(z2)) <= rhs * (1.0 + 1e-12);
}

}  // namespace logse

#endif
