#include "logse/nonlinearity.hpp"

namespace logse {

void apply_B_into(const cd* phi, const double* V, double lambda, std::size_t n, cd* out) {
    for (std::size_t i = 0; i < n; ++i) {
        cd b = lambda * g(phi[i]);
        if (V) b += V[i] * phi[i];
        out[i] = b;
    }
}

std::vector<cd> apply_B(const std::vector<cd>& phi, const std::vector<double>& V, double lambda) {
    if (phi.size() != V.size()) throw std::invalid_argument("apply_B: array length mismatch");
    std::vector<cd> out(phi.size());
    apply_B_into(phi.data(), V.data(), lambda, phi.size(), out.data());
    return out;
}

}  // namespace logse
