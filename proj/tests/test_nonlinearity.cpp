#include <doctest.h>

#include <cmath>
#include <random>

#include "logse/initial_data.hpp"
#include "logse/nonlinearity.hpp"
#include "logse/potentials.hpp"

using namespace logse;

namespace {

// random complex numbers with log-uniform magnitude in [rmin, rmax]
cd random_z(std::mt19937_64& rng, double rmin, double rmax) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double r = rmin * std::pow(rmax / rmin, uni(rng));
    double th = 2.0 * pi * uni(rng);
    return r * std::exp(cd(0.0, th));
}

}  // namespace

TEST_CASE("g: exact values and the zero convention") {
    CHECK(g(cd(0.0, 0.0)) == cd(0.0, 0.0));
    CHECK(g(cd(1.0, 0.0)) == cd(0.0, 0.0));
    double e = std::exp(1.0);
    cd v = g(cd(0.0, e));
    CHECK(std::abs(v - cd(0.0, 2.0 * e)) < 1e-14);
}

TEST_CASE("g phase equivariance and growth envelope") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        cd z = random_z(rng, 1e-8, 1e8);
        double th = 2.0 * pi * uni(rng);
        cd rot = std::exp(cd(0.0, th));
        CHECK(std::abs(g(rot * z) - rot * g(z)) < 1e-12 * std::abs(g(z)) + 1e-280);
        // |g(z)| <= C (|z|^{1.5} + |z|^{0.5}) with an empirical constant
        double r = std::abs(z);
        CHECK(std::abs(g(z)) <= 40.0 * (std::pow(r, 1.5) + std::pow(r, 0.5)));
    }
}

TEST_CASE("g_eps: values, argument checking, uniform closeness to g") {
    CHECK(g_eps(cd(0.0, 0.0), 0.5) == cd(0.0, 0.0));
    double eps = 0.25;
    CHECK(std::abs(g_eps(cd(1.0 - eps, 0.0), eps)) < 1e-15);
    CHECK_THROWS_AS(g_eps(cd(1.0, 0.0), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(g_eps(cd(1.0, 0.0), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(g_eps(cd(1.0, 0.0), -0.5), std::invalid_argument);

    // |g - g_eps| <= 2 eps on a magnitude sweep
    std::mt19937_64 rng(2);
    for (double eps2 : {1e-1, 1e-3}) {
        for (int k = 0; k < 20000; ++k) {
            cd z = random_z(rng, 1e-12, 10.0);
            CHECK(std::abs(g(z) - g_eps(z, eps2)) <= 2.0 * eps2 * (1 + 1e-12));
        }
    }
}

TEST_CASE("apply_B: zero field, constant field, elementwise oracle") {
    std::vector<cd> zeros(8, cd(0.0, 0.0));
    std::vector<double> V(8, -4.0);
    for (cd z : apply_B(zeros, V, -1.0)) CHECK(z == cd(0.0, 0.0));

    std::vector<cd> ones(8, cd(1.0, 0.0));
    for (cd z : apply_B(ones, V, 3.7)) CHECK(std::abs(z - cd(-4.0, 0.0)) < 1e-15);

    CHECK_THROWS_AS(apply_B(ones, std::vector<double>(7, 0.0), 1.0), std::invalid_argument);

    // two-Gausson samples against a scalar-loop oracle composed from g and V
    Grid grid = Grid::make_1d(-16.0, 16.0, 256);
    SpectralField f = two_gaussons(grid, {});
    std::vector<cd> nodal = inverse_transform(f);
    std::vector<double> sw = square_well_values(grid, Basis::periodic);
    std::vector<cd> out = apply_B(nodal, sw, -1.0);
    for (std::size_t i = 0; i < nodal.size(); ++i) {
        cd z = nodal[i];
        cd expect = sw[i] * z;
        if (std::abs(z) > 0.0) expect += -1.0 * z * std::log(std::norm(z));
        CHECK(std::abs(out[i] - expect) < 1e-13 * (1.0 + std::abs(expect)));
    }
}

TEST_CASE("pairing and Lipschitz inequalities: exact points") {
    CHECK(im_pairing_check(cd(1.0, 2.0), cd(1.0, 2.0)));
    CHECK(im_pairing_check(cd(1.0, 0.0), cd(0.0, 1.0)));
    CHECK(lipschitz_bound_check(cd(0.3, -0.4), cd(0.3, -0.4), 0.1));
    for (double eps : {0.5, 0.1, 1e-3})
        CHECK(lipschitz_bound_check(cd(0.0, 0.0), cd(eps, 0.0), eps));
    CHECK_THROWS_AS(lipschitz_bound_check(cd(1, 0), cd(0, 1), 2.0), std::invalid_argument);
}

TEST_CASE("randomized inequality sweep never fails") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const int n = 200000;
    int bad = 0;
    for (int k = 0; k < n; ++k) {
        cd z1 = random_z(rng, 1e-12, 1e3);
        cd z2 = random_z(rng, 1e-12, 1e3);
        if (!im_pairing_check(z1, z2)) ++bad;
        double eps = std::pow(10.0, -3.0 * uni(rng)) * 0.999;
        if (!lipschitz_bound_check(z1, z2, eps)) ++bad;
    }
    CHECK(bad == 0);
}
