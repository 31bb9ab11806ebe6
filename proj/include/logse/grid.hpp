#ifndef LOGSE_GRID_HPP
#define LOGSE_GRID_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace logse {

inline constexpr double pi = 3.14159265358979323846;

enum class Basis { periodic, dirichlet, neumann };

std::string to_string(Basis b);
Basis basis_from_string(const std::string& s);

// One spatial axis of a rectangular tensor grid: interval (a, b) with N
// subintervals, N positive and even. Node and coefficient layouts depend on
// the basis:
//   periodic:  N nodes x_j = a + j h (j = 0..N-1), modes l = -N/2..N/2-1,
//              multipliers mu_l = 2*pi*l/(b-a)
//   dirichlet: N-1 interior nodes (j = 1..N-1), sine modes l = 1..N-1,
//              mu_l = pi*l/(b-a)
//   neumann:   N+1 nodes (j = 0..N), cosine modes l = 0..N,
//              mu_l = pi*l/(b-a)
struct Axis {
    double a = 0.0;
    double b = 1.0;
    int n = 4;  // subinterval count N

    double length() const { return b - a; }
    double h() const { return (b - a) / n; }

    int n_nodes(Basis basis) const {
        switch (basis) {
            case Basis::periodic: return n;
            case Basis::dirichlet: return n - 1;
            case Basis::neumann: return n + 1;
        }
        return 0;
    }
    // Coefficient count equals node count for all three bases.
    int n_coeffs(Basis basis) const { return n_nodes(basis); }

    // Physical node coordinate for the i-th stored node.
    double node(Basis basis, int i) const {
        int j = (basis == Basis::dirichlet) ? i + 1 : i;
        return a + j * h();
    }

    // Frequency multiplier of the i-th stored coefficient.
    double mu(Basis basis, int i) const {
        if (basis == Basis::periodic) {
            int l = i - n / 2;
            return 2.0 * pi * l / length();
        }
        int l = (basis == Basis::dirichlet) ? i + 1 : i;
        return pi * l / length();
    }

    // Integer mode index of the i-th stored coefficient.
    int mode(Basis basis, int i) const {
        if (basis == Basis::periodic) return i - n / 2;
        return (basis == Basis::dirichlet) ? i + 1 : i;
    }

    // L^2 weight of the i-th basis function: int_a^b |e_l|^2 dx.
    double weight(Basis basis, int i) const {
        if (basis == Basis::periodic) return length();
        if (basis == Basis::neumann && i == 0) return length();
        return 0.5 * length();
    }

    std::vector<double> nodes(Basis basis) const {
        std::vector<double> x(n_nodes(basis));
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = node(basis, static_cast<int>(i));
        return x;
    }
};

struct Grid {
    std::vector<Axis> axes;

    Grid() = default;
    explicit Grid(Axis ax) : axes{ax} { validate(); }
    Grid(Axis ax, Axis ay) : axes{ax, ay} { validate(); }

    static Grid make_1d(double a, double b, int n) { return Grid(Axis{a, b, n}); }
    static Grid make_2d(double ax, double bx, int nx, double ay, double by, int ny) {
        return Grid(Axis{ax, bx, nx}, Axis{ay, by, ny});
    }

    int dim() const { return static_cast<int>(axes.size()); }

    std::size_t n_nodes_total(Basis basis) const {
        std::size_t m = 1;
        for (const auto& ax : axes) m *= static_cast<std::size_t>(ax.n_nodes(basis));
        return m;
    }
    std::size_t n_coeffs_total(Basis basis) const { return n_nodes_total(basis); }

    bool operator==(const Grid& o) const {
        if (axes.size() != o.axes.size()) return false;
        for (std::size_t j = 0; j < axes.size(); ++j)
            if (axes[j].a != o.axes[j].a || axes[j].b != o.axes[j].b || axes[j].n != o.axes[j].n)
                return false;
        return true;
    }

    void validate() const {
        if (axes.empty() || axes.size() > 2)
            throw std::invalid_argument("grid must be 1D or 2D");
        for (const auto& ax : axes) {
            if (!(ax.b > ax.a)) throw std::invalid_argument("grid axis requires b > a");
            if (ax.n < 4 || ax.n % 2 != 0)
                throw std::invalid_argument("grid axis requires even N >= 4");
        }
    }
};

}  // namespace logse

#endif
