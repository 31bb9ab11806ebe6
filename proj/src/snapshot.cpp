#include "logse/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace logse {

namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot format assumes a little-endian host");

constexpr char magic[6] = {'L', 'O', 'G', 'S', 'E', '1'};

void put_i64(std::ostream& os, std::int64_t v) { os.write(reinterpret_cast<char*>(&v), 8); }
void put_f64(std::ostream& os, double v) { os.write(reinterpret_cast<char*>(&v), 8); }

std::int64_t get_i64(std::istream& is) {
    std::int64_t v;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
}
double get_f64(std::istream& is) {
    double v;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
}

void write_header(std::ostream& os, std::int64_t kind, const Grid& grid, Basis basis) {
    os.write(magic, 6);
    put_i64(os, kind);
    put_i64(os, grid.dim());
    put_i64(os, static_cast<std::int64_t>(basis));
    for (const Axis& ax : grid.axes) {
        put_f64(os, ax.a);
        put_f64(os, ax.b);
        put_i64(os, ax.n);
    }
}

void read_header(std::istream& is, std::int64_t expected_kind, Grid& grid, Basis& basis) {
    char m[6];
    is.read(m, 6);
    if (!is || std::memcmp(m, magic, 6) != 0)
        throw std::runtime_error("snapshot: bad magic");
    std::int64_t kind = get_i64(is);
    if (kind != expected_kind) throw std::runtime_error("snapshot: unexpected field kind");
    std::int64_t dim = get_i64(is);
    if (dim < 1 || dim > 2) throw std::runtime_error("snapshot: bad dimension");
    std::int64_t btag = get_i64(is);
    if (btag < 0 || btag > 2) throw std::runtime_error("snapshot: bad basis tag");
    basis = static_cast<Basis>(btag);
    grid.axes.clear();
    for (std::int64_t j = 0; j < dim; ++j) {
        Axis ax;
        ax.a = get_f64(is);
        ax.b = get_f64(is);
        ax.n = static_cast<int>(get_i64(is));
        grid.axes.push_back(ax);
    }
    grid.validate();
}

}  // namespace

void write_snapshot(const SpectralField& field, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path);
    write_header(os, 0, field.grid, field.basis);
    os.write(reinterpret_cast<const char*>(field.coeffs.data()),
             static_cast<std::streamsize>(field.coeffs.size() * sizeof(cd)));
}

SpectralField read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    Grid grid;
    Basis basis;
    read_header(is, 0, grid, basis);
    SpectralField f(grid, basis);
    is.read(reinterpret_cast<char*>(f.coeffs.data()),
            static_cast<std::streamsize>(f.coeffs.size() * sizeof(cd)));
    if (!is) throw std::runtime_error("snapshot: truncated payload");
    return f;
}

void write_real_snapshot(const std::vector<double>& nodal, const Grid& grid, Basis basis,
                         const std::string& path) {
    if (nodal.size() != grid.n_nodes_total(basis))
        throw std::invalid_argument("real snapshot: size mismatch");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path);
    write_header(os, 1, grid, basis);
    os.write(reinterpret_cast<const char*>(nodal.data()),
             static_cast<std::streamsize>(nodal.size() * sizeof(double)));
}

std::vector<double> read_real_snapshot(const std::string& path, Grid& grid_out, Basis& basis_out) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    read_header(is, 1, grid_out, basis_out);
    std::vector<double> v(grid_out.n_nodes_total(basis_out));
    is.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (!is) throw std::runtime_error("snapshot: truncated payload");
    return v;
}

}  // namespace logse
