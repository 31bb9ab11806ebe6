#include "logse/field.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

namespace logse {

namespace {

std::string basis_names[] = {"periodic", "dirichlet", "neumann"};

// FFTW plan creation is not thread-safe; execution on distinct buffers is.
// Plans (with their attached buffers) are cached per thread, creation is
// serialized by a global mutex.
std::mutex fftw_plan_mutex;

struct FftPlan {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    fftw_complex* buf = nullptr;
    int n = 0;

    explicit FftPlan(int size) : n(size) {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        buf = fftw_alloc_complex(static_cast<std::size_t>(n));
        fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~FftPlan() {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(buf);
    }
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    cd* data() { return reinterpret_cast<cd*>(buf); }
};

FftPlan& plan_for(int n) {
    thread_local std::map<int, std::unique_ptr<FftPlan>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<FftPlan>(n);
    return *slot;
}

// 1D periodic: coeffs in natural order l = -N/2..N/2-1, stored index i = l + N/2.
// hat_l = (1/N) sum_j v_j e^{-2 pi i l j / N}.
void fourier_forward_1d(const cd* v, int n, cd* out) {
    FftPlan& p = plan_for(n);
    std::memcpy(p.data(), v, sizeof(cd) * n);
    fftw_execute(p.fwd);
    const double s = 1.0 / n;
    const cd* w = p.data();
    for (int i = 0; i < n; ++i) {
        int k = (i - n / 2 + n) % n;  // DFT bin of mode l = i - n/2
        out[i] = w[k] * s;
    }
}

void fourier_inverse_1d(const cd* c, int n, cd* out) {
    FftPlan& p = plan_for(n);
    cd* w = p.data();
    for (int i = 0; i < n; ++i) {
        int k = (i - n / 2 + n) % n;
        w[k] = c[i];
    }
    fftw_execute(p.bwd);
    std::memcpy(out, p.data(), sizeof(cd) * n);
}

// Sine (Dirichlet) and cosine (Neumann) transforms via odd/even extension to
// a periodic grid of length 2N, sharing the complex FFT engine. For the odd
// extension W_l = -i N s_l; for the even extension W_l = N c_l (interior),
// W_0 = 2N c_0, W_N = 2N c_N.
void sine_forward_1d(const cd* v, int n, cd* out) {
    // v has n-1 entries (j = 1..n-1), out has n-1 entries (l = 1..n-1)
    FftPlan& p = plan_for(2 * n);
    cd* w = p.data();
    w[0] = 0.0;
    w[n] = 0.0;
    for (int j = 1; j < n; ++j) {
        w[j] = v[j - 1];
        w[2 * n - j] = -v[j - 1];
    }
    fftw_execute(p.fwd);
    const cd im(0.0, 1.0);
    for (int l = 1; l < n; ++l) out[l - 1] = im * p.data()[l] / static_cast<double>(n);
}

void sine_inverse_1d(const cd* c, int n, cd* out) {
    FftPlan& p = plan_for(2 * n);
    cd* w = p.data();
    const cd im(0.0, 1.0);
    w[0] = 0.0;
    w[n] = 0.0;
    for (int l = 1; l < n; ++l) {
        cd W = -im * static_cast<double>(n) * c[l - 1];
        w[l] = W;
        w[2 * n - l] = -W;
    }
    fftw_execute(p.bwd);
    const double s = 1.0 / (2 * n);
    for (int j = 1; j < n; ++j) out[j - 1] = p.data()[j] * s;
}

void cosine_forward_1d(const cd* v, int n, cd* out) {
    // v has n+1 entries (j = 0..n), out has n+1 entries (l = 0..n)
    FftPlan& p = plan_for(2 * n);
    cd* w = p.data();
    for (int j = 0; j <= n; ++j) w[j] = v[j];
    for (int j = 1; j < n; ++j) w[2 * n - j] = v[j];
    fftw_execute(p.fwd);
    const double s = 1.0 / n;
    out[0] = p.data()[0] * (0.5 * s);
    for (int l = 1; l < n; ++l) out[l] = p.data()[l] * s;
    out[n] = p.data()[n] * (0.5 * s);
}

void cosine_inverse_1d(const cd* c, int n, cd* out) {
    FftPlan& p = plan_for(2 * n);
    cd* w = p.data();
    w[0] = 2.0 * n * c[0];
    w[n] = 2.0 * n * c[n];
    for (int l = 1; l < n; ++l) {
        cd W = static_cast<double>(n) * c[l];
        w[l] = W;
        w[2 * n - l] = W;
    }
    fftw_execute(p.bwd);
    const double s = 1.0 / (2 * n);
    for (int j = 0; j <= n; ++j) out[j] = p.data()[j] * s;
}

void transform_1d(const cd* in, int n, Basis basis, bool forward, cd* out) {
    switch (basis) {
        case Basis::periodic:
            forward ? fourier_forward_1d(in, n, out) : fourier_inverse_1d(in, n, out);
            break;
        case Basis::dirichlet:
            forward ? sine_forward_1d(in, n, out) : sine_inverse_1d(in, n, out);
            break;
        case Basis::neumann:
            forward ? cosine_forward_1d(in, n, out) : cosine_inverse_1d(in, n, out);
            break;
    }
}

// 2D transforms axis by axis; node and coefficient counts coincide per axis
// for every basis, so the array shape is invariant.
void transform_nd(const cd* in, const Grid& grid, Basis basis, bool forward, cd* out) {
    if (grid.dim() == 1) {
        transform_1d(in, grid.axes[0].n, basis, forward, out);
        return;
    }
    const int nx = grid.axes[0].n_nodes(basis);
    const int ny = grid.axes[1].n_nodes(basis);
    thread_local std::vector<cd> line;
    line.resize(static_cast<std::size_t>(std::max(nx, ny)) * 2);
    cd* lin = line.data();
    cd* lout = line.data() + std::max(nx, ny);
    // along y (contiguous rows)
    for (int ix = 0; ix < nx; ++ix) {
        const cd* row = in + static_cast<std::size_t>(ix) * ny;
        transform_1d(row, grid.axes[1].n, basis, forward, out + static_cast<std::size_t>(ix) * ny);
    }
    // along x (strided columns)
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) lin[ix] = out[static_cast<std::size_t>(ix) * ny + iy];
        transform_1d(lin, grid.axes[0].n, basis, forward, lout);
        for (int ix = 0; ix < nx; ++ix) out[static_cast<std::size_t>(ix) * ny + iy] = lout[ix];
    }
}

}  // namespace

std::string to_string(Basis b) { return basis_names[static_cast<int>(b)]; }

Basis basis_from_string(const std::string& s) {
    for (int i = 0; i < 3; ++i)
        if (s == basis_names[i]) return static_cast<Basis>(i);
    throw std::invalid_argument("unknown basis: " + s);
}

void forward_transform_into(const cd* nodal, const Grid& grid, Basis basis, cd* coeffs) {
    transform_nd(nodal, grid, basis, true, coeffs);
}

void inverse_transform_into(const cd* coeffs, const Grid& grid, Basis basis, cd* nodal) {
    transform_nd(coeffs, grid, basis, false, nodal);
}

SpectralField forward_transform(const std::vector<cd>& nodal, const Grid& grid, Basis basis) {
    if (nodal.size() != grid.n_nodes_total(basis))
        throw std::invalid_argument("nodal array size does not match grid/basis");
    SpectralField f(grid, basis);
    forward_transform_into(nodal.data(), grid, basis, f.coeffs.data());
    return f;
}

std::vector<cd> inverse_transform(const SpectralField& field) {
    if (field.coeffs.size() != field.grid.n_coeffs_total(field.basis))
        throw std::invalid_argument("malformed field: coefficient size mismatch");
    std::vector<cd> nodal(field.grid.n_nodes_total(field.basis));
    inverse_transform_into(field.coeffs.data(), field.grid, field.basis, nodal.data());
    return nodal;
}

}  // namespace logse
