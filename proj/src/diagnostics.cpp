#include "logse/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "logse/operators.hpp"

namespace logse {

double mass(const SpectralField& field) {
    double s = 0.0;
    for_each_mode(field.grid, field.basis, [&](std::size_t i, double, double w) {
        s += w * std::norm(field.coeffs[i]);
    });
    return s;
}

double energy(const SpectralField& field, const std::vector<double>& V, double lambda) {
    double e = 0.0;
    for_each_mode(field.grid, field.basis, [&](std::size_t i, double mu2, double w) {
        e += w * mu2 * std::norm(field.coeffs[i]);
    });
    std::vector<cd> nodal = inverse_transform(field);
    if (!V.empty() && V.size() != nodal.size())
        throw std::invalid_argument("energy: potential size mismatch");
    for_each_node(field.grid, field.basis, [&](std::size_t i, double w) {
        double rho = std::norm(nodal[i]);
        double f = (rho > 0.0) ? lambda * (rho * std::log(rho) - rho) : 0.0;
        double v = V.empty() ? 0.0 : V[i];
        e += w * (v * rho + f);
    });
    return e;
}

std::pair<double, double> error_norms(const SpectralField& numeric,
                                      const SpectralField& reference) {
    if (numeric.basis != reference.basis)
        throw std::invalid_argument("error_norms: basis mismatch");
    SpectralField diff = pad_to(numeric, reference.grid);
    for (std::size_t i = 0; i < diff.coeffs.size(); ++i) diff.coeffs[i] -= reference.coeffs[i];
    return {sobolev_norm(diff, 0.0), sobolev_norm(diff, 1.0)};
}

double fit_order(const std::vector<std::pair<double, double>>& param_error) {
    if (param_error.size() < 3) throw std::invalid_argument("fit_order: need >= 3 rows");
    for (std::size_t i = 1; i < param_error.size(); ++i)
        if (!(param_error[i].first < param_error[i - 1].first))
            throw std::invalid_argument("fit_order: parameters must be strictly decreasing");
    std::size_t begin = (param_error.size() >= 6) ? 2 : 0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (std::size_t i = begin; i < param_error.size(); ++i) {
        double x = std::log(param_error[i].first);
        double y = std::log(std::max(param_error[i].second, 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    double denom = m * sxx - sx * sx;
    return (m * sxy - sx * sy) / denom;
}

void fit_report(ConvergenceReport& report) {
    auto param = [&](const ConvergenceRow& r) {
        return report.axis == "spatial" ? r.h : r.tau;
    };
    std::vector<std::pair<double, double>> l2, h1;
    for (const auto& r : report.rows) {
        l2.emplace_back(param(r), r.e_l2);
        h1.emplace_back(param(r), r.e_h1);
    }
    report.slope_l2 = fit_order(l2);
    report.slope_h1 = fit_order(h1);
    report.fit_begin = (report.rows.size() >= 6) ? 2 : 0;
}

void write_report_csv(const ConvergenceReport& report, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os.precision(17);
    os << "tau,h,e_l2,e_h1\n";
    for (const auto& r : report.rows)
        os << r.tau << "," << r.h << "," << r.e_l2 << "," << r.e_h1 << "\n";
}

void write_report_json(const ConvergenceReport& report, const std::string& path) {
    nlohmann::json j;
    j["axis"] = report.axis;
    if (report.axis == "fixed_ratio") j["ratio_c"] = report.ratio_c;
    j["slope_l2"] = report.slope_l2;
    j["slope_h1"] = report.slope_h1;
    j["fit_begin"] = report.fit_begin;
    j["n_rows"] = report.rows.size();
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << j.dump(2) << "\n";
}

RegularityEstimate estimate_regularity(const SpectralField& field, int l_min, int l_max) {
    if (field.grid.dim() != 1 || field.basis != Basis::neumann)
        throw std::invalid_argument("estimate_regularity: 1D Neumann fields only");
    const int n = static_cast<int>(field.coeffs.size()) - 1;
    l_max = std::min(l_max, n);
    if (l_min < 1 || l_max <= l_min)
        throw std::invalid_argument("estimate_regularity: bad mode range");

    // max-magnitude envelope over log-spaced bins; each bin spans at least
    // two consecutive modes so parity zeros of symmetric data cannot yield
    // an all-but-vanishing bin
    const int nbins = 24;
    std::vector<std::pair<double, double>> pts;  // (log l, log |c|)
    double lr = std::log(static_cast<double>(l_max) / l_min);
    int lo = l_min;
    for (int b = 0; b < nbins && lo < l_max; ++b) {
        int hi = static_cast<int>(std::floor(l_min * std::exp(lr * (b + 1) / nbins)));
        hi = std::min(std::max(hi, lo + 2), l_max);
        double mx = 0.0;
        int larg = lo;
        for (int l = lo; l < hi; ++l)
            if (std::abs(field.coeffs[l]) > mx) {
                mx = std::abs(field.coeffs[l]);
                larg = l;
            }
        if (mx > 0.0) pts.emplace_back(std::log(static_cast<double>(larg)), std::log(mx));
        lo = hi;
    }
    if (pts.size() < 3) throw std::invalid_argument("estimate_regularity: degenerate tail");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double m = static_cast<double>(pts.size());
    double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);

    RegularityEstimate est;
    est.decay_exponent = -slope;
    est.sobolev_index = est.decay_exponent - 0.5;
    est.spectral_regime = est.decay_exponent > 10.0;
    return est;
}

}  // namespace logse
