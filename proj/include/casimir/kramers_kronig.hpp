#pragma once

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/permittivity.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace casimir {

/// Im eps(omega) sampled on the real frequency axis.
struct OpticalDataTable {
    std::vector<double> omega;  // rad/s, strictly increasing, > 0
    std::vector<double> im_eps; // >= 0

    void validate() const {
        if (omega.empty()) throw InputError("optical data: empty table");
        if (omega.size() != im_eps.size()) throw InputError("optical data: column length mismatch");
        for (std::size_t j = 0; j < omega.size(); ++j) {
            if (!(omega[j] > 0.0) || !std::isfinite(omega[j]))
                throw InvariantError("optical data: omega must be finite and > 0");
            if (j > 0 && !(omega[j] > omega[j - 1]))
                throw InvariantError("optical data: omega must be strictly increasing");
            if (!(im_eps[j] >= 0.0) || !std::isfinite(im_eps[j]))
                throw InvariantError("optical data: Im eps must be finite and >= 0 (passive medium)");
        }
    }
};

namespace detail {

// Integral over [w_n, inf) of w * A (w_n/w)^3 / (w^2 + xi^2) dw, divided by A.
// Substituting w = w_n x gives I(s), s = xi/w_n, with
// I(s) = int_1^inf dx / (x^2 (x^2 + s^2)) = (1 - atan(s)/s) / s^2.
inline double kk_cubic_tail(double w_n, double xi) {
    const double s = xi / w_n;
    double integral;
    if (s < 1e-3) {
        const double s2 = s * s;
        integral = 1.0 / 3.0 - s2 / 5.0 + s2 * s2 / 7.0;
    } else {
        integral = (1.0 - std::atan(s) / s) / (s * s);
    }
    return integral;
}

} // namespace detail

/// eps(i xi) = 1 + (2/pi) int_0^inf w Im eps(w) / (w^2 + xi^2) dw.
///
/// Trapezoid rule in log w over the tabulated range. Above the last point Im eps
/// is continued as a 1/w^3 tail, below the first point it is taken as zero.
inline double kk_transform(const OpticalDataTable& data, double xi) {
    data.validate();
    if (!(xi >= 0.0)) throw DomainError("kk_transform: xi must be >= 0");
    const double xi2 = xi * xi;
    // d w = w d(ln w), so the log-space integrand is w^2 Im eps / (w^2 + xi^2).
    auto g = [&](std::size_t j) {
        const double w = data.omega[j];
        return w * w * data.im_eps[j] / (w * w + xi2);
    };
    double sum = 0.0;
    double g_prev = g(0);
    for (std::size_t j = 1; j < data.omega.size(); ++j) {
        const double g_cur = g(j);
        sum += 0.5 * (g_prev + g_cur) * std::log(data.omega[j] / data.omega[j - 1]);
        g_prev = g_cur;
    }
    const double w_n = data.omega.back();
    sum += data.im_eps.back() * detail::kk_cubic_tail(w_n, xi);
    return 1.0 + (2.0 / pi) * sum;
}

/// Tabulate eps(i xi) on `xi_grid` through the KK relation. The static value is
/// the transform at xi = 0, which is finite for any bounded table (insulator-like).
inline TabulatedPermittivity build_tabulated(const OpticalDataTable& data, std::span<const double> xi_grid) {
    TabulatedPermittivity t;
    t.grid.assign(xi_grid.begin(), xi_grid.end());
    t.values.reserve(xi_grid.size());
    for (double xi : xi_grid) t.values.push_back(kk_transform(data, xi));
    t.static_value = kk_transform(data, 0.0);
    t.validate();
    return t;
}

} // namespace casimir
