#pragma once

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/permittivity.hpp"
#include "casimir/quadrature.hpp"

#include <cmath>
#include <string>

/// Finite-temperature Lifshitz pressure between two plates across a medium.
///
///   P(a, T) = -k_B T / (8 pi a^3) * sum'_l int_{sqrt(eps0) zeta_l}^inf y^2 dy
///             [ (e^y / (r_TM1 r_TM2) - 1)^-1 + (e^y / (r_TE1 r_TE2) - 1)^-1 ]
///
/// with zeta_l = 2 a xi_l / c and xi_l = 2 pi k_B T l / hbar. The primed sum
/// gives the l = 0 term half weight. Negative pressure is attraction.
namespace casimir {

struct LayerSystem {
    PermittivityModel plate1;
    PermittivityModel medium;
    PermittivityModel plate2;
    double temperature = 300.0; // K

    void validate() const {
        if (!(temperature > 0.0) || !std::isfinite(temperature))
            throw InputError("layer system: temperature must be finite and > 0");
        if (medium.diverges_at_zero()) throw InputError("layer system: the gap medium must have a finite static permittivity");
    }
};

struct QuadratureSettings {
    double rel_tol = 1e-6;
    int max_matsubara = 5000;
    double y_upper_margin = 60.0;
    int max_subdivisions = 30;

    void validate() const {
        if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) throw InputError("settings: rel_tol must lie in (0, 1e-2]");
        if (max_matsubara < 1) throw InputError("settings: max_matsubara must be >= 1");
        if (!(y_upper_margin >= 20.0)) throw InputError("settings: y_upper_margin must be >= 20");
        if (max_subdivisions < 1) throw InputError("settings: max_subdivisions must be >= 1");
    }
};

struct PressurePoint {
    double separation = 0.0; // m
    double pressure = 0.0;   // Pa, negative = attractive
    int terms_used = 0;      // Matsubara terms summed, l = 0 included
    double est_error = 0.0;  // Pa
};

/// Dimensionless Matsubara frequency 4 pi k_B T a l / (hbar c).
inline double matsubara_zeta(int l, double separation, double temperature, const PhysicalConstants& k = codata2018) {
    return 4.0 * pi * k.k_b * temperature * separation * l / (k.hbar * k.c_light);
}

/// Dimensional Matsubara frequency xi_l = 2 pi k_B T l / hbar, rad/s.
inline double matsubara_xi(int l, double temperature, const PhysicalConstants& k = codata2018) {
    return 2.0 * pi * k.k_b * temperature * l / k.hbar;
}

namespace detail {

// sqrt(y^2 + (eps_p - eps_m) zeta^2); the argument is >= eps_p zeta^2 >= 0 when y >= sqrt(eps_m) zeta.
inline double normal_wavevector(double eps_plate, double eps_medium, double zeta, double y) {
    double arg = y * y + (eps_plate - eps_medium) * zeta * zeta;
    if (arg < 0.0) {
        if (arg < -1e-12 * (y * y + eps_medium * zeta * zeta))
            throw DomainError("reflection coefficient: y below the propagation threshold sqrt(eps_medium) zeta");
        arg = 0.0;
    }
    return std::sqrt(arg);
}

} // namespace detail

/// TM reflection coefficient at a plate/medium interface.
inline double reflection_tm(double eps_plate, double eps_medium, double zeta, double y) {
    if (std::isinf(eps_plate)) return 1.0;
    const double k = detail::normal_wavevector(eps_plate, eps_medium, zeta, y);
    const double num = eps_plate * y - eps_medium * k;
    const double den = eps_plate * y + eps_medium * k;
    if (den == 0.0) return 0.0;
    return num / den;
}

/// TE reflection coefficient at a plate/medium interface.
inline double reflection_te(double eps_plate, double eps_medium, double zeta, double y) {
    if (std::isinf(eps_plate)) return 1.0;
    const double k = detail::normal_wavevector(eps_plate, eps_medium, zeta, y);
    if (k + y == 0.0) return 0.0;
    return (k - y) / (k + y);
}

struct TermValue {
    double value = 0.0;
    double error = 0.0;
};

namespace detail {

// y^2 rho / (e^y - rho), written to stay finite for large y and for rho -> 1 near y = 0.
inline double mode_weight(double y, double rho) {
    if (rho == 0.0 || y == 0.0) return 0.0;
    if (y < 1.0) return y * y * rho / (std::expm1(y) + (1.0 - rho));
    const double q = rho * std::exp(-y);
    return y * y * q / (1.0 - q);
}

template <class F>
TermValue integrate_term(const F& f, double lower, const QuadratureSettings& s, int l) {
    const double upper = lower + s.y_upper_margin;
    const double scale = quad::composite_simpson([&](double y) { return std::abs(f(y)); }, lower, upper, 64);
    if (scale == 0.0) return {};
    const double tol = 0.1 * s.rel_tol * scale;
    const auto est = quad::adaptive_simpson(f, lower, upper, tol, s.max_subdivisions);
    if (!est.converged)
        throw ConvergenceError("y-integral of Matsubara term l = " + std::to_string(l) + " did not converge", est.value);
    return {est.value, est.error};
}

} // namespace detail

/// Value of the y-integral for Matsubara index l (no 1/2 weight for l = 0).
///
/// At l = 0 the reflection coefficients take their zeta -> 0 limits: TM is
/// (eps - eps0)/(eps + eps0) for a finite static permittivity and +1 for a
/// divergent one; TE vanishes unless the plate is a perfect conductor.
inline TermValue matsubara_term(const LayerSystem& system, double separation, int l,
                                const QuadratureSettings& settings = {},
                                const PhysicalConstants& k = codata2018) {
    if (l < 0) throw DomainError("matsubara_term: l must be >= 0");
    if (!(separation > 0.0)) throw DomainError("matsubara_term: separation must be > 0");

    if (l == 0) {
        const double e0 = system.medium.static_value();
        auto tm_limit = [e0](const PermittivityModel& m) {
            if (m.diverges_at_zero()) return 1.0;
            const double e = m.static_value();
            return (e - e0) / (e + e0);
        };
        const double rho_tm = tm_limit(system.plate1) * tm_limit(system.plate2);
        const double rho_te = system.plate1.te_zero_frequency_limit() * system.plate2.te_zero_frequency_limit();
        auto f = [=](double y) { return detail::mode_weight(y, rho_tm) + detail::mode_weight(y, rho_te); };
        return detail::integrate_term(f, 0.0, settings, 0);
    }

    const double xi = matsubara_xi(l, system.temperature, k);
    const double zeta = matsubara_zeta(l, separation, system.temperature, k);
    const double e0 = system.medium.evaluate(xi);
    const double e1 = system.plate1.evaluate(xi);
    const double e2 = system.plate2.evaluate(xi);
    const double lower = std::sqrt(e0) * zeta;
    auto f = [=](double y) {
        const double rho_tm = reflection_tm(e1, e0, zeta, y) * reflection_tm(e2, e0, zeta, y);
        const double rho_te = reflection_te(e1, e0, zeta, y) * reflection_te(e2, e0, zeta, y);
        return detail::mode_weight(y, rho_tm) + detail::mode_weight(y, rho_te);
    };
    return detail::integrate_term(f, lower, settings, l);
}

/// Casimir pressure at one separation.
///
/// The Matsubara sum stops once three consecutive terms are each below
/// rel_tol/10 of the accumulated sum of |term|. The magnitude sum is used as the
/// scale so that the rule still terminates when attraction and repulsion cancel
/// near a crossover. A term only counts towards the stop if the sequence is
/// decaying geometrically there (successive ratios agree within 25%): terms
/// that dip towards zero where the dielectric contrast changes sign are small
/// without the tail being small. The reported error adds the quadrature
/// estimates to a geometric extrapolation of the remaining tail.
inline PressurePoint pressure(const LayerSystem& system, double separation, const QuadratureSettings& settings = {},
                              const PhysicalConstants& k = codata2018) {
    system.validate();
    settings.validate();
    if (!(separation > 0.0) || !std::isfinite(separation)) throw DomainError("pressure: separation must be finite and > 0");

    const double prefactor = -k.k_b * system.temperature / (8.0 * pi * separation * separation * separation);

    const TermValue t0 = matsubara_term(system, separation, 0, settings, k);
    double sum = 0.5 * t0.value;
    double magnitude = std::abs(sum);
    double quad_error = 0.5 * t0.error;
    double previous = std::abs(sum);
    double previous_ratio = -1.0; // unknown
    int small_in_row = 0;
    double tail = 0.0;
    bool converged = false;
    int l = 1;
    for (; l <= settings.max_matsubara; ++l) {
        const TermValue t = matsubara_term(system, separation, l, settings, k);
        sum += t.value;
        magnitude += std::abs(t.value);
        quad_error += t.error;
        const double size = std::abs(t.value);
        const double ratio = previous > 0.0 ? size / previous : (size == 0.0 ? 0.0 : 1.0);
        const bool geometric = size == 0.0 || (ratio < 1.0 && previous_ratio > 0.0 &&
                                               std::abs(ratio / previous_ratio - 1.0) <= 0.25);
        small_in_row = (size <= 0.1 * settings.rel_tol * magnitude && geometric) ? small_in_row + 1 : 0;
        if (small_in_row >= 3) {
            tail = size * ratio / (1.0 - ratio);
            converged = true;
            break;
        }
        previous = size;
        previous_ratio = ratio;
    }
    if (!converged) {
        throw ConvergenceError("Matsubara sum did not converge within " + std::to_string(settings.max_matsubara) +
                                   " terms at a = " + std::to_string(separation) + " m",
                               prefactor * sum);
    }
    return PressurePoint{separation, prefactor * sum, l + 1, std::abs(prefactor) * (quad_error + tail)};
}

} // namespace casimir
