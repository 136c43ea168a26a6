#pragma once

#include "casimir/csv.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/roots.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace casimir {

/// A plate pair in the dark and under illumination. The lit system is the dark
/// one with plate 2 replaced, which `make_scenario` guarantees.
struct Scenario {
    std::string name;
    LayerSystem dark_system;
    LayerSystem lit_system;
    double a_min = 50e-9;
    double a_max = 500e-9;
    int points = 100;

    void validate() const {
        if (!(a_min > 0.0 && a_min < a_max)) throw InputError("scenario: need 0 < a_min < a_max");
        if (points < 2) throw InputError("scenario: points must be >= 2");
        dark_system.validate();
        lit_system.validate();
    }
};

inline Scenario make_scenario(std::string name, const LayerSystem& dark, PermittivityModel lit_plate2,
                              double a_min = 50e-9, double a_max = 500e-9, int points = 100) {
    LayerSystem lit = dark;
    lit.plate2 = std::move(lit_plate2);
    Scenario s{std::move(name), dark, std::move(lit), a_min, a_max, points};
    s.validate();
    return s;
}

inline std::vector<double> log_grid(double a_min, double a_max, int points) {
    if (!(a_min > 0.0 && a_min < a_max)) throw InputError("range: need 0 < a_min < a_max");
    if (points < 2) throw InputError("range: points must be >= 2");
    std::vector<double> g(static_cast<std::size_t>(points));
    const double step = std::log(a_max / a_min) / (points - 1);
    for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = a_min * std::exp(step * i);
    g.front() = a_min;
    g.back() = a_max;
    return g;
}

struct SweepEntry {
    double separation = 0.0;
    std::optional<PressurePoint> point; // empty when evaluation failed
    std::string error;

    [[nodiscard]] bool ok() const { return point.has_value(); }
};

struct PressureSweep {
    std::vector<SweepEntry> entries;

    [[nodiscard]] std::size_t failures() const {
        return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.ok(); }));
    }
};

namespace detail {

inline unsigned worker_count(unsigned requested, std::size_t jobs) {
    unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(n, jobs));
}

} // namespace detail

/// Pressure on `grid`. Points are independent and are split across `threads`
/// workers (0 = hardware concurrency); the result does not depend on the split.
/// A failing point is recorded with its message and the sweep continues.
inline PressureSweep sweep_grid(const LayerSystem& system, const std::vector<double>& grid,
                                const QuadratureSettings& settings = {}, unsigned threads = 0) {
    system.validate();
    settings.validate();
    PressureSweep out;
    out.entries.resize(grid.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            auto& e = out.entries[i];
            e.separation = grid[i];
            try {
                e.point = pressure(system, grid[i], settings);
            } catch (const std::exception& ex) {
                e.error = ex.what();
            }
        }
    };
    const unsigned n = detail::worker_count(threads, grid.size());
    if (n <= 1) {
        work();
        return out;
    }
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
    pool.clear();
    return out;
}

inline PressureSweep sweep(const LayerSystem& system, double a_min, double a_max, int points,
                           const QuadratureSettings& settings = {}, unsigned threads = 0) {
    return sweep_grid(system, log_grid(a_min, a_max, points), settings, threads);
}

struct CrossoverResult {
    double separation = 0.0; // bracket midpoint, m
    double a_lo = 0.0;
    double a_hi = 0.0;
    int sign_below = 0;
    int sign_above = 0;
    int sign_changes = 0; // sign changes seen on the coarse scan
};

/// First attraction/repulsion switch on [a_min, a_max].
///
/// A log-spaced coarse scan of `scan_points` separations locates sign changes;
/// the one at the smallest separation is bisected until the bracket is no wider
/// than `tol_m`. Returns nullopt when the scan sees no sign change.
inline std::optional<CrossoverResult> find_crossover(const LayerSystem& system, double a_min, double a_max,
                                                     double tol_m = 0.1e-9, const QuadratureSettings& settings = {},
                                                     int scan_points = 64, unsigned threads = 0) {
    if (!(tol_m > 0.0)) throw InputError("crossover: tolerance must be > 0");
    const auto grid = log_grid(a_min, a_max, scan_points);
    const auto scan = sweep_grid(system, grid, settings, threads);
    for (const auto& e : scan.entries)
        if (!e.ok()) throw ConvergenceError("crossover scan failed at a = " + csv::sig12(e.separation) + " m: " + e.error, 0.0);

    int changes = 0;
    std::optional<std::size_t> first;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double p0 = scan.entries[i].point->pressure;
        const double p1 = scan.entries[i + 1].point->pressure;
        if (p0 * p1 < 0.0) {
            ++changes;
            if (!first) first = i;
        }
    }
    if (!first) return std::nullopt;

    auto p_of = [&](double a) {
        try {
            return pressure(system, a, settings).pressure;
        } catch (const ConvergenceError& ex) {
            throw ConvergenceError("crossover bisection failed at a = " + csv::sig12(a) + " m: " + ex.what(),
                                   ex.partial());
        }
    };
    const std::size_t i = *first;
    const auto br = roots::bisect(p_of, grid[i], grid[i + 1], scan.entries[i].point->pressure,
                                  scan.entries[i + 1].point->pressure, tol_m);
    CrossoverResult r;
    r.a_lo = br.lo;
    r.a_hi = br.hi;
    r.separation = 0.5 * (br.lo + br.hi);
    r.sign_below = scan.entries[i].point->pressure < 0.0 ? -1 : 1;
    r.sign_above = -r.sign_below;
    r.sign_changes = changes;
    return r;
}

struct ModulationResult {
    PressurePoint dark;
    PressurePoint lit;
    double delta = 0.0; // lit - dark, Pa
};

inline ModulationResult modulation_depth(const Scenario& scenario, double separation,
                                         const QuadratureSettings& settings = {}) {
    scenario.validate();
    if (separation < scenario.a_min || separation > scenario.a_max)
        throw InputError("modulation: separation outside the scenario range");
    ModulationResult r;
    r.dark = pressure(scenario.dark_system, separation, settings);
    r.lit = pressure(scenario.lit_system, separation, settings);
    r.delta = r.lit.pressure - r.dark.pressure;
    return r;
}

/// Static spring deflection x = P A / k, signed like the pressure.
inline double quasi_static_displacement(double pressure_pa, double plate_area_m2, double spring_constant_n_m) {
    if (!(plate_area_m2 > 0.0)) throw InputError("displacement: plate area must be > 0");
    if (!(spring_constant_n_m > 0.0)) throw InputError("displacement: spring constant must be > 0");
    return pressure_pa * plate_area_m2 / spring_constant_n_m;
}

} // namespace casimir
