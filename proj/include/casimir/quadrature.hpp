#pragma once

#include <cmath>
#include <cstddef>

namespace casimir::quad {

struct Estimate {
    double value = 0.0;
    double error = 0.0;   // accumulated |S2 - S1| / 15 over accepted panels
    bool converged = true;
    std::size_t evaluations = 0;
};

namespace detail {

template <class F>
void simpson_step(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                  double tol, int depth, int min_levels, Estimate& out) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    out.evaluations += 2;
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if ((std::abs(diff) <= 15.0 * tol && min_levels <= 0) || depth <= 0) {
        if (std::abs(diff) > 15.0 * tol) out.converged = false;
        out.value += left + right + diff / 15.0;
        out.error += std::abs(diff) / 15.0;
        return;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, min_levels - 1, out);
    simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, min_levels - 1, out);
}

} // namespace detail

/// Adaptive Simpson on [a, b]. The interval is pre-split into `panels` equal
/// pieces so that a narrow peak cannot be stepped over by the first five samples;
/// each panel gets a share of `abs_tol` proportional to its width.
/// `max_depth` bounds the bisection depth inside each panel. Every panel is
/// bisected at least `min_levels` times before the error test may accept it:
/// the two-level difference can vanish by accident where the fourth derivative
/// changes sign, which happens for y^2 e^-y near y = 6.
template <class F>
Estimate adaptive_simpson(const F& f, double a, double b, double abs_tol, int max_depth,
                          int panels = 16, int min_levels = 2) {
    Estimate out;
    if (b == a) return out;
    const double width = (b - a) / panels;
    double x0 = a;
    double f0 = f(x0);
    out.evaluations = 1;
    for (int i = 0; i < panels; ++i) {
        const double x1 = (i + 1 == panels) ? b : a + (i + 1) * width;
        const double xm = 0.5 * (x0 + x1);
        const double fm = f(xm);
        const double f1 = f(x1);
        out.evaluations += 2;
        const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
        detail::simpson_step(f, x0, x1, f0, fm, f1, whole, abs_tol / panels, max_depth, min_levels, out);
        x0 = x1;
        f0 = f1;
    }
    return out;
}

/// Fixed composite Simpson rule with an even number of intervals `n`.
template <class F>
double composite_simpson(const F& f, double a, double b, int n) {
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) sum += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return sum * h / 3.0;
}

} // namespace casimir::quad
