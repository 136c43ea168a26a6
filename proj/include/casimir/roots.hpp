#pragma once

#include <cmath>
#include <utility>

namespace casimir::roots {

struct Bracket {
    double lo;
    double hi;
    double f_lo;
    double f_hi;
};

/// Bisect a sign change of `f` on [lo, hi] until hi - lo <= tol.
/// f_lo and f_hi must have opposite signs; the returned bracket keeps that property.
/// An exact zero at the midpoint collapses the bracket onto it.
template <class F>
Bracket bisect(const F& f, double lo, double hi, double f_lo, double f_hi, double tol,
               int max_iter = 200) {
    Bracket b{lo, hi, f_lo, f_hi};
    for (int i = 0; i < max_iter && (b.hi - b.lo) > tol; ++i) {
        const double mid = 0.5 * (b.lo + b.hi);
        const double fm = f(mid);
        if (fm == 0.0) return {mid, mid, fm, fm};
        if (std::signbit(fm) == std::signbit(b.f_lo)) {
            b.lo = mid;
            b.f_lo = fm;
        } else {
            b.hi = mid;
            b.f_hi = fm;
        }
    }
    return b;
}

} // namespace casimir::roots
