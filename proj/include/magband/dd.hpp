#pragma once

#include <cmath>

namespace magband::detail {

/// Double-double value, ~31 significant digits.  Only the handful of
/// operations needed for series accumulation; no rounding-mode games.
struct DD {
    double hi = 0.0;
    double lo = 0.0;

    DD() = default;
    DD(double h) : hi(h) {}
    DD(double h, double l) : hi(h), lo(l) {}

    double to_double() const { return hi + lo; }
};

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD quick_two_sum(double a, double b) { // requires |a| >= |b|
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(const DD& a, const DD& b) {
    DD s = two_sum(a.hi, b.hi);
    return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline DD dd_add(const DD& a, double b) {
    DD s = two_sum(a.hi, b);
    return quick_two_sum(s.hi, s.lo + a.lo);
}

inline DD dd_sub(const DD& a, const DD& b) { return dd_add(a, DD{-b.hi, -b.lo}); }

inline DD dd_mul(const DD& a, const DD& b) {
    DD p = two_prod(a.hi, b.hi);
    return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline DD dd_mul(const DD& a, double b) {
    DD p = two_prod(a.hi, b);
    return quick_two_sum(p.hi, p.lo + a.lo * b);
}

inline DD dd_div(const DD& a, double b) {
    double q1 = a.hi / b;
    DD p = two_prod(q1, b);
    double rem = (a.hi - p.hi) - p.lo + a.lo;
    return quick_two_sum(q1, rem / b);
}

inline DD dd_div(const DD& a, const DD& b) {
    double q1 = a.hi / b.hi;
    DD r = dd_sub(a, dd_mul(b, q1));
    double q2 = r.hi / b.hi;
    r = dd_sub(r, dd_mul(b, q2));
    return dd_add(quick_two_sum(q1, q2), r.hi / b.hi);
}

inline DD dd_sqrt(const DD& a) {
    if (a.hi <= 0.0) return {0.0, 0.0};
    double s = std::sqrt(a.hi);
    // one Newton step in dd: s' = s + (a - s^2) / (2s)
    DD r = dd_sub(a, two_prod(s, s));
    return dd_add(DD{s}, r.hi / (2.0 * s));
}

} // namespace magband::detail
