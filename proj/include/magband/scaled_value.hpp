#pragma once

#include <cmath>
#include <limits>

#include "errors.hpp"

namespace magband {

/// Sign + log-magnitude representation of a real number.
///
/// The secular determinant multiplies quantities on the scale of
/// exp(+(1+1/b)k^2/2) against quantities on the scale of exp(-k^2), which
/// overflows IEEE doubles near k ~ 27.  All special-function values and
/// determinant assembly are therefore carried as (sign, ln|value|) pairs.
/// sign == 0 encodes an exact zero; log_mag is ignored in that case.
struct ScaledValue {
    int sign = 0;
    double log_mag = -std::numeric_limits<double>::infinity();

    static ScaledValue zero() { return {}; }

    static ScaledValue from_log(int sign, double log_mag) {
        if (sign == 0) return {};
        return {sign < 0 ? -1 : 1, log_mag};
    }

    static ScaledValue from_double(double v) {
        if (v == 0.0) return {};
        return {v < 0.0 ? -1 : 1, std::log(std::fabs(v))};
    }

    bool is_zero() const { return sign == 0; }

    /// Saturates: +-inf past the double range, +-0 below it.
    double to_double() const {
        if (sign == 0) return 0.0;
        double m = std::exp(log_mag);
        return sign < 0 ? -m : m;
    }
};

inline ScaledValue operator-(const ScaledValue& a) {
    return {-a.sign, a.log_mag};
}

inline ScaledValue operator*(const ScaledValue& a, const ScaledValue& b) {
    if (a.sign == 0 || b.sign == 0) return {};
    return {a.sign * b.sign, a.log_mag + b.log_mag};
}

inline ScaledValue operator/(const ScaledValue& a, const ScaledValue& b) {
    if (b.sign == 0) throw DomainError("ScaledValue: division by exact zero");
    if (a.sign == 0) return {};
    return {a.sign * b.sign, a.log_mag - b.log_mag};
}

inline ScaledValue operator+(const ScaledValue& a, const ScaledValue& b) {
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    const ScaledValue& hi = (a.log_mag >= b.log_mag) ? a : b;
    const ScaledValue& lo = (a.log_mag >= b.log_mag) ? b : a;
    const double d = lo.log_mag - hi.log_mag; // <= 0
    if (hi.sign == lo.sign)
        return {hi.sign, hi.log_mag + std::log1p(std::exp(d))};
    if (d == 0.0) return {}; // exact cancellation
    // log(1 - e^d): use expm1 near d = 0 to keep relative accuracy.
    const double l1me = (d > -0.6931471805599453)
                            ? std::log(-std::expm1(d))
                            : std::log1p(-std::exp(d));
    return {hi.sign, hi.log_mag + l1me};
}

inline ScaledValue operator-(const ScaledValue& a, const ScaledValue& b) {
    return a + (-b);
}

/// Multiply by exp(log_factor) without leaving log space.
inline ScaledValue scale_exp(const ScaledValue& a, double log_factor) {
    if (a.sign == 0) return {};
    return {a.sign, a.log_mag + log_factor};
}

inline ScaledValue abs(const ScaledValue& a) {
    return {a.sign == 0 ? 0 : 1, a.log_mag};
}

inline ScaledValue sqrt(const ScaledValue& a) {
    if (a.sign < 0) throw DomainError("ScaledValue: sqrt of negative value");
    if (a.sign == 0) return {};
    return {1, 0.5 * a.log_mag};
}

/// Signed comparison by represented value.
inline bool value_less(const ScaledValue& a, const ScaledValue& b) {
    if (a.sign != b.sign) return a.sign < b.sign;
    if (a.sign == 0) return false;
    return (a.sign > 0) ? (a.log_mag < b.log_mag) : (a.log_mag > b.log_mag);
}

/// |a/b - 1|, infinity if either is zero and the other is not.
inline double relative_difference(const ScaledValue& a, const ScaledValue& b) {
    if (a.sign == 0 && b.sign == 0) return 0.0;
    if (a.sign == 0 || b.sign == 0)
        return std::numeric_limits<double>::infinity();
    ScaledValue d = a - b;
    if (d.sign == 0) return 0.0;
    return std::exp(d.log_mag - b.log_mag);
}

} // namespace magband
