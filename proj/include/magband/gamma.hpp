#pragma once

#include <cmath>
#include <cstdint>

#include "scaled_value.hpp"

namespace magband {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kLn2 = 0.6931471805599453094172321214581766;
inline constexpr double kLnPi = 1.1447298858494001741434273513530587;
inline constexpr double kHalfLn2Pi = 0.9189385332046727417803297364056176;

/// A real number carried as base + delta with |delta| allowed far below
/// ulp(base).  Band-gap refinement near the Landau thresholds passes
/// eigenvalue offsets of order exp(-k^2) through the Weber parameter a;
/// a plain double cannot represent lambda = (2n-1) + eps for such eps,
/// but the split (base, delta) can, and the reciprocal-gamma factors
/// below respond to delta with full relative accuracy.
struct OffsetReal {
    double base = 0.0;
    double delta = 0.0;

    OffsetReal() = default;
    OffsetReal(double b) : base(b) {} // NOLINT: implicit from plain values
    OffsetReal(double b, double d) : base(b), delta(d) {}

    double value() const { return base + delta; }
};

/// alpha * z + c with the rounding error of the base combination folded
/// into the new delta (two-sum).  alpha is a power of two at every
/// internal call site, so alpha * base is exact.
inline OffsetReal offset_axpy(double alpha, const OffsetReal& z, double c) {
    double p = alpha * z.base;
    double s = p + c;
    double bb = s - p;
    double err = (p - (s - bb)) + (c - bb);
    return {s, err + alpha * z.delta};
}

namespace specfun {

namespace detail {

// Lanczos rational approximation, g = 7, 9 terms.
inline double lanczos_sum(double z) {
    static constexpr double c[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    double s = c[0];
    for (int i = 1; i < 9; ++i) s += c[i] / (z - 1.0 + i);
    return s;
}

} // namespace detail

/// ln Gamma(z) for z >= 0.5.
inline double log_gamma_pos(double z) {
    const double t = z + 6.5;
    return kHalfLn2Pi + (z - 0.5) * std::log(t) - t +
           std::log(detail::lanczos_sum(z));
}

/// sin(pi z) with exact zeros at the integers and full relative accuracy
/// arbitrarily close to them (the argument is reduced to z = n + r before
/// any multiplication by pi).
inline ScaledValue sin_pi_scaled(const OffsetReal& z) {
    const double n = std::nearbyint(z.base);
    const double r = z.base - n; // exact: n within 0.5 of base
    const double u = r + z.delta;
    if (u == 0.0) return ScaledValue::zero();
    const bool odd = std::fmod(std::fabs(n), 2.0) == 1.0;
    double s;
    if (std::fabs(u) < 1e-8) {
        // sin(pi u) = pi u to well below double precision here
        s = kPi * u;
    } else {
        s = std::sin(kPi * u);
    }
    if (odd) s = -s;
    return ScaledValue::from_double(s);
}

inline double sin_pi(double z) { return sin_pi_scaled(OffsetReal{z}).to_double(); }

/// 1/Gamma(z) as a ScaledValue.  Entire function; exactly zero at the
/// nonpositive integers, and linear in delta next to them.
inline ScaledValue recip_gamma_scaled(const OffsetReal& z) {
    const double zv = z.value();
    if (zv >= 0.5)
        return ScaledValue::from_log(1, -log_gamma_pos(zv));
    // reflection: 1/Gamma(z) = sin(pi z) Gamma(1 - z) / pi
    const ScaledValue s = sin_pi_scaled(z);
    if (s.is_zero()) return ScaledValue::zero();
    return scale_exp(s, log_gamma_pos(1.0 - zv) - kLnPi);
}

inline ScaledValue gamma_scaled(const OffsetReal& z) {
    const ScaledValue r = recip_gamma_scaled(z);
    if (r.is_zero())
        throw PoleEncountered("gamma_scaled: pole at nonpositive integer");
    return {r.sign, -r.log_mag};
}

/// 1/Gamma(z).  Saturates to +-inf when |1/Gamma| exceeds the double
/// range (z below about -170); use recip_gamma_scaled there.
inline double recip_gamma(double z) {
    return recip_gamma_scaled(OffsetReal{z}).to_double();
}

/// (1/Gamma)'(1-n) = (-1)^(n-1) (n-1)!, integer-exact through n = 20.
inline double recip_gamma_deriv_at_nonpos_int(int n) {
    if (n < 1) throw OutOfRange("recip_gamma_deriv_at_nonpos_int: n must be >= 1");
    if (n <= 20) {
        std::int64_t f = 1;
        for (int i = 2; i < n; ++i) f *= i;
        return (n % 2 == 1) ? double(f) : -double(f);
    }
    const double m = std::exp(log_gamma_pos(double(n)));
    return (n % 2 == 1) ? m : -m;
}

} // namespace specfun
} // namespace magband
