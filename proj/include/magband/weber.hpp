#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "dd.hpp"
#include "gamma.hpp"
#include "scaled_value.hpp"

namespace magband::specfun {

/// Parameters of the Weber equation -y'' + (x^2/4) y = -a y.
/// a carries an optional sub-ulp offset; see OffsetReal.
struct WeberParams {
    OffsetReal a;
    double x = 0.0;
};

inline constexpr double kWeberParamLimit = 1e4;

namespace detail {

using magband::detail::DD;
using magband::detail::dd_add;
using magband::detail::dd_div;
using magband::detail::dd_mul;

/// Series/asymptotic crossover.  The appendix-style expansions run in
/// powers of 1/x^2 with coefficients growing like a^2, so the switch
/// point scales with sqrt(|a|).
inline double weber_crossover(double a_abs) {
    return std::max(8.0, 2.0 * std::sqrt(a_abs) + 6.0);
}

inline void weber_check_range(const OffsetReal& a, double x) {
    const double av = a.value();
    if (!std::isfinite(av) || !std::isfinite(x))
        throw OutOfRange("weber: non-finite parameter");
    if (std::fabs(av) > kWeberParamLimit || std::fabs(x) > kWeberParamLimit)
        throw OutOfRange("weber: |a| or |x| beyond supported range 1e4");
}

// ---------------------------------------------------------------------
// Asymptotic sums  S = sum_j s^j (c)_{2j} / (j! (2x^2)^j),  s = +-1,
// with the ascending-product convention (c)_m = c (c+1) ... (c+m-1).
// The source expansions print a descending product, but integrating the
// Weber equation inward from asymptotic seeds reproduces U only with the
// ascending one (tests/test_weber.cpp, convention adjudication).
// Optimal truncation: stop as soon as a term stops shrinking; cap at 20.
// ---------------------------------------------------------------------
struct AsymSum {
    double value = 1.0;
    double trunc_rel = 0.0; // |first omitted term| / |sum|
};

inline AsymSum asym_sum(double c, double x, bool alternating, int cap = 20) {
    const double inv = 1.0 / (2.0 * x * x);
    double sum = 1.0;
    double term = 1.0;
    double prev_abs = 1.0;
    for (int j = 1; j <= cap; ++j) {
        term *= (c + 2.0 * j - 2.0) * (c + 2.0 * j - 1.0) * inv / j;
        if (std::fabs(term) > prev_abs) // divergence onset: drop this term
            return {sum, std::fabs(term) / std::max(std::fabs(sum), 1e-300)};
        sum += (alternating && (j & 1)) ? -term : term;
        prev_abs = std::fabs(term);
        if (prev_abs < 1e-18 * std::fabs(sum)) return {sum, 0.0};
    }
    return {sum, prev_abs / std::max(std::fabs(sum), 1e-300)};
}

/// U(a, x) for x >= crossover: single recessive expansion.
inline ScaledValue weber_u_asym_pos(const OffsetReal& a, double x) {
    const double av = a.value();
    const AsymSum s = asym_sum(0.5 + av, x, /*alternating=*/true);
    if (s.trunc_rel > 1e-6)
        throw LossOfAccuracy("weber_u: asymptotic series not converged");
    return scale_exp(ScaledValue::from_double(s.value),
                     -0.25 * x * x + (-av - 0.5) * std::log(x));
}

/// The two separately-scaled pieces of U(a, x) for x <= -crossover: the
/// 1/Gamma-weighted growing part and the sin(pi a)-weighted recessive
/// part.  Both respond to the offset of a with full relative accuracy,
/// which is what resolves exponentially small band gaps.
struct TwoPart {
    ScaledValue dom;
    ScaledValue rec;
    double trunc_rel = 0.0;
};

inline TwoPart weber_u_asym_neg_parts(const OffsetReal& a, double x) {
    const double av = a.value();
    const double ax = -x; // > 0
    const double lax = std::log(ax);
    const double q = 0.25 * ax * ax;

    const AsymSum sd = asym_sum(0.5 - av, ax, /*alternating=*/false);
    const AsymSum sr = asym_sum(0.5 + av, ax, /*alternating=*/true);

    TwoPart out;
    out.trunc_rel = std::max(sd.trunc_rel, sr.trunc_rel);
    const ScaledValue rg = recip_gamma_scaled(offset_axpy(1.0, a, 0.5));
    out.dom = scale_exp(rg * ScaledValue::from_double(sd.value),
                        0.5 * std::log(2.0 * kPi) + q + (av - 0.5) * lax);
    out.rec = scale_exp(sin_pi_scaled(a) * ScaledValue::from_double(-sr.value),
                        -q + (-av - 0.5) * lax);
    return out;
}

inline ScaledValue weber_u_asym_neg(const OffsetReal& a, double x) {
    TwoPart p = weber_u_asym_neg_parts(a, x);
    if (p.trunc_rel > 1e-6)
        throw LossOfAccuracy("weber_u: asymptotic series not converged");
    return p.dom + p.rec;
}

/// dU/dx at x <= -crossover, direct expansion (cross-check path for the
/// recurrence used by weber_u_prime).
inline ScaledValue weber_u_prime_asym_neg(const OffsetReal& a, double x) {
    const double av = a.value();
    const double ax = -x;
    const double lax = std::log(ax);
    const double q = 0.25 * ax * ax;
    const double inv = 1.0 / (ax * ax);

    const AsymSum s1 = asym_sum(0.5 - av, ax, false);
    const AsymSum s3 = asym_sum(1.5 - av, ax, false);
    const double dom_bracket = 0.5 * s1.value + (av - 0.5) * inv * s3.value;

    const AsymSum s2 = asym_sum(0.5 + av, ax, true);
    const AsymSum s4 = asym_sum(av - 0.5, ax, true);
    const double rec_bracket = 0.5 * s2.value - s4.value;

    const ScaledValue rg = recip_gamma_scaled(offset_axpy(1.0, a, 0.5));
    const ScaledValue dom =
        scale_exp(rg * ScaledValue::from_double(-dom_bracket),
                  0.5 * std::log(2.0 * kPi) + q + (av + 0.5) * lax);
    const ScaledValue rec =
        scale_exp(sin_pi_scaled(a) * ScaledValue::from_double(rec_bracket),
                  -q + (-av + 0.5) * lax);
    return dom + rec;
}

// ---------------------------------------------------------------------
// Frobenius series about x = 0.  Even/odd solutions of the Weber
// equation via c_{n+2} = (a c_n + c_{n-2}/4) / ((n+1)(n+2)), accumulated
// in double-double.  The connection coefficients carry the offset of a
// through recip_gamma_scaled.
// ---------------------------------------------------------------------
struct SeriesEval {
    DD y1, y2;       // even / odd solution values
    double peak_log; // max ln|term| seen (cancellation diagnostic)
};

inline SeriesEval weber_series(double a, double x) {
    DD c_even_m2{0.0}, c_even{1.0};
    DD c_odd_m2{0.0}, c_odd{1.0};
    DD y1{1.0}, y2{x};
    DD xp_even{1.0}, xp_odd{x};
    const double x2 = x * x;
    double peak = std::max(1.0, std::fabs(x));
    const double n_min =
        0.5 * x2 + std::sqrt(std::fabs(a)) * std::fabs(x) + 20.0;
    int quiet = 0;
    for (int n = 0; n < 30000; n += 2) {
        DD ce = dd_div(dd_add(dd_mul(c_even, a), dd_mul(c_even_m2, 0.25)),
                       double(n + 1) * double(n + 2));
        c_even_m2 = c_even;
        c_even = ce;
        xp_even = dd_mul(xp_even, x2);
        DD te = dd_mul(c_even, xp_even);
        y1 = dd_add(y1, te);

        DD co = dd_div(dd_add(dd_mul(c_odd, a), dd_mul(c_odd_m2, 0.25)),
                       double(n + 2) * double(n + 3));
        c_odd_m2 = c_odd;
        c_odd = co;
        xp_odd = dd_mul(xp_odd, x2);
        DD to = dd_mul(c_odd, xp_odd);
        y2 = dd_add(y2, to);

        const double mag = std::max(std::fabs(te.hi), std::fabs(to.hi));
        peak = std::max(peak, mag);
        const double scale =
            std::max(std::fabs(y1.hi), std::fabs(y2.hi)) + 1e-300;
        if (n > n_min && mag < 1e-36 * scale) {
            if (++quiet >= 3) break;
        } else {
            quiet = 0;
        }
    }
    return {y1, y2, std::log(peak)};
}

inline ScaledValue sv_from_dd(const DD& v) {
    if (v.hi == 0.0) return ScaledValue::zero();
    return ScaledValue::from_log(
        v.hi < 0 ? -1 : 1,
        std::log(std::fabs(v.hi)) + std::log1p(v.lo / v.hi));
}

/// Connection coefficients U(a,0) and U'(a,0).
inline ScaledValue weber_u_at0(const OffsetReal& a) {
    const ScaledValue rg = recip_gamma_scaled(offset_axpy(0.5, a, 0.75));
    return scale_exp(rg, 0.5 * kLnPi - (0.5 * a.value() + 0.25) * kLn2);
}

inline ScaledValue weber_u_prime_at0(const OffsetReal& a) {
    const ScaledValue rg = recip_gamma_scaled(offset_axpy(0.5, a, 0.25));
    return -scale_exp(rg, 0.5 * kLnPi - (0.5 * a.value() - 0.25) * kLn2);
}

struct SeriesResult {
    ScaledValue u;
    // ln(max product / |U|): amplification of the 1e-15-level connection
    // coefficient error.  Binding constraint on the recessive side.
    double cross_kappa_log = 0.0;
    // ln(coeff * peak term / |U|): amplification of the double-double
    // summation error (~1e-32).
    double dd_kappa_log = 0.0;
    // u == 0 because a connection coefficient vanishes (Hermite parity),
    // not because the two products cancelled.
    bool exact_zero = false;
};

inline SeriesResult weber_u_series(const OffsetReal& a, double x) {
    const SeriesEval se = weber_series(a.value(), x);
    const ScaledValue ce = weber_u_at0(a);
    const ScaledValue co = weber_u_prime_at0(a);
    const ScaledValue p1 = ce * sv_from_dd(se.y1);
    const ScaledValue p2 = co * sv_from_dd(se.y2);
    SeriesResult r;
    r.u = p1 + p2;
    if (r.u.is_zero()) {
        r.exact_zero = p1.is_zero() && p2.is_zero();
        return r;
    }
    double pmax = -std::numeric_limits<double>::infinity();
    if (!p1.is_zero()) pmax = std::max(pmax, p1.log_mag);
    if (!p2.is_zero()) pmax = std::max(pmax, p2.log_mag);
    double cmax = -std::numeric_limits<double>::infinity();
    if (!ce.is_zero()) cmax = std::max(cmax, ce.log_mag);
    if (!co.is_zero()) cmax = std::max(cmax, co.log_mag);
    r.cross_kappa_log = pmax - r.u.log_mag;
    r.dd_kappa_log = cmax + se.peak_log - r.u.log_mag;
    return r;
}

// ---------------------------------------------------------------------
// Integral-representation branch for the recessive side (x > 0 where the
// series cancellation exceeds its error budget):
//   U(a,x) = e^{-x^2/4}/Gamma(a+1/2) Int_0^inf t^{a-1/2} e^{-t^2/2-xt} dt.
// The integrand is positive, so there is no cancellation at all.  Seeds
// are taken at a in [3/2, 5/2) (integrand exponent >= 1, no endpoint
// singularity) and lower a is reached by the downward recurrence
//   U(a-1,x) = x U(a,x) + (a+1/2) U(a+1,x),
// the stable direction since U is the recessive solution as a -> +inf.
// ---------------------------------------------------------------------

template <typename LogF>
double tanh_sinh_log_integral(LogF&& logf, double T, double log_peak) {
    const double half = 0.5 * T;
    auto node_sum = [&](double h, bool odd_only) {
        double sum = 0.0;
        const int jmax = int(3.7 / h);
        for (int j = -jmax; j <= jmax; ++j) {
            if (odd_only && (j % 2 == 0)) continue;
            const double u = j * h;
            const double sh = 0.5 * kPi * std::sinh(u);
            const double ch = std::cosh(sh);
            const double w = half * 0.5 * kPi * std::cosh(u) / (ch * ch);
            const double t = half * (1.0 + std::tanh(sh));
            if (t <= 0.0 || t >= T) continue;
            const double lf = logf(t) - log_peak;
            if (lf > -745.0) sum += w * std::exp(lf);
        }
        return sum;
    };
    double h = 0.25;
    double acc = node_sum(h, false);
    double integral = acc * h;
    for (int level = 0; level < 7; ++level) {
        h *= 0.5;
        acc += node_sum(h, true);
        const double next = acc * h;
        if (level >= 2 && std::fabs(next - integral) <= 1e-15 * std::fabs(next)) {
            integral = next;
            break;
        }
        integral = next;
    }
    return std::log(integral) + log_peak;
}

/// Direct quadrature, valid for a >= 1.5 (integrand exponent >= 1).
inline ScaledValue weber_u_quad_direct(double a, double x) {
    const double e = a - 0.5;
    auto logf = [&](double t) {
        return e * std::log(t) - 0.5 * t * t - x * t;
    };
    double tstar = 0.5 * (-x + std::sqrt(x * x + 4.0 * e));
    tstar = std::max(tstar, 1e-8);
    const double lpeak = logf(tstar);
    double T = tstar + 14.0;
    while (logf(T) - lpeak > -50.0) T += 5.0;
    const double li = tanh_sinh_log_integral(logf, T, lpeak);
    return ScaledValue::from_log(1, li - 0.25 * x * x -
                                        log_gamma_pos(a + 0.5));
}

inline ScaledValue weber_u_quad(double a, double x) {
    if (a >= 1.5) return weber_u_quad_direct(a, x);
    const int m = int(std::ceil(1.5 - a));
    const double alpha = a + m; // in [1.5, 2.5)
    ScaledValue u2 = weber_u_quad_direct(alpha + 1.0, x);
    ScaledValue u1 = weber_u_quad_direct(alpha, x);
    double c = alpha;
    for (int j = 0; j < m; ++j) {
        ScaledValue u0 = ScaledValue::from_double(x) * u1 +
                         ScaledValue::from_double(c + 0.5) * u2;
        u2 = u1;
        u1 = u0;
        c -= 1.0;
    }
    return u1;
}

} // namespace detail

/// Weber function U(a, x) as a ScaledValue.
inline ScaledValue weber_u(const WeberParams& p) {
    detail::weber_check_range(p.a, p.x);
    const double av = p.a.value();
    const double xc = detail::weber_crossover(std::fabs(av));

    ScaledValue u;
    if (p.x >= xc) {
        u = detail::weber_u_asym_pos(p.a, p.x);
    } else if (p.x <= -xc) {
        u = detail::weber_u_asym_neg(p.a, p.x);
    } else {
        const detail::SeriesResult sr = detail::weber_u_series(p.a, p.x);
        const bool series_ok =
            sr.u.is_zero()
                ? sr.exact_zero
                : (sr.cross_kappa_log <= 11.5 && sr.dd_kappa_log <= 46.0);
        if (series_ok) {
            u = sr.u;
        } else if (p.x > 0.0) {
            u = detail::weber_u_quad(av, p.x);
        } else {
            throw LossOfAccuracy(
                "weber_u: series cancellation beyond budget for x < 0");
        }
        // agreement guard in the overlap band around the crossover
        if (std::fabs(p.x) >= xc - 0.25) {
            const ScaledValue other = (p.x > 0.0)
                                          ? detail::weber_u_asym_pos(p.a, p.x)
                                          : detail::weber_u_asym_neg(p.a, p.x);
            if (!u.is_zero() && relative_difference(u, other) > 1e-9)
                throw LossOfAccuracy(
                    "weber_u: series/asymptotic branches disagree in the "
                    "overlap band");
        }
    }
    return u;
}

/// dU/dx via the recurrence U'(a,x) = (x/2) U(a,x) - U(a-1,x).
inline ScaledValue weber_u_prime(const WeberParams& p) {
    detail::weber_check_range(p.a, p.x);
    const ScaledValue u = weber_u(p);
    const ScaledValue um = weber_u({offset_axpy(1.0, p.a, -1.0), p.x});
    return ScaledValue::from_double(0.5 * p.x) * u - um;
}

/// Weber function V(a, x) through the connection formula
/// pi V(a,x) = Gamma(a+1/2) { sin(pi a) U(a,x) + U(a,-x) }.
inline ScaledValue weber_v(const WeberParams& p) {
    detail::weber_check_range(p.a, p.x);
    const ScaledValue rg = recip_gamma_scaled(offset_axpy(1.0, p.a, 0.5));
    if (rg.is_zero())
        throw PoleEncountered(
            "weber_v: Gamma(a+1/2) pole; limit not resolved here");
    const ScaledValue s =
        sin_pi_scaled(p.a) * weber_u(p) + weber_u({p.a, -p.x});
    return scale_exp(s / rg, -kLnPi);
}

} // namespace magband::specfun
