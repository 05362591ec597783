#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace magband::model {

/// Exact rational, used wherever splitting is decided: whether b is a
/// ratio of odd integers is structurally unstable under float noise.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den == 0) throw DomainError("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double value() const { return double(num) / double(den); }
    Rational abs() const { return {num < 0 ? -num : num, den}; }
};

enum class CaseTag {
    Wall,            // (0, 1)
    TrappingStep,    // -1 < b1 < 0
    SymmetricStep,   // b1 = -1
    NonTrappingStep, // 0 < b1 < 1
    Landau,          // b1 = 1
    ZeroField,       // (0, 0)
};

inline const char* to_string(CaseTag t) {
    switch (t) {
        case CaseTag::Wall: return "wall";
        case CaseTag::TrappingStep: return "trapping";
        case CaseTag::SymmetricStep: return "symmetric";
        case CaseTag::NonTrappingStep: return "non-trapping";
        case CaseTag::Landau: return "landau";
        case CaseTag::ZeroField: return "zero-field";
    }
    return "?";
}

/// A magnetic step field (b1, b2).  The tag classifies the normalized
/// equivalent, so it is meaningful for un-normalized instances too.
/// b1_exact, when present, is the exact left/right field ratio after
/// normalization (b2 = 1), feeding the splitting analysis.
struct MagneticStep {
    double b1 = 0.0;
    double b2 = 0.0;
    CaseTag case_tag = CaseTag::ZeroField;
    std::optional<Rational> b1_exact;

    static MagneticStep make(double b1, double b2,
                             std::optional<Rational> exact = std::nullopt);
    static MagneticStep make(const Rational& b1, const Rational& b2);

    bool normalized() const {
        return (b2 == 1.0 && b1 >= -1.0 && b1 <= 1.0) ||
               (b1 == 0.0 && b2 == 0.0);
    }
    /// |b1| of the normalized step (the paper's b).
    double b_abs() const { return std::fabs(b1); }
};

/// Record of the symmetry reductions applied by normalize().
struct NormalizationRecord {
    double scale = 1.0;       // original field = scale x normalized field
    bool conjugated = false;  // b -> -b applied
    bool reflected = false;   // swap-and-negate symmetry applied
    double spectral_scale = 1.0; // original eigenvalues = spectral_scale x normalized

    /// Fiber frequency of the normalized problem corresponding to an
    /// original-problem frequency.
    double map_frequency(double k_original) const {
        double k = k_original / std::sqrt(scale);
        return conjugated ? -k : k;
    }
};

namespace detail {

inline CaseTag classify_normalized(double b1, double b2) {
    if (b1 == 0.0 && b2 == 0.0) return CaseTag::ZeroField;
    if (b1 == 0.0) return CaseTag::Wall;
    if (b1 == -1.0) return CaseTag::SymmetricStep;
    if (b1 == 1.0) return CaseTag::Landau;
    if (b1 < 0.0) return CaseTag::TrappingStep;
    return CaseTag::NonTrappingStep;
}

// classification of an arbitrary pair via the discrete symmetries only
inline CaseTag classify(double b1, double b2) {
    if (b1 == 0.0 && b2 == 0.0) return CaseTag::ZeroField;
    double lo = b1, hi = b2;
    if (std::fabs(hi) < std::fabs(lo)) { lo = -b2; hi = -b1; }
    if (hi < 0.0 || (hi == 0.0 && lo < 0.0)) { lo = -lo; hi = -hi; }
    if (hi == 0.0) { // (b1, 0) with b1 > 0 -> reflect to (0, b1)
        hi = lo;
        lo = 0.0;
    }
    return classify_normalized(lo / hi, 1.0);
}

} // namespace detail

inline MagneticStep MagneticStep::make(double b1, double b2,
                                       std::optional<Rational> exact) {
    MagneticStep s;
    s.b1 = b1;
    s.b2 = b2;
    s.case_tag = detail::classify(b1, b2);
    s.b1_exact = exact;
    return s;
}

inline MagneticStep MagneticStep::make(const Rational& b1, const Rational& b2) {
    if (b1.num == 0 && b2.num == 0) return make(0.0, 0.0);
    if (b2.num == 0)
        return make(b1.value(), 0.0);
    // normalized-ratio b1/b2 as an exact rational
    Rational r{b1.num * b2.den, b1.den * b2.num};
    return make(b1.value(), b2.value(), r);
}

/// Canonical representative of the field under the symmetry group
/// (conjugation, reflection, dilation), plus the transformation record.
inline std::pair<MagneticStep, NormalizationRecord> normalize(
    const MagneticStep& in) {
    if (in.b1 == 0.0 && in.b2 == 0.0)
        throw ZeroFieldError("normalize: zero field has no spectral problem");

    double b1 = in.b1, b2 = in.b2;
    NormalizationRecord rec;
    std::optional<Rational> exact = in.b1_exact;

    if (std::fabs(b2) < std::fabs(b1)) {
        // reflection S: (b1, b2) -> (-b2, -b1); puts the larger magnitude right
        double t = b1;
        b1 = -b2;
        b2 = -t;
        rec.reflected = true;
        if (exact && exact->num != 0)
            exact = Rational{exact->den, exact->num}; // ratio inverts
    }
    if (b2 < 0.0) {
        b1 = -b1;
        b2 = -b2;
        rec.conjugated = true;
    }
    rec.scale = b2;
    rec.spectral_scale = rec.scale;

    MagneticStep out;
    out.b1 = b1 / b2;
    out.b2 = 1.0;
    if (exact) {
        out.b1_exact = exact;
        out.b1 = exact->value(); // exact ratio wins over float division
    }
    out.case_tag = detail::classify_normalized(out.b1, out.b2);
    return {out, rec};
}

/// Effective fiber potential (k - b1 x)^2 for x < 0, (k - b2 x)^2 for x >= 0.
inline double effective_potential(const MagneticStep& step, double x, double k) {
    const double slope = (x < 0.0) ? step.b1 : step.b2;
    const double d = k - slope * x;
    return d * d;
}

/// Minimal (n, m) with b = (2n-1)/(2m-1), if b is a ratio of odd
/// integers.  Exact rationals decide directly; floats are matched to an
/// odd/odd ratio with denominator <= 999 and tolerance 1e-12.
inline std::optional<std::pair<int, int>> is_splitting(const Rational& b) {
    const Rational a = b.abs();
    if (a.num <= 0) return std::nullopt;
    if (a.num % 2 == 1 && a.den % 2 == 1)
        return std::make_pair(int((a.num + 1) / 2), int((a.den + 1) / 2));
    return std::nullopt;
}

inline std::optional<std::pair<int, int>> is_splitting(double b) {
    b = std::fabs(b);
    if (!(b > 0.0)) return std::nullopt;
    for (std::int64_t q = 1; q <= 999; q += 2) {
        const double pd = b * double(q);
        const std::int64_t p = std::int64_t(std::llround(pd));
        if (p < 1 || p % 2 == 0) continue;
        if (std::fabs(b - double(p) / double(q)) <= 1e-12)
            return is_splitting(Rational{p, q});
    }
    return std::nullopt;
}

inline std::optional<std::pair<int, int>> is_splitting(const MagneticStep& s) {
    if (s.b1_exact) return is_splitting(*s.b1_exact);
    return is_splitting(s.b_abs());
}

/// One element of the limit set: value, origin, multiplicity.
struct Threshold {
    enum class Origin { RightLandau, LeftScaled, Split };
    double value = 0.0;
    Origin origin = Origin::RightLandau;
    int n = 0;           // right Landau index (value = 2n-1), when applicable
    int m = 0;           // left scaled index (value = b(2m-1)), when applicable
    int multiplicity = 1;
};

inline const char* to_string(Threshold::Origin o) {
    switch (o) {
        case Threshold::Origin::RightLandau: return "right-landau";
        case Threshold::Origin::LeftScaled: return "left-scaled";
        case Threshold::Origin::Split: return "split";
    }
    return "?";
}

/// The limit set up to lambda_max, ascending, with split elements merged
/// into multiplicity-2 entries.  b may come with exact rational backing
/// (preferred) via the step overload.
inline std::vector<Threshold> thresholds(double b,
                                         std::optional<Rational> b_exact,
                                         double lambda_max) {
    if (!(b > 0.0) || b > 1.0)
        throw DomainError("thresholds: b must lie in (0, 1]");
    std::vector<Threshold> out;

    // split detection once: b = (2n0-1)/(2m0-1) minimal
    std::optional<std::pair<int, int>> split =
        b_exact ? is_splitting(*b_exact) : is_splitting(b);

    // right family E_n = 2n-1
    for (int n = 1; 2.0 * n - 1.0 <= lambda_max + 1e-15; ++n) {
        Threshold t;
        t.value = 2.0 * n - 1.0;
        t.origin = Threshold::Origin::RightLandau;
        t.n = n;
        out.push_back(t);
    }
    // left family b E_m; mark coincidences exactly via the split pair:
    // b E_m = E_n  iff  (n-1/2) = b(m-1/2)  iff  m = (n0 + k n0') ... handled
    // by direct integer test below.
    for (int m = 1; b * (2.0 * m - 1.0) <= lambda_max + 1e-15; ++m) {
        bool merged = false;
        if (split) {
            const auto [n0, m0] = *split;
            // b(2m-1) = 2n-1 with integer n iff (2m-1)(2n0-1) divisible by 2m0-1
            const std::int64_t num = std::int64_t(2 * m - 1) * (2 * n0 - 1);
            const std::int64_t den = 2 * m0 - 1;
            if (num % den == 0) {
                const std::int64_t twon = num / den + 1; // = 2n
                const int n = int(twon / 2);
                for (auto& t : out) {
                    if (t.origin == Threshold::Origin::RightLandau && t.n == n) {
                        t.origin = Threshold::Origin::Split;
                        t.m = m;
                        t.multiplicity = 2;
                        merged = true;
                        break;
                    }
                }
            }
        }
        if (!merged) {
            Threshold t;
            t.value = b * (2.0 * m - 1.0);
            t.origin = Threshold::Origin::LeftScaled;
            t.m = m;
            out.push_back(t);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Threshold& a, const Threshold& c) { return a.value < c.value; });
    return out;
}

inline std::vector<Threshold> thresholds(const MagneticStep& s, double lambda_max) {
    std::optional<Rational> ex;
    if (s.b1_exact) ex = s.b1_exact->abs();
    return thresholds(s.b_abs(), ex, lambda_max);
}

} // namespace magband::model
