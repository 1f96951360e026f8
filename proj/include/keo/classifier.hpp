#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "keo/errors.hpp"
#include "keo/ordering.hpp"
#include "keo/rational.hpp"
#include "keo/surd.hpp"

namespace keo {

/// Families of Hermitian orderings in the (xi, zeta) plane.
enum class Region { VonRoos, ClassI, ClassII, ClassIII };

/// Boundary curves of the (xi, zeta) plane, as bit flags.
enum class Boundary : unsigned {
    None = 0,
    MB = 1u << 0,        // zeta = xi^2
    ClassI_II = 1u << 1,  // zeta = 2 xi^2
    ClassI_III = 1u << 2, // zeta = (xi + 1/2)^2 + xi^2
    Upper = 1u << 3,      // zeta = -xi/2
    Lower = 1u << 4,      // zeta = 0
};

constexpr Boundary operator|(Boundary a, Boundary b)
{
    return static_cast<Boundary>(static_cast<unsigned>(a) | static_cast<unsigned>(b));
}
constexpr Boundary operator&(Boundary a, Boundary b)
{
    return static_cast<Boundary>(static_cast<unsigned>(a) & static_cast<unsigned>(b));
}
constexpr bool has(Boundary set, Boundary flag) { return (set & flag) != Boundary::None; }

inline constexpr Boundary all_boundaries[] = {Boundary::MB, Boundary::ClassI_II, Boundary::ClassI_III, Boundary::Upper,
                                              Boundary::Lower};
inline constexpr Region all_regions[] = {Region::VonRoos, Region::ClassI, Region::ClassII, Region::ClassIII};

constexpr std::string_view to_string(Region r)
{
    switch (r) {
    case Region::VonRoos: return "vR";
    case Region::ClassI: return "I";
    case Region::ClassII: return "II";
    case Region::ClassIII: return "III";
    }
    return "?";
}

constexpr std::string_view to_string(Boundary b)
{
    switch (b) {
    case Boundary::MB: return "MB";
    case Boundary::ClassI_II: return "I/II";
    case Boundary::ClassI_III: return "I/III";
    case Boundary::Upper: return "upper";
    case Boundary::Lower: return "lower";
    default: return "?";
    }
}

inline Region parse_region(std::string_view s)
{
    for (Region r : all_regions)
        if (to_string(r) == s)
            return r;
    if (s == "VR" || s == "vonRoos")
        return Region::VonRoos;
    if (s == "1")
        return Region::ClassI;
    if (s == "2")
        return Region::ClassII;
    if (s == "3")
        return Region::ClassIII;
    throw Error(ErrorCode::UnknownName, "unknown class '" + std::string(s) + "' (expected vR, I, II or III)");
}

inline std::vector<std::string> boundary_names(Boundary set)
{
    std::vector<std::string> out;
    for (Boundary b : all_boundaries)
        if (has(set, b))
            out.emplace_back(to_string(b));
    return out;
}

/// One region containing a point, with the boundary curves of that region the point lies on.
struct ClassLabel {
    Region region;
    Boundary boundaries = Boundary::None;

    friend bool operator==(const ClassLabel&, const ClassLabel&) = default;
};

using Classification = std::vector<ClassLabel>;

namespace detail {

inline Rational upper_curve(const Rational& xi) { return -xi / Rational(2); }
inline Rational class_i_ii_curve(const Rational& xi) { return Rational(2) * square(xi); }
inline Rational class_i_iii_curve(const Rational& xi) { return square(xi + Rational(1, 2)) + square(xi); }

/// Boundaries each region may carry; an equality elsewhere is not a boundary of that region.
constexpr Boundary region_boundaries(Region r)
{
    switch (r) {
    case Region::VonRoos: return Boundary::MB | Boundary::Upper | Boundary::Lower;
    case Region::ClassI: return Boundary::MB | Boundary::ClassI_II | Boundary::ClassI_III;
    case Region::ClassII: return Boundary::ClassI_II | Boundary::Upper;
    case Region::ClassIII: return Boundary::ClassI_III | Boundary::Upper;
    }
    return Boundary::None;
}

} // namespace detail

/// Reason the point violates 1/4 >= -xi/2 >= zeta >= 0, if any.
inline std::optional<std::string> allowed_region_violation(const Rational& xi, const Rational& zeta)
{
    const Rational half_neg_xi = detail::upper_curve(xi);
    if (half_neg_xi > Rational(1, 4))
        return "allowed region violated: xi < -1/2 (requires 1/4 >= -xi/2)";
    if (zeta > half_neg_xi)
        return "allowed region violated: zeta > -xi/2 (requires -xi/2 >= zeta)";
    if (zeta.sign() < 0)
        return "allowed region violated: zeta < 0 (requires zeta >= 0)";
    return std::nullopt;
}

/// 1/4 >= -xi/2 >= zeta >= 0.
inline bool in_allowed_region(const Rational& xi, const Rational& zeta)
{
    return !allowed_region_violation(xi, zeta).has_value();
}

/// Whether (xi, zeta) satisfies the defining inequality chain of the region, ignoring the allowed region.
inline bool satisfies_region_constraint(Region r, const Rational& xi, const Rational& zeta)
{
    const Rational xi2 = square(xi);
    switch (r) {
    case Region::VonRoos: return xi2 >= zeta;
    case Region::ClassI:
        return zeta >= xi2 && zeta <= std::min(detail::class_i_iii_curve(xi), detail::class_i_ii_curve(xi));
    case Region::ClassII: return detail::upper_curve(xi) >= zeta && zeta >= detail::class_i_ii_curve(xi);
    case Region::ClassIII: return detail::upper_curve(xi) >= zeta && zeta >= detail::class_i_iii_curve(xi);
    }
    return false;
}

inline std::string_view region_constraint_text(Region r)
{
    switch (r) {
    case Region::VonRoos: return "von Roos constraint xi^2 >= zeta";
    case Region::ClassI: return "class I constraint min((xi+1/2)^2+xi^2, 2xi^2) >= zeta >= xi^2";
    case Region::ClassII: return "class II constraint -xi/2 >= zeta >= 2xi^2";
    case Region::ClassIII: return "class III constraint -xi/2 >= zeta >= (xi+1/2)^2+xi^2";
    }
    return "";
}

/// Boundary curves passing through (xi, zeta), regardless of region.
inline Boundary boundaries_at(const Rational& xi, const Rational& zeta)
{
    Boundary b = Boundary::None;
    if (zeta == square(xi))
        b = b | Boundary::MB;
    if (zeta == detail::class_i_ii_curve(xi))
        b = b | Boundary::ClassI_II;
    if (zeta == detail::class_i_iii_curve(xi))
        b = b | Boundary::ClassI_III;
    if (zeta == detail::upper_curve(xi))
        b = b | Boundary::Upper;
    if (zeta.is_zero())
        b = b | Boundary::Lower;
    return b;
}

/// Every region whose closed set contains the point. Regions overlap on shared
/// boundaries, so more than one label is normal there.
inline Classification classify(const Rational& xi, const Rational& zeta)
{
    if (auto why = allowed_region_violation(xi, zeta))
        throw Error(ErrorCode::OutsideAllowedRegion, *why);
    const Boundary on = boundaries_at(xi, zeta);
    Classification out;
    for (Region r : all_regions)
        if (satisfies_region_constraint(r, xi, zeta))
            out.push_back({r, on & detail::region_boundaries(r)});
    return out;
}

inline bool contains(const Classification& c, Region r)
{
    return std::any_of(c.begin(), c.end(), [r](const ClassLabel& l) { return l.region == r; });
}

/// Two-term ordering of the requested family with the given linear parameters.
///
/// von Roos and class I need sqrt(|xi^2 - zeta|), which is returned as an exact
/// quadratic surd; classes II and III are always rational. The degenerate
/// corners use fixed conventions: class II at (0, 0) is BDD with w = 1, and
/// class III at (-1/2, 1/4) is ZK with w = 0.
inline SurdOrderingSpec invert(const Rational& xi, const Rational& zeta, Region region)
{
    using S = QuadraticSurd;
    const Rational half(1, 2);
    const std::string tag = std::string(to_string(region)) + "(" + xi.str() + "," + zeta.str() + ")";

    if (region == Region::ClassII && xi.is_zero() && !zeta.is_zero())
        throw Error(ErrorCode::DegenerateDenominator, "class II weight xi^2/zeta and alpha zeta/xi undefined at xi = 0");
    if (region == Region::ClassIII && xi == -half && zeta != Rational(1, 4))
        throw Error(ErrorCode::DegenerateDenominator,
                    "class III weight and alpha undefined at xi = -1/2 away from zeta = 1/4");
    if (!satisfies_region_constraint(region, xi, zeta)) {
        std::string msg = std::string(region_constraint_text(region)) + " violated at (" + xi.str() + ", " + zeta.str() + ")";
        if (region == Region::VonRoos)
            msg += ": zeta > xi^2 would need complex exponents";
        throw Error(ErrorCode::ConstraintUnsatisfied, msg);
    }

    const auto mb_term = [](const S& w, const S& a) {
        return BuildingBlock<S>{w, a, S(-1) - a - a, a};
    };

    switch (region) {
    case Region::VonRoos: {
        const S root = S::sqrt(square(xi) - zeta);
        const S a = S(xi) + root;
        const S g = S(xi) - root;
        const S b = S(-1) - a - g;
        return SurdOrderingSpec({{S(half), a, b, g}, {S(half), g, b, a}}, tag);
    }
    case Region::ClassI: {
        const S root = S::sqrt(zeta - square(xi));
        return SurdOrderingSpec({mb_term(S(half), S(xi) + root), mb_term(S(half), S(xi) - root)}, tag);
    }
    case Region::ClassII: {
        if (xi.is_zero())
            return SurdOrderingSpec({mb_term(S(1), S(0)), mb_term(S(0), S(0))}, tag);
        const Rational w = square(xi) / zeta;
        const Rational a = zeta / xi;
        if (w > half || w.sign() < 0)
            throw Error(ErrorCode::ConstraintUnsatisfied, "class II weight " + w.str() + " outside [0, 1/2]");
        return SurdOrderingSpec({mb_term(S(w), S(a)), mb_term(S(Rational(1) - w), S(0))}, tag);
    }
    case Region::ClassIII: {
        if (xi == -half)
            return SurdOrderingSpec({mb_term(S(0), S(-half)), mb_term(S(1), S(-half))}, tag);
        const Rational w = square(xi + half) / (xi + zeta + Rational(1, 4));
        const Rational a = (xi + Rational(2) * zeta) / (Rational(2) * xi + Rational(1));
        if (w > half || w.sign() < 0)
            throw Error(ErrorCode::ConstraintUnsatisfied, "class III weight " + w.str() + " outside [0, 1/2]");
        return SurdOrderingSpec({mb_term(S(w), S(a)), mb_term(S(Rational(1) - w), S(-half))}, tag);
    }
    }
    throw Error(ErrorCode::UnknownName, "unknown region");
}

/// As invert(), but fails with IrrationalSquareRoot unless every entry is rational.
inline OrderingSpec invert_rational(const Rational& xi, const Rational& zeta, Region region)
{
    const auto exact = invert(xi, zeta, region);
    auto narrowed = to_rational(exact);
    if (!narrowed) {
        throw Error(ErrorCode::IrrationalSquareRoot, "exponents of " + exact.name()
                                                         + " involve an irrational square root; use the surd or "
                                                           "numeric form");
    }
    return *narrowed;
}

inline NumericOrderingSpec invert_numeric(const Rational& xi, const Rational& zeta, Region region)
{
    return to_numeric(invert(xi, zeta, region));
}

/// Point in the (xi, theta) plane with theta = zeta - xi^2.
struct DualityParams {
    Rational xi;
    Rational theta;

    Rational zeta() const { return theta + square(xi); }

    friend bool operator==(const DualityParams&, const DualityParams&) = default;
};

inline DualityParams to_duality(const Rational& xi, const Rational& zeta)
{
    if (auto why = allowed_region_violation(xi, zeta))
        throw Error(ErrorCode::OutsideAllowedRegion, *why);
    return {xi, zeta - square(xi)};
}

/// theta -> -theta. Fixed points are exactly the MB line theta = 0.
inline DualityParams dual(const DualityParams& d)
{
    const DualityParams image{d.xi, -d.theta};
    if (auto why = allowed_region_violation(image.xi, image.zeta())) {
        throw Error(ErrorCode::DualOutsideAllowedRegion,
                    "dual point (" + image.xi.str() + ", " + image.zeta().str() + ") is outside the dualizable set: "
                        + *why);
    }
    return image;
}

struct RegionSample {
    Rational xi;
    Rational zeta;
    Classification labels;
};

/// Classifies the uniform grid xi in [-1/2, 0], zeta in [0, 1/4] with
/// `resolution` points per axis, skipping points outside the allowed region.
inline std::vector<RegionSample> region_samples(int resolution)
{
    if (resolution < 2)
        throw Error(ErrorCode::InvalidCount, "region resolution must be >= 2, got " + std::to_string(resolution));
    const Rational steps(resolution - 1);
    std::vector<RegionSample> out;
    for (int i = 0; i < resolution; ++i) {
        const Rational xi = Rational(-1, 2) + Rational(i) / (Rational(2) * steps);
        for (int j = 0; j < resolution; ++j) {
            const Rational zeta = Rational(j) / (Rational(4) * steps);
            if (!in_allowed_region(xi, zeta))
                continue;
            out.push_back({xi, zeta, classify(xi, zeta)});
        }
    }
    return out;
}

} // namespace keo
