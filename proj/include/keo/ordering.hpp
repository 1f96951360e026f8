#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "keo/errors.hpp"
#include "keo/rational.hpp"
#include "keo/surd.hpp"

namespace keo {

/// Per-scalar hooks used by the ordering templates.
///
/// Rational and QuadraticSurd compare exactly; double is only used for
/// numerically evaluated orderings and compares with a small absolute slack.
template <class S>
struct scalar_traits {
    static bool equal(const S& a, const S& b) { return a == b; }
    static std::string str(const S& v) { return v.str(); }
    static double to_double(const S& v) { return v.to_double(); }
};

template <>
struct scalar_traits<double> {
    static constexpr double tolerance = 1e-12;
    static bool equal(double a, double b) { return std::abs(a - b) <= tolerance * (1.0 + std::abs(a) + std::abs(b)); }
    static std::string str(double v)
    {
        std::string s(32, '\0');
        s.resize(static_cast<std::size_t>(std::snprintf(s.data(), s.size(), "%.17g", v)));
        return s;
    }
    static double to_double(double v) { return v; }
};

/// One weighted term w * m^alpha p m^beta p m^gamma.
template <class S>
struct BuildingBlock {
    S weight{1};
    S alpha{0};
    S beta{-1};
    S gamma{0};

    friend bool operator==(const BuildingBlock&, const BuildingBlock&) = default;
};

/// Weighted sum of building blocks; the overall kinetic operator is half this sum.
///
/// Construction does not validate; call validate() or require_valid(). Term
/// order is preserved but carries no meaning.
template <class S>
class BasicOrderingSpec {
public:
    using scalar_type = S;
    using block_type = BuildingBlock<S>;

    BasicOrderingSpec() = default;
    explicit BasicOrderingSpec(std::vector<block_type> terms, std::string name = {})
        : terms_(std::move(terms)), name_(std::move(name))
    {
    }

    const std::vector<block_type>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    const std::string& name() const noexcept { return name_; }

    BasicOrderingSpec renamed(std::string name) const { return BasicOrderingSpec(terms_, std::move(name)); }

    friend bool operator==(const BasicOrderingSpec& a, const BasicOrderingSpec& b) { return a.terms_ == b.terms_; }

private:
    std::vector<block_type> terms_;
    std::string name_;
};

using OrderingSpec = BasicOrderingSpec<Rational>;
using SurdOrderingSpec = BasicOrderingSpec<QuadraticSurd>;
using NumericOrderingSpec = BasicOrderingSpec<double>;

/// The linear parameters (xi, zeta) plus the Hermiticity defect eta.
template <class S>
struct BasicLinearParams {
    S xi{0};
    S zeta{0};
    S eta{0};

    friend bool operator==(const BasicLinearParams&, const BasicLinearParams&) = default;
};

using LinearParams = BasicLinearParams<Rational>;

struct Issue {
    ErrorCode code;
    std::optional<std::size_t> term;
    std::string message;
};

struct ValidationReport {
    std::vector<Issue> errors;
    /// Exponents outside [-1, 0]: allowed, but reported.
    std::vector<Issue> warnings;

    bool ok() const noexcept { return errors.empty(); }
};

class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Issue> issues)
        : Error(issues.empty() ? ErrorCode::ConstraintViolation : issues.front().code, join(issues)),
          issues_(std::move(issues))
    {
    }

    const std::vector<Issue>& issues() const noexcept { return issues_; }

private:
    static std::string join(const std::vector<Issue>& issues)
    {
        std::string out;
        for (const auto& i : issues) {
            if (!out.empty())
                out += "; ";
            out += i.message;
        }
        return out;
    }

    std::vector<Issue> issues_;
};

template <class S>
ValidationReport validate(const BasicOrderingSpec<S>& spec)
{
    using T = scalar_traits<S>;
    ValidationReport report;
    if (spec.terms().empty()) {
        report.errors.push_back({ErrorCode::WeightSumViolation, std::nullopt, "ordering has no terms (weight sum 0 != 1)"});
        return report;
    }
    S total{0};
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const auto& b = spec.terms()[i];
        total += b.weight;
        const S sum = b.alpha + b.beta + b.gamma;
        if (!T::equal(sum, S{-1})) {
            report.errors.push_back({ErrorCode::ConstraintViolation, i,
                                     "term " + std::to_string(i) + ": alpha + beta + gamma = " + T::str(sum)
                                         + " != -1"});
        }
        const auto check_bounds = [&](const S& v, const char* label) {
            if (v > S{0} || v < S{-1}) {
                report.warnings.push_back({ErrorCode::ParameterOutOfDomain, i,
                                           "term " + std::to_string(i) + ": " + label + " = " + T::str(v)
                                               + " outside [-1, 0]"});
            }
        };
        check_bounds(b.alpha, "alpha");
        check_bounds(b.beta, "beta");
        check_bounds(b.gamma, "gamma");
    }
    if (!T::equal(total, S{1})) {
        report.errors.push_back(
            {ErrorCode::WeightSumViolation, std::nullopt, "weights sum to " + T::str(total) + " != 1"});
    }
    return report;
}

template <class S>
void require_valid(const BasicOrderingSpec<S>& spec)
{
    auto report = validate(spec);
    if (!report.ok())
        throw ValidationError(std::move(report.errors));
}

enum class MeanOf { Alpha, Gamma, AlphaGamma };

/// Sum of w_i X_i with X_i one of alpha_i, gamma_i, alpha_i*gamma_i.
template <class S>
S weighted_mean(const BasicOrderingSpec<S>& spec, MeanOf selector)
{
    S acc{0};
    for (const auto& b : spec.terms()) {
        switch (selector) {
        case MeanOf::Alpha: acc += b.weight * b.alpha; break;
        case MeanOf::Gamma: acc += b.weight * b.gamma; break;
        case MeanOf::AlphaGamma: acc += b.weight * (b.alpha * b.gamma); break;
        }
    }
    return acc;
}

template <class S>
BasicLinearParams<S> linear_params(const BasicOrderingSpec<S>& spec)
{
    require_valid(spec);
    const S mean_gamma = weighted_mean(spec, MeanOf::Gamma);
    return {mean_gamma, weighted_mean(spec, MeanOf::AlphaGamma), mean_gamma - weighted_mean(spec, MeanOf::Alpha)};
}

template <class S>
bool is_hermitian(const BasicOrderingSpec<S>& spec)
{
    return scalar_traits<S>::equal(weighted_mean(spec, MeanOf::Alpha), weighted_mean(spec, MeanOf::Gamma));
}

/// Sorts terms by (alpha, beta, gamma), merges equal triples and drops zero weights.
template <class S>
BasicOrderingSpec<S> canonicalize(const BasicOrderingSpec<S>& spec)
{
    std::vector<BuildingBlock<S>> terms = spec.terms();
    std::stable_sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
        return std::tie(x.alpha, x.beta, x.gamma) < std::tie(y.alpha, y.beta, y.gamma);
    });
    std::vector<BuildingBlock<S>> merged;
    for (const auto& t : terms) {
        if (!merged.empty() && merged.back().alpha == t.alpha && merged.back().beta == t.beta
            && merged.back().gamma == t.gamma)
            merged.back().weight += t.weight;
        else
            merged.push_back(t);
    }
    std::erase_if(merged, [](const auto& t) { return t.weight == S{0}; });
    return BasicOrderingSpec<S>(std::move(merged), spec.name());
}

template <class S>
NumericOrderingSpec to_numeric(const BasicOrderingSpec<S>& spec)
{
    using T = scalar_traits<S>;
    std::vector<BuildingBlock<double>> out;
    out.reserve(spec.size());
    for (const auto& b : spec.terms())
        out.push_back({T::to_double(b.weight), T::to_double(b.alpha), T::to_double(b.beta), T::to_double(b.gamma)});
    return NumericOrderingSpec(std::move(out), spec.name());
}

/// Narrows a surd-valued ordering to rationals; nullopt if any entry is irrational.
inline std::optional<OrderingSpec> to_rational(const SurdOrderingSpec& spec)
{
    std::vector<BuildingBlock<Rational>> out;
    for (const auto& b : spec.terms()) {
        if (!b.weight.is_rational() || !b.alpha.is_rational() || !b.beta.is_rational() || !b.gamma.is_rational())
            return std::nullopt;
        out.push_back({b.weight.rational_part(), b.alpha.rational_part(), b.beta.rational_part(),
                       b.gamma.rational_part()});
    }
    return OrderingSpec(std::move(out), spec.name());
}

inline SurdOrderingSpec to_surd(const OrderingSpec& spec)
{
    std::vector<BuildingBlock<QuadraticSurd>> out;
    for (const auto& b : spec.terms())
        out.push_back({b.weight, b.alpha, b.beta, b.gamma});
    return SurdOrderingSpec(std::move(out), spec.name());
}

} // namespace keo
