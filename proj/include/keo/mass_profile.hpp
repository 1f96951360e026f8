#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <utility>

#include "keo/errors.hpp"
#include "keo/rational.hpp"

namespace keo {

/// Uniform grid of n interior points; the wavefunction vanishes at x_min and x_max.
class Grid {
public:
    Grid(double x_min, double x_max, int n) : x_min_(x_min), x_max_(x_max), n_(n)
    {
        if (n < 3)
            throw Error(ErrorCode::InvalidGrid, "grid needs at least 3 interior points, got " + std::to_string(n));
        if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max))
            throw Error(ErrorCode::InvalidGrid, "grid requires finite x_min < x_max");
        h_ = (x_max - x_min) / (n + 1);
    }

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    int n() const noexcept { return n_; }
    double h() const noexcept { return h_; }

    /// Interior node j in [0, n); j = -1 and j = n are the boundary points.
    double x(int j) const noexcept { return x_min_ + (j + 1) * h_; }

    /// Same interval with the spacing halved (n -> 2n + 1).
    Grid refined() const { return Grid(x_min_, x_max_, 2 * n_ + 1); }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    double x_min_;
    double x_max_;
    int n_;
    double h_ = 0;
};

/// Positive mass m(x), described through 1/m and its first two derivatives.
///
/// Construction probes the analytic derivatives against central differences;
/// a profile whose derivatives disagree (or that is not smooth) is rejected.
class MassProfile {
public:
    using Fn = std::function<double(double)>;
    using Parameters = std::map<std::string, Rational>;

    MassProfile(std::string name, Fn inv_m, Fn d_inv_m, Fn dd_inv_m, Parameters parameters = {},
                std::pair<double, double> probe_interval = {-4.0, 4.0})
        : name_(std::move(name)),
          inv_m_(std::move(inv_m)),
          d_inv_m_(std::move(d_inv_m)),
          dd_inv_m_(std::move(dd_inv_m)),
          parameters_(std::move(parameters))
    {
        probe(probe_interval.first, probe_interval.second);
    }

    const std::string& name() const noexcept { return name_; }
    const Parameters& parameters() const noexcept { return parameters_; }

    double inv_m(double x) const { return inv_m_(x); }
    double d_inv_m(double x) const { return d_inv_m_(x); }
    double dd_inv_m(double x) const { return dd_inv_m_(x); }
    double mass(double x) const { return 1.0 / inv_m_(x); }

    /// m(x)^s evaluated as (1/m)^(-s); s = -1 returns 1/m bit for bit.
    double mass_power(double x, double s) const { return std::pow(inv_m_(x), -s); }

    /// "name(k=v,...)"
    std::string label() const
    {
        std::string out = name_;
        if (!parameters_.empty()) {
            out += "(";
            bool first = true;
            for (const auto& [k, v] : parameters_) {
                out += (first ? "" : ",") + k + "=" + v.str();
                first = false;
            }
            out += ")";
        }
        return out;
    }

private:
    void probe(double a, double b) const
    {
        constexpr int samples = 401;
        const double step = 1e-5 * (b - a);
        for (int i = 0; i < samples; ++i) {
            const double x = a + (b - a) * i / (samples - 1);
            const double f = inv_m_(x);
            const double d = d_inv_m_(x);
            const double dd = dd_inv_m_(x);
            if (!std::isfinite(f) || !std::isfinite(d) || !std::isfinite(dd))
                throw Error(ErrorCode::InvalidProfile, name_ + ": non-finite 1/m or derivative at x = " + std::to_string(x));
            const double fd = (inv_m_(x + step) - inv_m_(x - step)) / (2 * step);
            const double fdd = (d_inv_m_(x + step) - d_inv_m_(x - step)) / (2 * step);
            const double tol = 1e-5;
            if (std::abs(fd - d) > tol * (1.0 + std::abs(d) + std::abs(f)))
                throw Error(ErrorCode::InvalidProfile,
                            name_ + ": first derivative of 1/m inconsistent with finite differences at x = "
                                + std::to_string(x));
            if (std::abs(fdd - dd) > tol * (1.0 + std::abs(dd) + std::abs(d)))
                throw Error(ErrorCode::InvalidProfile,
                            name_ + ": second derivative of 1/m inconsistent with finite differences at x = "
                                + std::to_string(x));
        }
    }

    std::string name_;
    Fn inv_m_;
    Fn d_inv_m_;
    Fn dd_inv_m_;
    Parameters parameters_;
};

namespace profiles {

inline MassProfile constant(const Rational& m0 = Rational(1))
{
    if (m0.sign() <= 0)
        throw Error(ErrorCode::NonPositiveMass, "constant mass must be positive, got " + m0.str());
    const double inv = 1.0 / m0.to_double();
    return MassProfile(
        "constant", [inv](double) { return inv; }, [](double) { return 0.0; }, [](double) { return 0.0; },
        {{"m0", m0}});
}

/// m = m0 / (1 + lambda x^2), so 1/m is a parabola.
inline MassProfile lorentzian_inverse(const Rational& m0 = Rational(1), const Rational& lambda = Rational(1))
{
    if (m0.sign() <= 0 || lambda.sign() < 0)
        throw Error(ErrorCode::InvalidProfile, "lorentzian profile needs m0 > 0 and lambda >= 0");
    const double a = 1.0 / m0.to_double();
    const double l = lambda.to_double();
    return MassProfile(
        "lorentzian", [a, l](double x) { return a * (1.0 + l * x * x); }, [a, l](double x) { return a * 2.0 * l * x; },
        [a, l](double) { return a * 2.0 * l; }, {{"lambda", lambda}, {"m0", m0}});
}

/// m = m0 (1 + lambda exp(-x^2/sigma^2)).
inline MassProfile gaussian_bump(const Rational& m0 = Rational(1), const Rational& lambda = Rational(1, 2),
                                 const Rational& sigma = Rational(1, 2))
{
    if (m0.sign() <= 0 || lambda <= Rational(-1) || sigma.sign() <= 0)
        throw Error(ErrorCode::InvalidProfile, "gaussian profile needs m0 > 0, lambda > -1, sigma > 0");
    const double M = m0.to_double();
    const double l = lambda.to_double();
    const double s2 = sigma.to_double() * sigma.to_double();
    // f = 1 + l g, 1/m = 1/(M f)
    auto f = [l, s2](double x) { return 1.0 + l * std::exp(-x * x / s2); };
    auto df = [l, s2](double x) { return l * std::exp(-x * x / s2) * (-2.0 * x / s2); };
    auto ddf = [l, s2](double x) { return l * std::exp(-x * x / s2) * (4.0 * x * x / (s2 * s2) - 2.0 / s2); };
    return MassProfile(
        "gaussian", [=](double x) { return 1.0 / (M * f(x)); },
        [=](double x) {
            const double v = f(x);
            return -df(x) / (M * v * v);
        },
        [=](double x) {
            const double v = f(x);
            const double d = df(x);
            return (2.0 * d * d - v * ddf(x)) / (M * v * v * v);
        },
        {{"lambda", lambda}, {"m0", m0}, {"sigma", sigma}});
}

/// m = m0 (1 + lambda tanh(x/sigma)), |lambda| < 1.
inline MassProfile smoothed_step(const Rational& m0 = Rational(1), const Rational& lambda = Rational(1, 2),
                                 const Rational& sigma = Rational(1, 4))
{
    if (m0.sign() <= 0 || abs(lambda) >= Rational(1) || sigma.sign() <= 0)
        throw Error(ErrorCode::InvalidProfile, "step profile needs m0 > 0, |lambda| < 1, sigma > 0");
    const double M = m0.to_double();
    const double l = lambda.to_double();
    const double s = sigma.to_double();
    auto f = [l, s](double x) { return 1.0 + l * std::tanh(x / s); };
    auto df = [l, s](double x) {
        const double c = 1.0 / std::cosh(x / s);
        return l * c * c / s;
    };
    auto ddf = [l, s](double x) {
        const double c = 1.0 / std::cosh(x / s);
        return -2.0 * l * c * c * std::tanh(x / s) / (s * s);
    };
    return MassProfile(
        "step", [=](double x) { return 1.0 / (M * f(x)); },
        [=](double x) {
            const double v = f(x);
            return -df(x) / (M * v * v);
        },
        [=](double x) {
            const double v = f(x);
            const double d = df(x);
            return (2.0 * d * d - v * ddf(x)) / (M * v * v * v);
        },
        {{"lambda", lambda}, {"m0", m0}, {"sigma", sigma}});
}

/// Builds a built-in profile by name; missing parameters take the defaults above.
inline MassProfile by_name(const std::string& name, const MassProfile::Parameters& params = {})
{
    const auto get = [&](const char* key, Rational fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    const auto check_keys = [&](std::initializer_list<const char*> allowed) {
        for (const auto& [k, v] : params) {
            bool ok = false;
            for (const char* a : allowed)
                ok = ok || k == a;
            if (!ok)
                throw Error(ErrorCode::InvalidProfile, "profile '" + name + "' has no parameter '" + k + "'");
        }
    };
    if (name == "constant") {
        check_keys({"m0"});
        return constant(get("m0", 1));
    }
    if (name == "lorentzian") {
        check_keys({"m0", "lambda"});
        return lorentzian_inverse(get("m0", 1), get("lambda", 1));
    }
    if (name == "gaussian") {
        check_keys({"m0", "lambda", "sigma"});
        return gaussian_bump(get("m0", 1), get("lambda", Rational(1, 2)), get("sigma", Rational(1, 2)));
    }
    if (name == "step") {
        check_keys({"m0", "lambda", "sigma"});
        return smoothed_step(get("m0", 1), get("lambda", Rational(1, 2)), get("sigma", Rational(1, 4)));
    }
    throw Error(ErrorCode::UnknownName,
                "unknown mass profile '" + name + "' (known: constant, lorentzian, gaussian, step)");
}

} // namespace profiles

} // namespace keo
