#pragma once

#include <cmath>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "keo/errors.hpp"
#include "keo/mass_profile.hpp"
#include "keo/ordering.hpp"
#include "keo/parser.hpp"

namespace keo {

/// Which finite-difference representation of the two momentum factors is used.
///
/// Central composes the antisymmetric central difference D twice (wide 2h
/// stencil, exact antisymmetry). Staggered uses forward/backward differences
/// through half-grid points with nodal mass powers averaged onto the half
/// grid: a compact three-point stencil without odd-even decoupling.
enum class Stencil { Central, Staggered };

/// Term-by-term composition of the building blocks, or the linear (xi, zeta, eta) form.
enum class Pathway { Terms, Linear };

constexpr const char* to_string(Stencil s) { return s == Stencil::Central ? "central" : "staggered"; }
constexpr const char* to_string(Pathway p) { return p == Pathway::Terms ? "terms" : "linear"; }

struct Provenance {
    Pathway pathway = Pathway::Terms;
    Stencil stencil = Stencil::Central;
    std::string ordering; // canonical expression or parameter triple
    std::string profile;
    double xi = 0;
    double zeta = 0;
    double eta = 0;
    std::string potential; // empty for a bare kinetic operator
};

/// Dense real matrix of a discretized operator. Real arithmetic suffices even
/// for non-Hermitian orderings: p = -i hbar d/dx enters in pairs, and the
/// first-order term (i hbar/2) (1/m)' p is (hbar^2/2) (1/m)' d/dx.
struct AssembledOperator {
    Eigen::MatrixXd matrix;
    double hbar = 1.0;
    Grid grid;
    Provenance provenance;
};

/// Central difference for d/dx with Dirichlet truncation: D(i,i+1) = 1/(2h), D(i,i-1) = -1/(2h).
inline Eigen::MatrixXd derivative_matrix(const Grid& grid)
{
    const int n = grid.n();
    const double c = 1.0 / (2.0 * grid.h());
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        d(i, i + 1) = c;
        d(i + 1, i) = -c;
    }
    return d;
}

namespace detail {

inline void check_positive(const MassProfile& profile, const Grid& grid, bool include_boundary)
{
    const int lo = include_boundary ? -1 : 0;
    const int hi = include_boundary ? grid.n() : grid.n() - 1;
    for (int j = lo; j <= hi; ++j) {
        const double v = profile.inv_m(grid.x(j));
        if (!(v > 0.0) || !std::isfinite(v))
            throw Error(ErrorCode::NonPositiveMass, "mass profile " + profile.label() + " not positive at grid index "
                                                        + std::to_string(j) + " (x = " + std::to_string(grid.x(j))
                                                        + ")");
    }
}

inline std::vector<double> nodal_power(const MassProfile& profile, const Grid& grid, double s)
{
    std::vector<double> out(static_cast<std::size_t>(grid.n()));
    for (int j = 0; j < grid.n(); ++j)
        out[static_cast<std::size_t>(j)] = profile.mass_power(grid.x(j), s);
    return out;
}

/// Middle factor sampled where the stencil needs it: interior nodes (central)
/// or the n + 1 half points between nodes -1..n (staggered, averaged).
inline std::vector<double> middle_power(const MassProfile& profile, const Grid& grid, double s, Stencil stencil)
{
    if (stencil == Stencil::Central)
        return nodal_power(profile, grid, s);
    std::vector<double> out(static_cast<std::size_t>(grid.n() + 1));
    for (int k = 0; k <= grid.n(); ++k)
        out[static_cast<std::size_t>(k)]
            = 0.5 * (profile.mass_power(grid.x(k - 1), s) + profile.mass_power(grid.x(k), s));
    return out;
}

/// matrix += coef * diag(left) K(mid) diag(right), where K(mid) is D diag(mid) D
/// (central) or Dm diag(mid) Dp (staggered). The outer scaling is applied as
/// left_i * right_j so mirrored terms produce bitwise-transposed entries.
inline void add_sandwich(Eigen::MatrixXd& m, double coef, const std::vector<double>& left,
                         const std::vector<double>& mid, const std::vector<double>& right, const Grid& grid,
                         Stencil stencil)
{
    const int n = grid.n();
    const auto at = [](const std::vector<double>& v, int i) { return v[static_cast<std::size_t>(i)]; };
    const auto put = [&](int i, int j, double k) { m(i, j) += coef * (k * (at(left, i) * at(right, j))); };
    if (stencil == Stencil::Central) {
        const double s = 1.0 / (4.0 * grid.h() * grid.h());
        for (int i = 0; i < n; ++i) {
            const double up = i + 1 < n ? at(mid, i + 1) : 0.0;
            const double down = i - 1 >= 0 ? at(mid, i - 1) : 0.0;
            if (i + 2 < n)
                put(i, i + 2, up * s);
            if (i - 2 >= 0)
                put(i, i - 2, down * s);
            put(i, i, -(up + down) * s);
        }
    } else {
        const double s = 1.0 / (grid.h() * grid.h());
        for (int i = 0; i < n; ++i) {
            if (i + 1 < n)
                put(i, i + 1, at(mid, i + 1) * s);
            if (i - 1 >= 0)
                put(i, i - 1, at(mid, i) * s);
            put(i, i, -(at(mid, i) + at(mid, i + 1)) * s);
        }
    }
}

} // namespace detail

/// (hbar^2/2) [xi (1/m)'' + zeta ((1/m)')^2 / (1/m)] at x.
template <class S>
double effective_potential(const BasicLinearParams<S>& params, const MassProfile& profile, double x, double hbar = 1.0)
{
    const double inv = profile.inv_m(x);
    if (!(inv > 0.0))
        throw Error(ErrorCode::NonPositiveMass, "mass profile " + profile.label() + " not positive at x = " + std::to_string(x));
    const double d = profile.d_inv_m(x);
    const double xi = scalar_traits<S>::to_double(params.xi);
    const double zeta = scalar_traits<S>::to_double(params.zeta);
    return 0.5 * hbar * hbar * (xi * profile.dd_inv_m(x) + zeta * d * d / inv);
}

/// -(hbar^2/2) sum_i w_i M^alpha_i D M^beta_i D M^gamma_i, with M^s = diag(m(x_j)^s).
template <class S>
AssembledOperator assemble_terms(const BasicOrderingSpec<S>& spec, const MassProfile& profile, const Grid& grid,
                                 double hbar = 1.0, Stencil stencil = Stencil::Central)
{
    require_valid(spec);
    detail::check_positive(profile, grid, stencil == Stencil::Staggered);
    const auto numeric = to_numeric(spec);
    const auto lp = linear_params(numeric);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(grid.n(), grid.n());
    for (const auto& b : numeric.terms()) {
        if (b.weight == 0.0)
            continue;
        const double coef = -0.5 * hbar * hbar * b.weight;
        detail::add_sandwich(m, coef, detail::nodal_power(profile, grid, b.alpha),
                             detail::middle_power(profile, grid, b.beta, stencil),
                             detail::nodal_power(profile, grid, b.gamma), grid, stencil);
    }
    std::string label = spec.name();
    if constexpr (std::is_same_v<S, Rational>) {
        if (label.empty())
            label = print_canonical(spec);
    }
    Provenance prov{Pathway::Terms, stencil, label, profile.label(), lp.xi, lp.zeta, lp.eta, {}};
    return {std::move(m), hbar, grid, std::move(prov)};
}

/// -(hbar^2/2) D (1/m) D + eta (hbar^2/2) (1/m)' D + diag(effective potential).
///
/// With eta = 0 this is the Hermitian two-parameter form.
template <class S>
AssembledOperator assemble_linear(const BasicLinearParams<S>& params, const MassProfile& profile, const Grid& grid,
                                  double hbar = 1.0, Stencil stencil = Stencil::Central)
{
    detail::check_positive(profile, grid, stencil == Stencil::Staggered);
    using T = scalar_traits<S>;
    const double xi = T::to_double(params.xi);
    const double zeta = T::to_double(params.zeta);
    const double eta = T::to_double(params.eta);
    const int n = grid.n();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    const std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
    detail::add_sandwich(m, -0.5 * hbar * hbar, ones, detail::middle_power(profile, grid, -1.0, stencil), ones, grid,
                         stencil);
    if (eta != 0.0) {
        const double c = eta * 0.5 * hbar * hbar / (2.0 * grid.h());
        for (int i = 0; i < n; ++i) {
            const double du = profile.d_inv_m(grid.x(i));
            if (i + 1 < n)
                m(i, i + 1) += c * du;
            if (i - 1 >= 0)
                m(i, i - 1) -= c * du;
        }
    }
    if (xi != 0.0 || zeta != 0.0) {
        for (int i = 0; i < n; ++i)
            m(i, i) += effective_potential(params, profile, grid.x(i), hbar);
    }
    Provenance prov{Pathway::Linear, stencil,
                    "(xi,zeta,eta)=(" + T::str(params.xi) + "," + T::str(params.zeta) + "," + T::str(params.eta) + ")",
                    profile.label(), xi, zeta, eta, {}};
    return {std::move(m), hbar, grid, std::move(prov)};
}

/// ((x - a)(b - x))^2 scaled to peak 1; equals (1 - x^2)^2 on [-1, 1]. Vanishes
/// with its first derivative at both ends, as the truncated stencils assume.
inline std::function<double(double)> bump_test_function(const Grid& grid)
{
    const double a = grid.x_min();
    const double b = grid.x_max();
    const double half = 0.5 * (b - a);
    const double scale = 1.0 / (half * half * half * half);
    return [=](double x) {
        const double v = (x - a) * (b - x);
        return scale * v * v;
    };
}

inline Eigen::VectorXd sample(const std::function<double(double)>& f, const Grid& grid)
{
    Eigen::VectorXd v(grid.n());
    for (int j = 0; j < grid.n(); ++j)
        v(j) = f(grid.x(j));
    return v;
}

/// ||(A_terms - A_linear) psi|| / ||psi|| for psi sampled from test_function.
/// Both pathways use the same stencil, staggered unless given.
template <class S>
double equivalence_defect(const BasicOrderingSpec<S>& spec, const MassProfile& profile, const Grid& grid,
                          double hbar, const std::function<double(double)>& test_function,
                          Stencil stencil = Stencil::Staggered)
{
    const auto terms = assemble_terms(spec, profile, grid, hbar, stencil);
    const auto linear = assemble_linear(linear_params(spec), profile, grid, hbar, stencil);
    const Eigen::VectorXd psi = sample(test_function, grid);
    return ((terms.matrix - linear.matrix) * psi).norm() / psi.norm();
}

template <class S>
double equivalence_defect(const BasicOrderingSpec<S>& spec, const MassProfile& profile, const Grid& grid,
                          double hbar = 1.0)
{
    return equivalence_defect(spec, profile, grid, hbar, bump_test_function(grid));
}

/// Largest |A(i,j) - A(j,i)|.
inline double max_asymmetry(const Eigen::MatrixXd& a) { return (a - a.transpose()).cwiseAbs().maxCoeff(); }

/// Infinity norm (max absolute row sum).
inline double inf_norm(const Eigen::MatrixXd& a) { return a.cwiseAbs().rowwise().sum().maxCoeff(); }

/// Row-major dense CSV with round-trip precision.
inline void write_matrix_csv(const Eigen::MatrixXd& a, std::ostream& os)
{
    std::ostringstream line;
    line << std::setprecision(17);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        line.str({});
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (j)
                line << ',';
            line << a(i, j);
        }
        os << line.str() << '\n';
    }
}

} // namespace keo
