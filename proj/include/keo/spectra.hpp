#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "keo/classifier.hpp"
#include "keo/discretizer.hpp"
#include "keo/errors.hpp"
#include "keo/mass_profile.hpp"
#include "keo/ordering.hpp"

namespace keo {

/// External potential V(x), either analytic or tabulated on one grid.
class PotentialProfile {
public:
    using Fn = std::function<double(double)>;
    using Parameters = std::map<std::string, Rational>;

    PotentialProfile(std::string name, Fn v, Parameters parameters = {})
        : name_(std::move(name)), v_(std::move(v)), parameters_(std::move(parameters))
    {
    }

    static PotentialProfile tabulated(std::string name, const Grid& grid, std::vector<double> values)
    {
        if (static_cast<int>(values.size()) != grid.n())
            throw Error(ErrorCode::GridMismatch, "tabulated potential has " + std::to_string(values.size())
                                                     + " values for a grid of " + std::to_string(grid.n()));
        PotentialProfile p(std::move(name), nullptr);
        p.grid_ = grid;
        p.table_ = std::move(values);
        return p;
    }

    const std::string& name() const noexcept { return name_; }
    const Parameters& parameters() const noexcept { return parameters_; }

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

    std::vector<double> sample(const Grid& grid) const
    {
        if (grid_) {
            if (!(*grid_ == grid))
                throw Error(ErrorCode::GridMismatch, "potential '" + name_ + "' is tabulated on a different grid");
            return table_;
        }
        std::vector<double> out(static_cast<std::size_t>(grid.n()));
        for (int j = 0; j < grid.n(); ++j) {
            out[static_cast<std::size_t>(j)] = v_(grid.x(j));
            if (!std::isfinite(out[static_cast<std::size_t>(j)]))
                throw Error(ErrorCode::InvalidProfile, "potential '" + name_ + "' not finite at grid index " + std::to_string(j));
        }
        return out;
    }

private:
    std::string name_;
    Fn v_;
    Parameters parameters_;
    std::optional<Grid> grid_;
    std::vector<double> table_;
};

namespace potentials {

inline PotentialProfile zero()
{
    return PotentialProfile("zero", [](double) { return 0.0; });
}

/// V = k x^2 / 2.
inline PotentialProfile harmonic(const Rational& k = Rational(1))
{
    const double kk = k.to_double();
    return PotentialProfile("harmonic", [kk](double x) { return 0.5 * kk * x * x; }, {{"k", k}});
}

/// V = -depth exp(-x^2/sigma^2).
inline PotentialProfile gaussian_well(const Rational& depth = Rational(1), const Rational& sigma = Rational(1, 2))
{
    if (sigma.sign() <= 0)
        throw Error(ErrorCode::InvalidProfile, "gaussian well needs sigma > 0");
    const double d = depth.to_double();
    const double s2 = sigma.to_double() * sigma.to_double();
    return PotentialProfile("gaussian_well", [d, s2](double x) { return -d * std::exp(-x * x / s2); },
                            {{"depth", depth}, {"sigma", sigma}});
}

inline PotentialProfile by_name(const std::string& name, const PotentialProfile::Parameters& params = {})
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
                throw Error(ErrorCode::InvalidProfile, "potential '" + name + "' has no parameter '" + k + "'");
        }
    };
    if (name == "zero") {
        check_keys({});
        return zero();
    }
    if (name == "harmonic") {
        check_keys({"k"});
        return harmonic(get("k", 1));
    }
    if (name == "gaussian_well") {
        check_keys({"depth", "sigma"});
        return gaussian_well(get("depth", 1), get("sigma", Rational(1, 2)));
    }
    throw Error(ErrorCode::UnknownName, "unknown potential '" + name + "' (known: zero, harmonic, gaussian_well)");
}

} // namespace potentials

/// keo + diag(V(x_j)).
inline AssembledOperator hamiltonian(const AssembledOperator& keo, const PotentialProfile& v)
{
    const auto values = v.sample(keo.grid);
    AssembledOperator h = keo;
    for (int j = 0; j < keo.grid.n(); ++j)
        h.matrix(j, j) += values[static_cast<std::size_t>(j)];
    h.provenance.potential = v.label();
    return h;
}

struct SpectrumResult {
    std::vector<double> eigenvalues; // ascending
    int count_requested = 0;
    Grid grid;
    Provenance provenance;
    double max_residual = 0; // max ||H psi - E psi|| / ||psi|| over returned pairs
};

inline constexpr int max_dense_size = 4000;

namespace detail {

inline bool is_tridiagonal(const Eigen::MatrixXd& a)
{
    const Eigen::Index n = a.rows();
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            if (std::abs(i - j) > 1 && a(i, j) != 0.0)
                return false;
    return true;
}

/// Eigenvector for a known eigenvalue of a symmetric tridiagonal matrix by
/// inverse iteration; the eigenvalue is refined to the Rayleigh quotient.
inline std::pair<double, Eigen::VectorXd> inverse_iteration(const Eigen::MatrixXd& a, double lambda)
{
    const Eigen::Index n = a.rows();
    const double scale = std::max(1.0, inf_norm(a));
    const double shift = lambda + 1e-13 * scale;
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(3 * n));
    for (Eigen::Index i = 0; i < n; ++i) {
        trips.emplace_back(i, i, a(i, i) - shift);
        if (i + 1 < n) {
            trips.emplace_back(i, i + 1, a(i, i + 1));
            trips.emplace_back(i + 1, i, a(i + 1, i));
        }
    }
    Eigen::SparseMatrix<double> s(n, n);
    s.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(s);
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
    // Deterministic, non-symmetric start so no eigenvector is orthogonal to it.
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) += 0.01 * std::sin(1.0 + static_cast<double>(i));
    v.normalize();
    if (lu.info() == Eigen::Success) {
        for (int it = 0; it < 3; ++it) {
            Eigen::VectorXd next = lu.solve(v);
            if (!next.allFinite() || next.norm() == 0.0)
                break;
            v = next.normalized();
        }
    }
    const double rq = v.dot(a * v);
    return {rq, v};
}

} // namespace detail

/// Lowest k eigenvalues of a symmetric operator matrix.
///
/// Tridiagonal matrices (the staggered stencil) take a tridiagonal QR for the
/// eigenvalues plus inverse iteration for the k eigenvectors; anything else
/// uses a dense symmetric eigendecomposition.
inline SpectrumResult solve(const AssembledOperator& h, int k)
{
    const int n = h.grid.n();
    if (k < 1 || k > n)
        throw Error(ErrorCode::InvalidCount, "requested " + std::to_string(k) + " eigenvalues from a grid of "
                                                 + std::to_string(n) + " points");
    if (n > max_dense_size)
        throw Error(ErrorCode::InvalidGrid, "grid of " + std::to_string(n) + " points exceeds the dense eigensolver limit of "
                                                + std::to_string(max_dense_size));
    const double asym = max_asymmetry(h.matrix);
    const double norm = inf_norm(h.matrix);
    if (asym > 1e-12 * std::max(norm, 1.0))
        throw Error(ErrorCode::NotSymmetric, "operator is not symmetric (max asymmetry " + std::to_string(asym)
                                                 + "); non-Hermitian orderings have no real spectrum");
    const Eigen::MatrixXd sym = 0.5 * (h.matrix + h.matrix.transpose());

    SpectrumResult out{{}, k, h.grid, h.provenance, 0.0};
    if (detail::is_tridiagonal(sym)) {
        Eigen::VectorXd diag = sym.diagonal();
        Eigen::VectorXd sub(n - 1);
        for (int i = 0; i + 1 < n; ++i)
            sub(i) = sym(i + 1, i);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw Error(ErrorCode::NotSymmetric, "tridiagonal eigensolver did not converge");
        for (int i = 0; i < k; ++i) {
            auto [value, vec] = detail::inverse_iteration(sym, es.eigenvalues()(i));
            out.eigenvalues.push_back(value);
            out.max_residual = std::max(out.max_residual, (sym * vec - value * vec).norm() / vec.norm());
        }
        std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
        return out;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success)
        throw Error(ErrorCode::NotSymmetric, "dense eigensolver did not converge");
    for (int i = 0; i < k; ++i) {
        const double value = es.eigenvalues()(i);
        const Eigen::VectorXd vec = es.eigenvectors().col(i);
        out.eigenvalues.push_back(value);
        out.max_residual = std::max(out.max_residual, (sym * vec - value * vec).norm() / vec.norm());
    }
    return out;
}

/// Three-level Richardson extrapolation for an O(h^2) quantity on grids h, h/2, h/4.
struct Extrapolation {
    std::vector<double> values;
    double extrapolated = 0;
    double error_estimate = 0;  // |R(h/2,h/4) - R(h,h/2)|
    double observed_ratio = 0;  // (v0 - v1)/(v1 - v2), about 4 for O(h^2)
};

inline Extrapolation richardson(double coarse, double mid, double fine)
{
    const double r1 = (4.0 * mid - coarse) / 3.0;
    const double r2 = (4.0 * fine - mid) / 3.0;
    const double denom = mid - fine;
    return {{coarse, mid, fine}, r2, std::abs(r2 - r1), denom != 0.0 ? (coarse - mid) / denom : 0.0};
}

/// Evaluates f on grid, grid/2, grid/4 and extrapolates.
inline Extrapolation refine(const std::function<double(const Grid&)>& f, const Grid& grid)
{
    const Grid g1 = grid.refined();
    const Grid g2 = g1.refined();
    return richardson(f(grid), f(g1), f(g2));
}

struct DualSide {
    Rational xi;
    Rational zeta;
    Region region;
    SurdOrderingSpec ordering;
    SpectrumResult spectrum;
};

struct DualPairReport {
    Rational xi;
    Rational theta;
    DualSide von_roos;
    DualSide class_i;
};

/// Builds the von Roos and class-I orderings at (xi, xi^2 -|theta|) and
/// (xi, xi^2 + |theta|), solves both and reports the spectra side by side.
/// No equality between the two spectra is implied.
inline DualPairReport dual_pair_report(const Rational& xi, const Rational& theta, const MassProfile& profile,
                                       const PotentialProfile& v, const Grid& grid, int k, double hbar = 1.0,
                                       Stencil stencil = Stencil::Staggered)
{
    const Rational t = abs(theta);
    const Rational zeta_vr = square(xi) - t;
    const Rational zeta_i = square(xi) + t;
    for (const auto& z : {zeta_vr, zeta_i}) {
        if (auto why = allowed_region_violation(xi, z))
            throw Error(ErrorCode::DualOutsideAllowedRegion,
                        "dual pair point (" + xi.str() + ", " + z.str() + "): " + *why);
    }
    const auto build = [&](const Rational& zeta, Region region) {
        auto ordering = invert(xi, zeta, region);
        auto keo = assemble_terms(ordering, profile, grid, hbar, stencil);
        keo.provenance.ordering = ordering.name();
        auto spectrum = solve(hamiltonian(keo, v), k);
        return DualSide{xi, zeta, region, std::move(ordering), std::move(spectrum)};
    };
    return {xi, theta, build(zeta_vr, Region::VonRoos), build(zeta_i, Region::ClassI)};
}

} // namespace keo
