#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "keo/catalog.hpp"
#include "keo/discretizer.hpp"

using namespace keo;
using R = Rational;

namespace {

const Grid unit_box(int n) { return Grid(-1.0, 1.0, n); }

double ratio_of(const std::function<double(const Grid&)>& f, int n)
{
    return f(unit_box(n)) / f(unit_box(2 * n));
}

std::vector<OrderingSpec> hermitian_catalog()
{
    std::vector<OrderingSpec> out;
    for (const auto& row : catalog::table_rows())
        out.push_back(catalog::get(row.name, std::span<const R>(row.arguments)));
    out.push_back(catalog::yan_yee());
    return out;
}

} // namespace

TEST(Grid, Construction)
{
    const Grid g(0.0, 4.0, 3);
    EXPECT_DOUBLE_EQ(g.h(), 1.0);
    EXPECT_DOUBLE_EQ(g.x(0), 1.0);
    EXPECT_DOUBLE_EQ(g.x(2), 3.0);
    EXPECT_EQ(g.refined().n(), 7);
    EXPECT_DOUBLE_EQ(g.refined().h(), 0.5);
    EXPECT_THROW(Grid(0, 1, 2), Error);
    EXPECT_THROW(Grid(1, 0, 10), Error);
}

TEST(Profiles, ProbeRejectsInconsistentDerivatives)
{
    EXPECT_THROW(MassProfile("bad", [](double x) { return 1 + x * x; }, [](double x) { return x; },
                             [](double) { return 2.0; }),
                 Error);
    EXPECT_NO_THROW(profiles::by_name("gaussian", {{"sigma", R(1, 3)}}));
    EXPECT_THROW(profiles::by_name("gaussian", {{"width", R(1)}}), Error);
    EXPECT_THROW(profiles::by_name("nope"), Error);
    EXPECT_THROW(profiles::constant(0), Error);
    EXPECT_EQ(profiles::lorentzian_inverse().label(), "lorentzian(lambda=1,m0=1)");
}

TEST(DerivativeMatrix, SmallExample)
{
    const Grid g(0.0, 4.0, 3);
    Eigen::MatrixXd expected(3, 3);
    expected << 0, 0.5, 0, -0.5, 0, 0.5, 0, -0.5, 0;
    EXPECT_EQ(derivative_matrix(g), expected);
}

TEST(DerivativeMatrix, Antisymmetric)
{
    for (int n : {3, 10, 57}) {
        const auto d = derivative_matrix(Grid(-2, 3, n));
        EXPECT_EQ((d + d.transpose()).cwiseAbs().maxCoeff(), 0.0);
    }
}

TEST(DerivativeMatrix, SecondOrderOnSine)
{
    const auto err = [](const Grid& g) {
        const Eigen::VectorXd f = sample([](double x) { return std::sin(x); }, g);
        const Eigen::VectorXd df = sample([](double x) { return std::cos(x); }, g);
        const Eigen::VectorXd r = derivative_matrix(g) * f - df;
        // Interior rows only; the truncated end rows see sin at the walls.
        return r.segment(1, g.n() - 2).cwiseAbs().maxCoeff();
    };
    const Grid g(0.0, 3.0, 50);
    const double ratio = err(g) / err(g.refined());
    EXPECT_GT(ratio, 3.8);
    EXPECT_LT(ratio, 4.2);
}

TEST(AssembleTerms, ConstantMassBddIsWideLaplacian)
{
    const Grid g = unit_box(20);
    const auto op = assemble_terms(catalog::bdd(), profiles::constant(2), g, 1.0, Stencil::Central);
    const auto d = derivative_matrix(g);
    const Eigen::MatrixXd expected = -0.25 * (d * d);
    EXPECT_LT((op.matrix - expected).cwiseAbs().maxCoeff(), 1e-12 * expected.cwiseAbs().maxCoeff());
    EXPECT_EQ(op.provenance.ordering, "BDD");
    EXPECT_EQ(op.provenance.pathway, Pathway::Terms);
}

TEST(AssembleTerms, ConstantMassMatchesBddEverywhere)
{
    const Grid g = unit_box(30);
    const auto prof = profiles::constant(R(3, 2));
    for (auto stencil : {Stencil::Central, Stencil::Staggered}) {
        const auto bdd = assemble_terms(catalog::bdd(), prof, g, 1.0, stencil).matrix;
        for (const auto& spec : hermitian_catalog()) {
            const auto m = assemble_terms(spec, prof, g, 1.0, stencil).matrix;
            EXPECT_LE((m - bdd).cwiseAbs().maxCoeff(), 1e-12 * inf_norm(bdd)) << spec.name();
        }
    }
}

TEST(AssembleTerms, MirroredSpecsAreSymmetric)
{
    const Grid g = unit_box(80);
    const auto prof = profiles::lorentzian_inverse();
    for (auto stencil : {Stencil::Central, Stencil::Staggered}) {
        for (const auto& spec : hermitian_catalog()) {
            const auto m = assemble_terms(spec, prof, g, 1.0, stencil).matrix;
            EXPECT_LE(max_asymmetry(m), 1e-12 * inf_norm(m)) << spec.name();
        }
        const auto vr = assemble_terms(catalog::von_roos(R(-1, 5), R(-2, 3)), prof, g, 1.0, stencil).matrix;
        EXPECT_LE(max_asymmetry(vr), 1e-12 * inf_norm(vr));
    }
}

TEST(AssembleTerms, StencilShapes)
{
    const Grid g = unit_box(12);
    const auto prof = profiles::gaussian_bump();
    const auto central = assemble_terms(catalog::zk(), prof, g, 1.0, Stencil::Central).matrix;
    const auto staggered = assemble_terms(catalog::zk(), prof, g, 1.0, Stencil::Staggered).matrix;
    EXPECT_EQ(central(0, 1), 0.0);
    EXPECT_NE(central(0, 2), 0.0);
    EXPECT_NE(staggered(0, 1), 0.0);
    EXPECT_EQ(staggered(0, 2), 0.0);
}

TEST(AssembleTerms, LkAndWeylAreTheSameOperator)
{
    const auto prof = profiles::lorentzian_inverse();
    const auto diff = [&](const Grid& g) {
        const auto lk = assemble_terms(catalog::lk(), prof, g, 1.0, Stencil::Staggered).matrix;
        const auto w = assemble_terms(catalog::weyl(), prof, g, 1.0, Stencil::Staggered).matrix;
        const Eigen::VectorXd psi = sample(bump_test_function(g), g);
        return ((lk - w) * psi).norm() / psi.norm();
    };
    EXPECT_GT(diff(unit_box(100)), 1e-8);
    const double r = ratio_of(diff, 100);
    EXPECT_GT(r, 3.5);
    EXPECT_LT(r, 4.5);
}

TEST(AssembleTerms, HbarScaling)
{
    const Grid g = unit_box(25);
    const auto prof = profiles::smoothed_step();
    const auto a = assemble_terms(catalog::yan_yee(), prof, g, 1.0).matrix;
    const auto b = assemble_terms(catalog::yan_yee(), prof, g, 3.0).matrix;
    EXPECT_LE((b - 9.0 * a).cwiseAbs().maxCoeff(), 1e-12 * b.cwiseAbs().maxCoeff());
}

TEST(AssembleTerms, NonPositiveMassNamesTheIndex)
{
    const MassProfile odd("odd", [](double x) { return x; }, [](double) { return 1.0; }, [](double) { return 0.0; });
    try {
        assemble_terms(catalog::bdd(), odd, Grid(-1, 1, 9));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonPositiveMass);
        EXPECT_NE(std::string(e.what()).find("index"), std::string::npos);
    }
}

TEST(EffectivePotential, Examples)
{
    const auto lor = profiles::lorentzian_inverse();
    EXPECT_DOUBLE_EQ(effective_potential(LinearParams{R(-1, 3), R(1, 6), 0}, lor, 0.0, 2.0), 4.0 * (-1.0 / 3.0));
    EXPECT_EQ(effective_potential(LinearParams{0, 0, 0}, lor, 0.7), 0.0);
    EXPECT_EQ(effective_potential(LinearParams{R(-1, 2), R(1, 4), 0}, profiles::constant(2), 0.3), 0.0);
    // x = 1: inv = 2, d = 2, dd = 2 -> (1/2)(2 xi + 2 zeta)
    EXPECT_DOUBLE_EQ(effective_potential(LinearParams{R(-1, 4), R(1, 8), 0}, lor, 1.0), -0.125);
}

TEST(AssembleLinear, ConstantMassIsBitwiseBdd)
{
    const Grid g = unit_box(40);
    const auto prof = profiles::constant(R(5, 4));
    for (auto stencil : {Stencil::Central, Stencil::Staggered}) {
        const auto lin = assemble_linear(LinearParams{R(-1, 3), R(1, 6), 0}, prof, g, 1.0, stencil).matrix;
        const auto bdd = assemble_terms(catalog::bdd(), prof, g, 1.0, stencil).matrix;
        EXPECT_EQ(lin, bdd);
    }
}

TEST(AssembleLinear, ZeroParamsIsPlainSandwich)
{
    const Grid g = unit_box(40);
    const auto prof = profiles::gaussian_bump();
    const auto lin = assemble_linear(LinearParams{0, 0, 0}, prof, g, 1.0, Stencil::Central).matrix;
    const auto d = derivative_matrix(g);
    Eigen::VectorXd u(g.n());
    for (int j = 0; j < g.n(); ++j)
        u(j) = prof.inv_m(g.x(j));
    const Eigen::MatrixXd expected = -0.5 * d * u.asDiagonal() * d;
    EXPECT_LE((lin - expected).cwiseAbs().maxCoeff(), 1e-12 * expected.cwiseAbs().maxCoeff());
}

TEST(EquivalenceDefect, BddAndConstantMassVanish)
{
    for (auto stencil : {Stencil::Central, Stencil::Staggered}) {
        const Grid g = unit_box(150);
        for (const auto& name : {"gaussian", "step", "lorentzian"})
            EXPECT_LE(equivalence_defect(catalog::bdd(), profiles::by_name(name), g, 1.0, bump_test_function(g), stencil),
                      1e-12);
        for (const auto& spec : hermitian_catalog())
            EXPECT_LE(equivalence_defect(spec, profiles::constant(2), g, 1.0, bump_test_function(g), stencil), 1e-12)
                << spec.name();
    }
}

TEST(EquivalenceDefect, ZkOnLorentzianIsSecondOrder)
{
    const auto prof = profiles::lorentzian_inverse();
    const double r = ratio_of([&](const Grid& g) { return equivalence_defect(catalog::zk(), prof, g); }, 200);
    EXPECT_GE(r, 3.5);
    EXPECT_LE(r, 4.5);
}

TEST(EquivalenceDefect, YanYeeOnLorentzianIsSecondOrder)
{
    const auto prof = profiles::lorentzian_inverse();
    const double r = ratio_of([&](const Grid& g) { return equivalence_defect(catalog::yan_yee(), prof, g); }, 200);
    EXPECT_GE(r, 3.5);
    EXPECT_LE(r, 4.5);
}

TEST(EquivalenceDefect, EveryEntryEveryProfileConverges)
{
    for (const auto& name : {"gaussian", "step", "lorentzian"}) {
        const auto prof = profiles::by_name(name);
        for (const auto& spec : hermitian_catalog()) {
            const double coarse = equivalence_defect(spec, prof, unit_box(100));
            const double fine = equivalence_defect(spec, prof, unit_box(200));
            if (fine <= 1e-12) {
                EXPECT_LE(coarse, 1e-12) << spec.name() << " on " << name;
                continue;
            }
            EXPECT_GE(coarse / fine, 3.5) << spec.name() << " on " << name;
            EXPECT_LE(coarse / fine, 4.5) << spec.name() << " on " << name;
        }
    }
}

TEST(EquivalenceDefect, CentralStencilIsSecondOrderForFlatterTestFunction)
{
    const auto prof = profiles::lorentzian_inverse();
    const auto defect = [&](const Grid& g) {
        const auto flat = [](double x) { return std::pow(1.0 - x * x, 4); };
        return equivalence_defect(catalog::zk(), prof, g, 1.0, flat, Stencil::Central);
    };
    const double r = ratio_of(defect, 200);
    EXPECT_GE(r, 3.5);
    EXPECT_LE(r, 4.5);
}

TEST(EquivalenceDefect, NonHermitianTermTracksEta)
{
    const OrderingSpec single({{1, -1, 0, 0}});
    const auto prof = profiles::gaussian_bump();
    const auto defect = [&](const Grid& g) {
        const auto a = assemble_terms(single, prof, g, 1.0, Stencil::Staggered).matrix;
        const auto l = assemble_linear(linear_params(single), prof, g, 1.0, Stencil::Staggered).matrix;
        const Eigen::MatrixXd anti = 0.5 * ((a - a.transpose()) - (l - l.transpose()));
        const Eigen::VectorXd psi = sample(bump_test_function(g), g);
        return (anti * psi).norm() / psi.norm();
    };
    const double r = ratio_of(defect, 200);
    EXPECT_GE(r, 3.5);
    EXPECT_LE(r, 4.5);
    const auto a = assemble_terms(single, prof, unit_box(50)).matrix;
    EXPECT_GT(max_asymmetry(a), 1e-3);
}

TEST(MatrixExport, CsvIsRowMajorFullPrecision)
{
    Eigen::MatrixXd m(2, 2);
    m << 1.0 / 3.0, 2, -0.5, 1e-20;
    std::ostringstream os;
    write_matrix_csv(m, os);
    EXPECT_EQ(os.str(), "0.33333333333333331,2\n-0.5,9.9999999999999995e-21\n");
}
