#include <gtest/gtest.h>

#include "keo/catalog.hpp"
#include "keo/parser.hpp"
#include "malformed_inputs.hpp"

using namespace keo;
using R = Rational;

namespace {

std::vector<OrderingSpec> all_catalog_specs()
{
    std::vector<OrderingSpec> out;
    for (const auto& row : catalog::table_rows())
        out.push_back(catalog::get(row.name, std::span<const R>(row.arguments)));
    out.push_back(catalog::yan_yee());
    out.push_back(catalog::da(R(-1, 2)));
    out.push_back(catalog::von_roos(R(-1, 7), R(-2, 5)));
    return out;
}

} // namespace


TEST(Parse, BenDanielDuke)
{
    const auto spec = parse("1/2 * p m^(-1) p");
    EXPECT_EQ(spec, catalog::bdd());
}

TEST(Parse, GoraWilliams)
{
    const auto spec = parse("1/4 * 1/m p^2 + 1/4 * p^2 1/m");
    EXPECT_EQ(spec, catalog::gw());
}

TEST(Parse, ZhuKroemer)
{
    EXPECT_EQ(parse("1/2 * 1/sqrt(m) p^2 1/sqrt(m)"), catalog::zk());
}

TEST(Parse, ImplicitCoefficientAndSubtraction)
{
    const auto spec = parse("p m^(-1) p - 1/2 * p m^(-1) p");
    EXPECT_EQ(spec.terms()[0].weight, R(2));
    EXPECT_EQ(spec.terms()[1].weight, R(-1));
}

TEST(Parse, AdjacentMassPowersMerge)
{
    const auto expr = parse_expression("1/2 * m^(-1/4) 1/sqrt(m) m^(1/4) p p m^(-1/2)");
    ASSERT_EQ(expr.terms.size(), 1u);
    EXPECT_EQ(expr.terms[0].factors.size(), 4u);
    EXPECT_EQ(std::get<MassPower>(expr.terms[0].factors[0]).exponent, R(-1, 2));
    EXPECT_EQ(parse("1/2 * m^(-1/4) 1/sqrt(m) m^(1/4) p p m^(-1/2)"), (OrderingSpec({{1, R(-1, 2), 0, R(-1, 2)}})));
}

TEST(Parse, WrongMomentumCount)
{
    try {
        parse("1/2 * p m^(-1)");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.code(), ErrorCode::WrongMomentumCount);
        EXPECT_EQ(e.position(), 0u);
    }
}

TEST(Parse, WeightAndConstraintErrors)
{
    try {
        parse("1/4 * p m^(-1) p");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonUnitWeightSum);
    }
    try {
        parse("1/4 * p m^(-1) p + 1/4 * p m^(-2) p");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.code(), ErrorCode::PerTermConstraintViolation);
        EXPECT_EQ(e.position(), 19u);
    }
}

TEST(Parse, MalformedInputsArePositioned)
{
    ASSERT_EQ(keo::corpus::malformed_inputs.size(), 20u);
    for (const auto& text : keo::corpus::malformed_inputs) {
        try {
            parse(text);
            ADD_FAILURE() << "accepted: '" << text << "'";
        } catch (const ParseError& e) {
            EXPECT_TRUE(e.code() == ErrorCode::SyntaxError || e.code() == ErrorCode::WrongMomentumCount)
                << text << " -> " << to_string(e.code());
            EXPECT_LE(e.position(), text.size()) << text;
            EXPECT_NE(std::string(e.what()).find("position"), std::string::npos);
        }
    }
}

TEST(Parse, SyntaxErrorPointsAtOffendingCharacter)
{
    try {
        parse("1/2 * p q p");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
        EXPECT_EQ(e.position(), 8u);
    }
}

TEST(Print, Examples)
{
    EXPECT_EQ(print_canonical(catalog::bdd()), "1/2 * p m^(-1) p");
    EXPECT_EQ(print_canonical(catalog::weyl()), "1/8 * m^(-1) p p + 1/4 * p m^(-1) p + 1/8 * p p m^(-1)");
    const OrderingSpec dup({{R(1, 2), 0, -1, 0}, {R(1, 2), 0, -1, 0}});
    EXPECT_EQ(print_canonical(dup), "1/2 * p m^(-1) p");
}

TEST(Print, NegativeCoefficients)
{
    const auto da = catalog::da(R(-1, 2));
    const std::string text = print_canonical(da);
    EXPECT_NE(text.find(" - "), std::string::npos);
    EXPECT_EQ(parse(text), canonicalize(da));
}

TEST(Print, RoundTripIsFixpoint)
{
    for (const auto& spec : all_catalog_specs()) {
        const std::string once = print_canonical(spec);
        const auto parsed = parse(once);
        EXPECT_EQ(parsed, canonicalize(spec)) << once;
        EXPECT_EQ(print_canonical(parsed), once);
        EXPECT_EQ(linear_params(parsed), linear_params(spec)) << once;
    }
}
