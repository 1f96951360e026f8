#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "keo/errors.hpp"
#include "keo/ordering.hpp"
#include "keo/rational.hpp"

// Text form of an ordering:
//
//   expr     := term (('+' | '-') term)*
//   term     := [rational '*'] factor+
//   factor   := 'p' | 'p^2' | 'm^(' rational ')' | '1/m' | '1/sqrt(m)'
//   rational := ['-'] int ['/' int]
//
// Factors are juxtaposed (operator product). The written coefficient includes
// the overall 1/2 of the kinetic operator, so a term's weight is twice its
// coefficient: "1/2 * p m^(-1) p" is BDD with weight 1.
namespace keo {

struct MomentumFactor {
    friend bool operator==(const MomentumFactor&, const MomentumFactor&) = default;
};

struct MassPower {
    Rational exponent;
    friend bool operator==(const MassPower&, const MassPower&) = default;
};

using Factor = std::variant<MomentumFactor, MassPower>;

struct ExpressionTerm {
    Rational coefficient;
    std::vector<Factor> factors; // adjacent mass powers already merged
    std::size_t position = 0;    // offset of the term in the source
};

struct KeoExpression {
    std::string source;
    std::vector<ExpressionTerm> terms;
};

namespace detail {

class ExpressionParser {
public:
    explicit ExpressionParser(std::string_view text) : text_(text) {}

    KeoExpression run()
    {
        KeoExpression expr{std::string(text_), {}};
        skip_ws();
        expr.terms.push_back(term(Rational(1)));
        for (;;) {
            skip_ws();
            if (at_end())
                break;
            const char c = peek();
            if (c != '+' && c != '-')
                fail("expected '+', '-' or end of input");
            ++pos_;
            skip_ws();
            expr.terms.push_back(term(c == '-' ? Rational(-1) : Rational(1)));
        }
        return expr;
    }

private:
    [[noreturn]] void fail(const std::string& expected) const
    {
        std::string found = at_end() ? "end of input" : "'" + std::string(1, peek()) + "'";
        throw ParseError(ErrorCode::SyntaxError, pos_,
                         "syntax error at position " + std::to_string(pos_) + ": " + expected + ", found " + found);
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    bool looking_at(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
            ++pos_;
    }

    void expect(char c, const char* what)
    {
        if (at_end() || peek() != c)
            fail(std::string("expected ") + what);
        ++pos_;
    }

    Rational::int_type integer()
    {
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
            ++pos_;
        if (start == pos_)
            fail("expected digit");
        try {
            return Rational::parse(text_.substr(start, pos_ - start)).num();
        } catch (const Error&) {
            pos_ = start;
            fail("integer within 64-bit range");
        }
    }

    Rational rational()
    {
        bool negative = false;
        if (!at_end() && peek() == '-') {
            negative = true;
            ++pos_;
        }
        const std::size_t start = pos_;
        const auto num = integer();
        Rational::int_type den = 1;
        if (!at_end() && peek() == '/') {
            ++pos_;
            den = integer();
            if (den == 0) {
                pos_ = start;
                fail("nonzero denominator");
            }
        }
        const Rational r(num, den);
        return negative ? -r : r;
    }

    // Sugar factors start with "1/", which also begins a rational coefficient.
    bool at_sugar_factor() const
    {
        if (looking_at("1/sqrt(m)"))
            return true;
        if (!looking_at("1/m"))
            return false;
        const std::size_t next = pos_ + 3;
        return next >= text_.size() || !std::isalnum(static_cast<unsigned char>(text_[next]));
    }

    bool at_factor() const { return !at_end() && (peek() == 'p' || peek() == 'm' || at_sugar_factor()); }

    void push_mass(std::vector<Factor>& out, const Rational& e)
    {
        if (!out.empty())
            if (auto* prev = std::get_if<MassPower>(&out.back())) {
                prev->exponent += e;
                return;
            }
        out.emplace_back(MassPower{e});
    }

    void factor(std::vector<Factor>& out)
    {
        if (looking_at("1/sqrt(m)")) {
            pos_ += 9;
            push_mass(out, Rational(-1, 2));
            return;
        }
        if (at_sugar_factor()) {
            pos_ += 3;
            push_mass(out, Rational(-1));
            return;
        }
        if (peek() == 'p') {
            ++pos_;
            out.emplace_back(MomentumFactor{});
            if (!at_end() && peek() == '^') {
                ++pos_;
                expect('2', "'2' after 'p^'");
                out.emplace_back(MomentumFactor{});
            }
            return;
        }
        // peek() == 'm'
        ++pos_;
        expect('^', "'^(' after 'm'");
        expect('(', "'(' after 'm^'");
        skip_ws();
        const Rational e = rational();
        skip_ws();
        expect(')', "')' closing mass exponent");
        push_mass(out, e);
    }

    ExpressionTerm term(const Rational& sign)
    {
        ExpressionTerm t{sign, {}, pos_};
        if (at_end())
            fail("expected term");
        const char c = peek();
        if ((c == '-' || std::isdigit(static_cast<unsigned char>(c))) && !at_sugar_factor()) {
            t.coefficient = sign * rational();
            skip_ws();
            expect('*', "'*' after coefficient");
            skip_ws();
        }
        if (!at_factor())
            fail("expected factor (p, p^2, m^(r), 1/m, 1/sqrt(m))");
        while (at_factor()) {
            factor(t.factors);
            skip_ws();
        }
        return t;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses the text form without checking the ordering constraints.
inline KeoExpression parse_expression(std::string_view text) { return detail::ExpressionParser(text).run(); }

/// Normalizes each term to m^a p m^b p m^g and checks weights and per-term constraints.
inline OrderingSpec to_ordering(const KeoExpression& expr)
{
    std::vector<BuildingBlock<Rational>> blocks;
    for (std::size_t i = 0; i < expr.terms.size(); ++i) {
        const auto& t = expr.terms[i];
        Rational exps[3] = {0, 0, 0};
        std::size_t momenta = 0;
        for (const auto& f : t.factors) {
            if (std::holds_alternative<MomentumFactor>(f)) {
                ++momenta;
            } else if (momenta <= 2) {
                exps[momenta] += std::get<MassPower>(f).exponent;
            }
        }
        if (momenta != 2) {
            throw ParseError(ErrorCode::WrongMomentumCount, t.position,
                             "term " + std::to_string(i) + " at position " + std::to_string(t.position) + " has "
                                 + std::to_string(momenta) + " momentum factor(s); expected exactly 2");
        }
        blocks.push_back({Rational(2) * t.coefficient, exps[0], exps[1], exps[2]});
    }
    OrderingSpec spec(std::move(blocks));
    const auto report = validate(spec);
    for (const auto& issue : report.errors) {
        if (issue.code == ErrorCode::ConstraintViolation) {
            const std::size_t at = expr.terms[*issue.term].position;
            throw ParseError(ErrorCode::PerTermConstraintViolation, at,
                             issue.message + " (term at position " + std::to_string(at) + ")");
        }
    }
    for (const auto& issue : report.errors) {
        if (issue.code == ErrorCode::WeightSumViolation) {
            throw ParseError(ErrorCode::NonUnitWeightSum, 0,
                             issue.message + " (coefficients must sum to 1/2)");
        }
    }
    return spec;
}

inline OrderingSpec parse(std::string_view text) { return to_ordering(parse_expression(text)); }

/// Deterministic text form of the canonical ordering; parse() of the result
/// gives back canonicalize(spec).
inline std::string print_canonical(const OrderingSpec& spec)
{
    const OrderingSpec canon = canonicalize(spec);
    std::string out;
    const auto mass = [](const Rational& e) { return "m^(" + e.str() + ")"; };
    bool first = true;
    for (const auto& b : canon.terms()) {
        Rational c = b.weight / Rational(2);
        if (first) {
            first = false;
        } else {
            out += c.sign() < 0 ? " - " : " + ";
            c = abs(c);
        }
        out += c.str() + " *";
        if (!b.alpha.is_zero())
            out += " " + mass(b.alpha);
        out += " p";
        if (!b.beta.is_zero())
            out += " " + mass(b.beta);
        out += " p";
        if (!b.gamma.is_zero())
            out += " " + mass(b.gamma);
    }
    return out;
}

} // namespace keo
