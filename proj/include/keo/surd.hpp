#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "keo/errors.hpp"
#include "keo/rational.hpp"

namespace keo {

namespace detail {

struct SquareSplit {
    std::int64_t root; // largest k with k*k | n
    std::int64_t free; // n / (k*k), squarefree
};

inline std::int64_t isqrt(std::int64_t n)
{
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<__int128>(r) * r > n)
        --r;
    while (static_cast<__int128>(r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

/// n = root^2 * free for n > 0.
///
/// Trial division up to 2.1e6 leaves a cofactor with no small prime; since
/// (2.1e6)^3 exceeds the int64 range that cofactor is 1, a prime, a product of
/// two distinct primes, or a prime square, so a perfect-square test finishes.
inline SquareSplit split_square(std::int64_t n)
{
    if (n <= 0)
        throw Error(ErrorCode::InvalidNumber, "split_square requires a positive integer");
    std::int64_t root = 1;
    std::int64_t free = 1;
    constexpr std::int64_t limit = 2'100'000;
    for (std::int64_t p = 2; p <= limit && p * p <= n; p += (p == 2 ? 1 : 2)) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        for (int i = 0; i + 1 < e; i += 2)
            root *= p;
        if (e % 2 == 1)
            free *= p;
    }
    if (n > 1) {
        const std::int64_t r = isqrt(n);
        if (r * r == n)
            root *= r;
        else
            free *= n;
    }
    return {root, free};
}

} // namespace detail

/// Exact number a + b*sqrt(d) with rational a, b and squarefree integer d >= 1.
///
/// d == 1 is folded into a, so b == 0 exactly when the value is rational.
/// Binary operations require matching radicands unless one side is rational.
class QuadraticSurd {
public:
    QuadraticSurd() = default;
    QuadraticSurd(const Rational& a) : a_(a) {} // NOLINT(google-explicit-constructor)
    QuadraticSurd(Rational::int_type a) : a_(a) {} // NOLINT(google-explicit-constructor)
    QuadraticSurd(const Rational& a, const Rational& b, std::int64_t radicand) : a_(a), b_(b), d_(radicand)
    {
        if (d_ < 1)
            throw Error(ErrorCode::InvalidNumber, "surd radicand must be positive");
        const auto split = detail::split_square(d_);
        b_ *= Rational(split.root);
        d_ = split.free;
        normalize();
    }

    /// Exact principal square root of a non-negative rational.
    static QuadraticSurd sqrt(const Rational& r)
    {
        if (r.sign() < 0)
            throw Error(ErrorCode::IrrationalSquareRoot, "square root of negative value " + r.str());
        if (r.is_zero())
            return {};
        // sqrt(p/q) = sqrt(p*q)/q, with p and q split separately so nothing overflows.
        const auto p = detail::split_square(r.num());
        const auto q = detail::split_square(r.den());
        // p.free and q.free are coprime, so their product is squarefree.
        const auto radicand = static_cast<__int128>(p.free) * q.free;
        if (radicand > std::numeric_limits<std::int64_t>::max())
            throw Error(ErrorCode::Overflow, "surd radicand overflow");
        const Rational coeff = Rational(p.root) / Rational(q.root) / Rational(q.free);
        QuadraticSurd s;
        s.b_ = coeff;
        s.d_ = static_cast<std::int64_t>(radicand);
        s.normalize();
        return s;
    }

    const Rational& rational_part() const noexcept { return a_; }
    const Rational& surd_coefficient() const noexcept { return b_; }
    std::int64_t radicand() const noexcept { return d_; }

    bool is_rational() const noexcept { return b_.is_zero(); }
    std::optional<Rational> as_rational() const
    {
        if (!is_rational())
            return std::nullopt;
        return a_;
    }

    double to_double() const noexcept
    {
        return static_cast<double>(a_.to_long_double()
                                   + b_.to_long_double() * std::sqrt(static_cast<long double>(d_)));
    }

    /// Exact sign.
    int sign() const
    {
        const int sa = a_.sign();
        const int sb = b_.sign();
        if (sb == 0)
            return sa;
        if (sa == 0 || sa == sb)
            return sb;
        // Opposite signs: compare a^2 with b^2 d.
        const auto cmp = square(a_) <=> square(b_) * Rational(d_);
        if (cmp == 0)
            return 0;
        return cmp > 0 ? sa : sb;
    }

    std::string str() const
    {
        if (is_rational())
            return a_.str();
        std::string out;
        if (!a_.is_zero())
            out = a_.str() + (b_.sign() > 0 ? "+" : "-");
        else if (b_.sign() < 0)
            out = "-";
        const Rational mag = abs(b_);
        if (mag != Rational(1))
            out += mag.str() + "*";
        out += "sqrt(" + std::to_string(d_) + ")";
        return out;
    }

    QuadraticSurd operator-() const
    {
        QuadraticSurd r = *this;
        r.a_ = -a_;
        r.b_ = -b_;
        return r;
    }

    friend QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y)
    {
        const std::int64_t d = common_radicand(x, y);
        return assemble(x.a_ + y.a_, x.b_ + y.b_, d);
    }
    friend QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y) { return x + (-y); }
    friend QuadraticSurd operator*(const QuadraticSurd& x, const QuadraticSurd& y)
    {
        const std::int64_t d = common_radicand(x, y);
        return assemble(x.a_ * y.a_ + x.b_ * y.b_ * Rational(d), x.a_ * y.b_ + x.b_ * y.a_, d);
    }
    /// Division is supported only by rationals, which is all the ordering algebra needs.
    friend QuadraticSurd operator/(const QuadraticSurd& x, const QuadraticSurd& y)
    {
        if (!y.is_rational())
            throw Error(ErrorCode::InvalidNumber, "division by an irrational surd is not supported");
        return assemble(x.a_ / y.a_, x.b_ / y.a_, x.d_);
    }

    QuadraticSurd& operator+=(const QuadraticSurd& o) { return *this = *this + o; }
    QuadraticSurd& operator-=(const QuadraticSurd& o) { return *this = *this - o; }
    QuadraticSurd& operator*=(const QuadraticSurd& o) { return *this = *this * o; }

    friend bool operator==(const QuadraticSurd& x, const QuadraticSurd& y) noexcept
    {
        return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_.is_zero() || x.d_ == y.d_);
    }
    friend std::strong_ordering operator<=>(const QuadraticSurd& x, const QuadraticSurd& y)
    {
        const int s = (x - y).sign();
        return s < 0 ? std::strong_ordering::less
                     : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const QuadraticSurd& s) { return os << s.str(); }

private:
    static std::int64_t common_radicand(const QuadraticSurd& x, const QuadraticSurd& y)
    {
        if (x.is_rational())
            return y.d_;
        if (y.is_rational() || x.d_ == y.d_)
            return x.d_;
        throw Error(ErrorCode::InvalidNumber, "mixing surds with different radicands: sqrt("
                                                  + std::to_string(x.d_) + ") and sqrt("
                                                  + std::to_string(y.d_) + ")");
    }

    static QuadraticSurd assemble(const Rational& a, const Rational& b, std::int64_t d)
    {
        QuadraticSurd r;
        r.a_ = a;
        r.b_ = b;
        r.d_ = d;
        r.normalize();
        return r;
    }

    void normalize()
    {
        if (d_ == 1) {
            a_ += b_;
            b_ = Rational(0);
        }
        if (b_.is_zero())
            d_ = 1;
    }

    Rational a_{};
    Rational b_{};
    std::int64_t d_ = 1;
};

} // namespace keo
