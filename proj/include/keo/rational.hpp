#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "keo/errors.hpp"

namespace keo {

/// Exact fraction over 64-bit integers.
///
/// Intermediate products are carried in 128 bits and reduced before narrowing;
/// a result that still does not fit raises ErrorCode::Overflow rather than
/// wrapping. The denominator is always positive and coprime to the numerator.
class Rational {
public:
    using int_type = std::int64_t;

    constexpr Rational() noexcept = default;
    constexpr Rational(int_type n) noexcept : num_(n) {} // NOLINT(google-explicit-constructor)
    Rational(int_type n, int_type d) { *this = make(n, d); }

    constexpr int_type num() const noexcept { return num_; }
    constexpr int_type den() const noexcept { return den_; }

    constexpr bool is_integer() const noexcept { return den_ == 1; }
    constexpr bool is_zero() const noexcept { return num_ == 0; }
    constexpr int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

    double to_double() const noexcept
    {
        return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
    }
    long double to_long_double() const noexcept
    {
        return static_cast<long double>(num_) / static_cast<long double>(den_);
    }

    /// "p/q", or "p" when q == 1.
    std::string str() const
    {
        if (den_ == 1)
            return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Accepts `[-]int[/int]` with optional surrounding blanks; decimals are rejected.
    static Rational parse(std::string_view text)
    {
        auto trim = [](std::string_view s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
                s.remove_prefix(1);
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
                s.remove_suffix(1);
            return s;
        };
        const std::string_view s = trim(text);
        const auto bad = [&] {
            return Error(ErrorCode::InvalidNumber,
                         "not an exact rational (expected p or p/q): '" + std::string(text) + "'");
        };
        if (s.empty())
            throw bad();
        const auto slash = s.find('/');
        const auto read = [&](std::string_view part, bool allow_sign) -> int_type {
            if (part.empty() || (!allow_sign && part.front() == '-') || part.front() == '+')
                throw bad();
            int_type v = 0;
            auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
            if (ec == std::errc::result_out_of_range)
                throw Error(ErrorCode::Overflow, "integer out of range: '" + std::string(part) + "'");
            if (ec != std::errc() || ptr != part.data() + part.size())
                throw bad();
            return v;
        };
        if (slash == std::string_view::npos)
            return Rational(read(s, true));
        return Rational(read(s.substr(0, slash), true), read(s.substr(slash + 1), false));
    }

    Rational operator-() const
    {
        if (num_ == std::numeric_limits<int_type>::min())
            throw Error(ErrorCode::Overflow, "rational negation overflow");
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b)
    {
        if (a.den_ == b.den_)
            return from_wide(wide(a.num_) + wide(b.num_), wide(a.den_));
        return from_wide(wide(a.num_) * b.den_ + wide(b.num_) * a.den_, wide(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b)
    {
        if (a.den_ == b.den_)
            return from_wide(wide(a.num_) - wide(b.num_), wide(a.den_));
        return from_wide(wide(a.num_) * b.den_ - wide(b.num_) * a.den_, wide(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b)
    {
        // Cross-reduce first so the 128-bit product stays small.
        const int_type g1 = std::gcd(a.num_, b.den_);
        const int_type g2 = std::gcd(b.num_, a.den_);
        const wide n = wide(a.num_ / (g1 ? g1 : 1)) * (b.num_ / (g2 ? g2 : 1));
        const wide d = wide(a.den_ / (g2 ? g2 : 1)) * (b.den_ / (g1 ? g1 : 1));
        return from_wide(n, d);
    }
    friend Rational operator/(const Rational& a, const Rational& b)
    {
        if (b.num_ == 0)
            throw Error(ErrorCode::DivisionByZero, "rational division by zero");
        return from_wide(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept
    {
        return wide(a.num_) * b.den_ <=> wide(b.num_) * a.den_;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    using wide = __int128;

    static Rational make(wide n, wide d)
    {
        if (d == 0)
            throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
        return from_wide(n, d);
    }

    static wide gcd_wide(wide a, wide b) noexcept
    {
        if (a < 0)
            a = -a;
        if (b < 0)
            b = -b;
        while (b != 0) {
            const wide t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rational from_wide(wide n, wide d)
    {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const wide g = gcd_wide(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr wide lo = std::numeric_limits<int_type>::min() + wide(1);
        constexpr wide hi = std::numeric_limits<int_type>::max();
        if (n < lo || n > hi || d > hi)
            throw Error(ErrorCode::Overflow, "rational arithmetic overflow");
        Rational r;
        r.num_ = static_cast<int_type>(n);
        r.den_ = static_cast<int_type>(d == 0 ? 1 : d);
        return r;
    }

    int_type num_ = 0;
    int_type den_ = 1;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational square(const Rational& r) { return r * r; }

} // namespace keo

template <>
struct std::hash<keo::Rational> {
    std::size_t operator()(const keo::Rational& r) const noexcept
    {
        return std::hash<std::int64_t>{}(r.num()) * 31u ^ std::hash<std::int64_t>{}(r.den());
    }
};
