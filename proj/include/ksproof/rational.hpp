#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ksproof {

/// Exact fraction with a positive denominator, always in lowest terms.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t num) : num_(num) {}
    Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_integer() const noexcept { return den_ == 1; }

    friend Rational operator+(const Rational & a, const Rational & b)
    {
        return from_wide(wide(a.num_) * b.den_ + wide(b.num_) * a.den_, wide(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational & a, const Rational & b)
    {
        return from_wide(wide(a.num_) * b.den_ - wide(b.num_) * a.den_, wide(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational & a, const Rational & b)
    {
        return from_wide(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational & a, const Rational & b)
    {
        if (b.num_ == 0)
            throw std::domain_error("Rational: division by zero");
        return from_wide(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
    }
    Rational operator-() const { return from_wide(-wide(num_), den_); }

    Rational & operator+=(const Rational & o) { return *this = *this + o; }
    Rational & operator-=(const Rational & o) { return *this = *this - o; }
    Rational & operator*=(const Rational & o) { return *this = *this * o; }

    friend bool operator==(const Rational &, const Rational &) = default;
    friend std::strong_ordering operator<=>(const Rational & a, const Rational & b)
    {
        return wide(a.num_) * b.den_ <=> wide(b.num_) * a.den_;
    }

    /// "p" for integers, "p/q" otherwise.
    std::string str() const
    {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "p" or "p/q".
    static Rational parse(const std::string & text)
    {
        auto slash = text.find('/');
        std::size_t used = 0;
        if (slash == std::string::npos) {
            auto n = std::stoll(text, &used);
            if (used != text.size())
                throw std::invalid_argument("Rational: trailing characters in '" + text + "'");
            return Rational(n);
        }
        auto n = std::stoll(text.substr(0, slash), &used);
        if (used != slash)
            throw std::invalid_argument("Rational: bad numerator in '" + text + "'");
        auto rest = text.substr(slash + 1);
        auto d = std::stoll(rest, &used);
        if (used != rest.size())
            throw std::invalid_argument("Rational: bad denominator in '" + text + "'");
        return Rational(n, d);
    }

    friend std::ostream & operator<<(std::ostream & os, const Rational & r) { return os << r.str(); }

private:
    __extension__ typedef __int128 Wide;
    static Wide wide(std::int64_t v) { return static_cast<Wide>(v); }

    static Rational from_wide(Wide num, Wide den)
    {
        if (den == 0)
            throw std::domain_error("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        Wide a = num < 0 ? -num : num, b = den;
        while (b != 0) {
            Wide t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            num /= a;
            den /= a;
        }
        constexpr Wide lim = static_cast<Wide>(INT64_MAX);
        if (num > lim || num < -lim || den > lim)
            throw std::overflow_error("Rational: value exceeds 64-bit range");
        Rational r;
        r.num_ = static_cast<std::int64_t>(num);
        r.den_ = static_cast<std::int64_t>(den);
        return r;
    }

    void assign(std::int64_t num, std::int64_t den) { *this = from_wide(num, den); }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace ksproof
