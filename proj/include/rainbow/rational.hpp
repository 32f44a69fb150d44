#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace rainbow {

/// Exact rational used for every density and threshold comparison.
/// Compare for equality against Rational(k), never a bare integer: the mixed
/// operator== of Boost 1.74 recurses without end for 64-bit rationals.
using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r)
{
    if (r.denominator() == 1) {
        return std::to_string(r.numerator());
    }
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double to_double(const Rational& r)
{
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Parses "p/q", an integer, or a finite decimal such as "0.25" (converted exactly).
inline Rational parse_rational(std::string_view text)
{
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    };
    if (text.empty()) {
        return fail();
    }
    auto parse_int = [&](std::string_view s) -> std::int64_t {
        if (s.empty()) {
            fail();
        }
        std::size_t pos = 0;
        bool neg = false;
        if (s[0] == '-' || s[0] == '+') {
            neg = s[0] == '-';
            pos = 1;
        }
        if (pos == s.size()) {
            fail();
        }
        std::int64_t value = 0;
        for (; pos < s.size(); ++pos) {
            if (s[pos] < '0' || s[pos] > '9') {
                fail();
            }
            if (value > (INT64_MAX - 9) / 10) {
                fail();
            }
            value = value * 10 + (s[pos] - '0');
        }
        return neg ? -value : value;
    };

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto den = parse_int(text.substr(slash + 1));
        if (den == 0) {
            fail();
        }
        return Rational(parse_int(text.substr(0, slash)), den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        auto whole = text.substr(0, dot);
        auto frac = text.substr(dot + 1);
        if (frac.size() > 15 || frac.empty()) {
            fail();
        }
        bool neg = !whole.empty() && whole[0] == '-';
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) {
            scale *= 10;
        }
        std::int64_t w = (whole.empty() || whole == "-" || whole == "+") ? 0 : parse_int(whole);
        std::int64_t f = parse_int(frac);
        if (f < 0) {
            fail();
        }
        Rational r(std::abs(w) * scale + f, scale);
        return neg ? -r : r;
    }
    return Rational(parse_int(text));
}

/// Largest rational with the given denominator that does not exceed x.
inline Rational floor_rational(double x, std::int64_t denominator = 1'000'000)
{
    if (!std::isfinite(x)) {
        throw std::invalid_argument("floor_rational of a non-finite value");
    }
    return Rational(static_cast<std::int64_t>(std::floor(x * static_cast<double>(denominator) * (1.0 - 1e-12))),
                    denominator);
}

inline std::int64_t floor_int(const Rational& r)
{
    auto q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) {
        --q;
    }
    return q;
}

} // namespace rainbow
