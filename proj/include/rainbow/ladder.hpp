#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "rainbow/rational.hpp"

namespace rainbow {

enum class Mode { paper, practical };

inline const char* to_string(Mode m) { return m == Mode::paper ? "paper" : "practical"; }

/// Derived quantities for a run on n vertices with t branch vertices.
/// All logarithms are natural.
///
///   lambda = eps / (2 ln n)
///   ell    = ceil(4 ln n / lambda) = ceil(8 ln^2 n / eps)
///   L      = C(t, 2) (4 ell + 4) + t
///   K      = ceil(e^sqrt(ln n))
///   M      = L + ceil(12 K (ell + 2) / eps)
///
/// In practical mode `ell` is replaced by reach_len - 1 where reach_len is the
/// per-segment path cap; `paper_ell` always keeps the formula value.
struct ParamLadder {
    Mode mode = Mode::paper;
    double log_n = 0;
    std::uint64_t n = 0; // 0 when built from log_n alone
    unsigned t = 2;
    Rational eps{1, 40};
    double lambda = 0;
    Rational lambda_rational; // largest value <= lambda on a 1e-6 grid
    std::int64_t paper_ell = 0;
    std::int64_t ell = 0;
    std::int64_t reach_len = 0; // ell + 1
    std::int64_t L = 0;
    std::int64_t K = 0;
    std::int64_t M = 0;
    double c = 0;
    double d_threshold = 0; // e^(c sqrt(ln n))

    /// Per-pair path length bound, 4 ell + 4.
    std::int64_t path_bound() const { return 4 * ell + 4; }
};

namespace detail {

inline std::int64_t checked(__int128 x)
{
    if (x > INT64_MAX || x < 0) {
        throw std::overflow_error("ladder quantity exceeds 64 bits");
    }
    return static_cast<std::int64_t>(x);
}

inline std::int64_t binom2(unsigned t) { return static_cast<std::int64_t>(t) * (t - 1) / 2; }

inline void fill_from_ell(ParamLadder& p)
{
    const auto q = p.eps.denominator(), num = p.eps.numerator();
    p.reach_len = p.ell + 1;
    p.L = checked(static_cast<__int128>(binom2(p.t)) * (4 * p.ell + 4) + p.t);
    // ceil(12 K (ell + 2) q / num)
    const __int128 top = static_cast<__int128>(12) * p.K * (p.ell + 2) * q;
    p.M = checked(p.L + (top + num - 1) / num);
}

inline double log_min_c(const Rational& eps) { return 2.0 * std::log(12.0 / to_double(eps)); }

} // namespace detail

/// 2 ln(12 / eps): the smallest admissible c regardless of n_0.
inline double min_c(const Rational& eps) { return detail::log_min_c(eps); }

/// Paper-mode ladder from ln n directly; lets symbolic checks use n far beyond 64 bits.
inline ParamLadder ladder_from_log(double log_n, unsigned t, const Rational& eps, double c)
{
    if (t < 2) {
        throw std::invalid_argument("t must be at least 2");
    }
    if (eps <= 0 || eps > Rational(1, 40)) {
        throw std::invalid_argument("paper mode needs eps in (0, 1/40]");
    }
    if (!(log_n > 0)) {
        throw std::invalid_argument("n must exceed 1");
    }
    ParamLadder p;
    p.mode = Mode::paper;
    p.log_n = log_n;
    p.t = t;
    p.eps = eps;
    p.c = c;
    p.lambda = to_double(eps) / (2.0 * log_n);
    p.lambda_rational = floor_rational(p.lambda);
    const double ell = std::ceil(8.0 * log_n * log_n * static_cast<double>(eps.denominator()) /
                                 static_cast<double>(eps.numerator()));
    p.paper_ell = detail::checked(static_cast<__int128>(ell));
    p.ell = p.paper_ell;
    p.K = detail::checked(static_cast<__int128>(std::ceil(std::exp(std::sqrt(log_n)))));
    detail::fill_from_ell(p);
    p.d_threshold = std::exp(c * std::sqrt(log_n));
    return p;
}

struct ExplicitN0 {
    double log_n0 = 0; // ln n_0
    double c = 0;
};

namespace detail {

// (c/2) sqrt(y) >= ln(48 (ell + 2M) / (eps lambda)) and 4 ell + 4 <= 1300 y^2, at y = ln n.
inline bool paper_inequalities_hold(double y, unsigned t, double eps, double c)
{
    const double lambda = eps / (2.0 * y);
    const double ell = std::ceil(8.0 * y * y / eps);
    const double L = static_cast<double>(binom2(t)) * (4 * ell + 4) + t;
    const double K = std::ceil(std::exp(std::sqrt(y)));
    const double M = L + 12.0 * K * (ell + 2) / eps;
    const double rhs = std::log(48.0) + std::log(ell + 2 * M) - std::log(eps) - std::log(lambda);
    return 0.5 * c * std::sqrt(y) >= rhs && 4 * ell + 4 <= 1300.0 * y * y;
}

inline constexpr double n0_search_ceiling = 1e5; // ln n beyond this is not scanned

inline bool holds_from(double x, unsigned t, double eps, double cmin)
{
    const double c = std::max(std::sqrt(x), cmin);
    for (double y = x; y <= n0_search_ceiling; y *= 1.01) {
        if (!paper_inequalities_hold(y, t, eps, c)) {
            return false;
        }
    }
    return true;
}

} // namespace detail

/// Smallest ln n_0 (to bisection precision) such that, with
/// c = max(sqrt(ln n_0), 2 ln(12/eps)), the parameter inequalities
/// hold on a geometric grid of ln n from ln n_0 up to 1e5.
inline ExplicitN0 explicit_n0(unsigned t, const Rational& eps)
{
    const double e = to_double(eps);
    const double cmin = detail::log_min_c(eps);
    double lo = 0.5, hi = 0.5;
    while (!detail::holds_from(hi, t, e, cmin)) {
        lo = hi;
        hi *= 1.25;
        if (hi > detail::n0_search_ceiling) {
            throw std::runtime_error("no n_0 found below ln n = 1e5");
        }
    }
    for (int i = 0; i < 60 && hi - lo > 1e-9 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (detail::holds_from(mid, t, e, cmin) ? hi : lo) = mid;
    }
    return {hi, std::max(std::sqrt(hi), cmin)};
}

/// Paper-mode ladder. When c is omitted it is max(sqrt(ln n_0), 2 ln(12/eps))
/// with n_0 from explicit_n0.
inline ParamLadder compute_ladder(std::uint64_t n, unsigned t, const Rational& eps,
                                  std::optional<double> c = std::nullopt)
{
    if (n < t || t < 2) {
        throw std::invalid_argument("ladder needs n >= t >= 2");
    }
    if (eps <= 0 || eps > Rational(1, 40)) {
        throw std::invalid_argument("paper mode needs eps in (0, 1/40]");
    }
    const double cc = c ? *c : explicit_n0(t, eps).c;
    auto p = ladder_from_log(std::log(static_cast<double>(n)), t, eps, cc);
    p.n = n;
    return p;
}

/// Practical ladder: same formulas, but each reach segment is capped at
/// `max_len` (default min(paper ell + 1, n - 1)) and L, M follow that cap.
inline ParamLadder practical_ladder(std::uint64_t n, unsigned t, const Rational& eps,
                                    std::optional<std::int64_t> max_len = std::nullopt)
{
    if (n < t || t < 2) {
        throw std::invalid_argument("ladder needs n >= t >= 2");
    }
    if (eps <= 0 || eps >= 1) {
        throw std::invalid_argument("eps must lie in (0, 1)");
    }
    if (max_len && *max_len < 1) {
        throw std::invalid_argument("max-len must be at least 1");
    }
    ParamLadder p;
    p.mode = Mode::practical;
    p.n = n;
    p.t = t;
    p.eps = eps;
    p.log_n = std::log(static_cast<double>(n));
    p.lambda = to_double(eps) / (2.0 * p.log_n);
    p.lambda_rational = floor_rational(p.lambda);
    p.paper_ell = detail::checked(static_cast<__int128>(
        std::ceil(8.0 * p.log_n * p.log_n / to_double(eps))));
    const auto cap = max_len ? *max_len
                             : std::min<std::int64_t>(p.paper_ell + 1, static_cast<std::int64_t>(n) - 1);
    p.ell = std::max<std::int64_t>(cap, 1) - 1;
    p.K = detail::checked(static_cast<__int128>(std::ceil(std::exp(std::sqrt(p.log_n)))));
    detail::fill_from_ell(p);
    p.c = min_c(eps);
    p.d_threshold = std::exp(p.c * std::sqrt(p.log_n));
    return p;
}

/// Paper-mode 4 ell + 4 from ln n alone. Unlike the full ladder it stays
/// within 64 bits far beyond the point where K and M overflow.
inline std::int64_t paper_path_bound(double log_n, const Rational& eps)
{
    const double ell = std::ceil(8.0 * log_n * log_n * static_cast<double>(eps.denominator()) /
                                 static_cast<double>(eps.numerator()));
    return detail::checked(4 * static_cast<__int128>(ell) + 4);
}

/// Smallest value of ln^2 n from which 4 ell + 4 <= 1300 ln^2 n holds for
/// every larger n: since 4 ceil(8 y^2 / eps) + 4 <= (32 / eps) y^2 + 8, it
/// suffices that (1300 - 32 / eps) y^2 >= 8. Needs eps > 32/1300.
inline Rational path_constant_threshold(const Rational& eps)
{
    const Rational slope = Rational(1300) - Rational(32) / eps;
    if (slope <= 0) {
        throw std::invalid_argument("1300 ln^2 n bound unreachable for eps = " + to_string(eps));
    }
    return Rational(8) / slope;
}

/// 4 ell + 4 <= 1300 ln^2 n for the paper-mode ladder.
inline bool path_length_within_1300(const ParamLadder& p)
{
    return static_cast<double>(p.path_bound()) <= 1300.0 * p.log_n * p.log_n;
}

} // namespace rainbow
