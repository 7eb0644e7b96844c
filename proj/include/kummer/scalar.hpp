#pragma once

#include <array>
#include <cmath>
#include <limits>

#include "kummer/error.hpp"

namespace kummer {

namespace detail {

// Godfrey's Lanczos coefficients for g = 607/128, N = 15.
// Relative error of the rational part is below 1e-15 over the right
// half plane, which is more than enough for the 1e-14 contract here.
inline constexpr double lanczos_g = 607.0 / 128.0;
inline constexpr std::array<double, 15> lanczos_c = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    3.3994649984811888699e-5,
    4.6523628927048575665e-5,
    -9.8374475304879564677e-5,
    1.5808870322491248884e-4,
    -2.1026444172410488319e-4,
    2.1743961811521264320e-4,
    -1.6431810653676389022e-4,
    8.4418223983852743293e-5,
    -2.6190838401581408670e-5,
    3.6899182659531622704e-6,
};

inline double lanczos_sum(double x) {
    double s = lanczos_c[0];
    for (std::size_t k = 1; k < lanczos_c.size(); ++k)
        s += lanczos_c[k] / (x + static_cast<double>(k) - 1.0);
    return s;
}

// ln Gamma*(x) by the Stirling series sum B_{2n} / (2n(2n-1) x^{2n-1}).
// Truncated after x^{-13}; the next term is below 1e-15 for x >= 8.
inline double log_gamma_star_stirling(double x) {
    const double w = 1.0 / (x * x);
    double s = 7.0 / 1092.0;
    s = s * w - 691.0 / 360360.0;
    s = s * w + 1.0 / 1188.0;
    s = s * w - 1.0 / 1680.0;
    s = s * w + 1.0 / 1260.0;
    s = s * w - 1.0 / 360.0;
    s = s * w + 1.0 / 12.0;
    return s / x;
}

} // namespace detail

/// Natural log of the gamma function for x > 0 (Lanczos approximation).
inline double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw domain_error("log_gamma: requires finite x > 0");
    constexpr double half_log_two_pi = 0.91893853320467274178;
    const double t = x + detail::lanczos_g - 0.5;
    return (x - 0.5) * std::log(t) - t + half_log_two_pi +
           std::log(detail::lanczos_sum(x));
}

/// Scaled gamma function Gamma*(x) = e^x x^{-x} sqrt(x/(2 pi)) Gamma(x).
/// Tends to 1 as x -> infinity. For x >= 8 evaluated from its Stirling
/// series directly, so the large-x values do not suffer the cancellation
/// of forming x ln x - x + ln Gamma(x).
inline double gamma_star(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw domain_error("gamma_star: requires finite x > 0");
    if (x >= 8.0)
        return std::exp(detail::log_gamma_star_stirling(x));
    constexpr double half_log_two_pi = 0.91893853320467274178;
    return std::exp(log_gamma(x) + x - x * std::log(x) +
                    0.5 * std::log(x) - half_log_two_pi);
}

/// Real branches of the Lambert W function, w e^w = x.
enum class WBranch {
    principal, ///< W_0, w >= -1, defined for x >= -1/e
    lower      ///< W_{-1}, w <= -1, defined for -1/e <= x < 0
};

namespace detail {

// Branch-point series in p = +-sqrt(2(1 + e x)); both branches share the
// coefficients, the lower branch takes p < 0.
inline double lambert_branch_series(double p) {
    double w = -1.0 + p;
    double pk = p * p;
    w -= pk / 3.0;
    pk *= p;
    w += pk * (11.0 / 72.0);
    pk *= p;
    w -= pk * (43.0 / 540.0);
    pk *= p;
    w += pk * (769.0 / 17280.0);
    pk *= p;
    w -= pk * (221.0 / 8505.0);
    pk *= p;
    w += pk * (680863.0 / 43545600.0);
    return w;
}

inline double lambert_halley(double x, double w, bool principal) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double best_w = w;
    double best_res = std::fabs(w * std::exp(w) - x);
    bool settled = false;
    for (int it = 0; it < 100 && !settled; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double r = std::fabs(f);
        if (r < best_res) {
            best_res = r;
            best_w = w;
        }
        // rounding floor of the residual itself: cannot do better
        if (r <= 8.0 * eps * (std::fabs(w * ew) + std::fabs(x)))
            return w;
        const double denom =
            ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
        double next = w - f / denom;
        // keep iterates on the proper side of the branch split at w = -1
        if (principal && next < -1.0)
            next = 0.5 * (w - 1.0);
        if (!principal && next > -1.0)
            next = 0.5 * (w - 1.0);
        settled = std::fabs(next - w) <= 4.0 * eps * (1.0 + std::fabs(next));
        w = next;
    }
    const double r = std::fabs(w * std::exp(w) - x);
    if (r < best_res) {
        best_res = r;
        best_w = w;
    }
    // a vanishing step means w is at rounding level, the best a double
    // can represent; otherwise fall back to the residual contract
    if (settled || best_res <= 1e-14 * std::max(1.0, std::fabs(x)))
        return best_w;
    throw convergence_error("lambert_w: Halley iteration did not converge");
}

} // namespace detail

/// Lambert W on the requested real branch. Residual |w e^w - x| stays at
/// rounding level of the correctly rounded w.
inline double lambert_w(WBranch branch, double x) {
    if (!std::isfinite(x))
        throw domain_error("lambert_w: requires finite x");
    constexpr double e_const = 2.718281828459045235;
    double q = 2.0 * (1.0 + e_const * x);
    if (q < 0.0) {
        // 1 + e x cancels to rounding noise right at the branch point
        if (q > -512.0 * std::numeric_limits<double>::epsilon())
            q = 0.0;
        else
            throw domain_error("lambert_w: x below -1/e");
    }

    if (branch == WBranch::principal) {
        const double p = std::sqrt(q);
        if (q < 2e-4) // switchover at |1 + e x| < 1e-4
            return detail::lambert_branch_series(p);
        double w;
        if (x > e_const) {
            const double l1 = std::log(x);
            const double l2 = std::log(l1);
            w = l1 - l2 + l2 / l1;
        } else if (x > 0.3) {
            w = std::log1p(x) * 0.8;
        } else if (x > -0.25) {
            w = x * (1.0 - x); // series W = x - x^2 + ...
        } else {
            w = detail::lambert_branch_series(p); // p < 1 here
        }
        return detail::lambert_halley(x, w, true);
    }

    // lower branch
    if (x >= 0.0)
        throw domain_error("lambert_w: lower branch requires x < 0");
    const double p = std::sqrt(q);
    if (q < 2e-4)
        return detail::lambert_branch_series(-p);
    double w;
    if (x < -0.25) {
        w = detail::lambert_branch_series(-p);
    } else {
        const double l1 = std::log(-x);
        w = l1 - std::log(-l1);
    }
    return detail::lambert_halley(x, w, false);
}

} // namespace kummer
