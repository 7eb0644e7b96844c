#pragma once

#include <algorithm>
#include <cmath>

#include "kummer/error.hpp"
#include "kummer/regimes.hpp"
#include "kummer/scalar.hpp"
#include "kummer/series.hpp"

namespace kummer {

/// One point of the map s -> t(s): sign(t - t0) = sign(s - s0) and
/// dt/ds = psi'(s) / phi'(t) > 0 (limit value at the saddle).
struct MapPoint {
    double s;
    double t;
    double dtds;
};

namespace detail {

// phi(t) - phi(t0) in cancellation-safe form for each case.
inline double phi_minus_phi0(const SaddleContext& ctx, double t) {
    const double mu = ctx.mu;
    const double t0 = ctx.t0;
    if (ctx.regime.order == Order::b_ge_a)
        return -std::log((1.0 - t) / (1.0 - t0)) - mu * std::log(t / t0);
    if (ctx.regime.function == Func::M)
        return std::log(t / t0) - mu * std::log((t - 1.0) / (t0 - 1.0));
    return std::log((1.0 + t) / (1.0 + t0)) - mu * std::log(t / t0);
}

// psi(s) - psi(s0) = s - mu - mu ln(s/mu).
inline double psi_minus_psi0(const SaddleContext& ctx, double s) {
    const double mu = ctx.mu;
    return s - mu - mu * std::log(s / mu);
}

// Interval of t mapped by s on the given side of the saddle, open ends.
inline void side_bracket(const SaddleContext& ctx, bool upper, double& lo,
                         double& hi, double guess) {
    const double t0 = ctx.t0;
    if (upper) {
        lo = t0;
        if (ctx.regime.order == Order::b_ge_a) {
            hi = 1.0; // phi -> +inf as t -> 1
        } else {
            hi = std::max(2.0 * t0 + 1.0, guess * 2.0 + 1.0);
        }
    } else {
        hi = t0;
        lo = (ctx.regime.function == Func::M &&
              ctx.regime.order == Order::b_le_a)
                 ? 1.0
                 : 0.0;
    }
}

} // namespace detail

/// Invert phi(t) - phi(t0) = psi(s) - psi(s0) for t at the given s > 0.
///
/// Safeguarded Newton from the tangent guess t0 + d1 (s - s0), with
/// bisection fallback inside a bracketing interval, iterated until the
/// t-step reaches rounding level (dt/ds = psi'/phi' is a 0/0 form near
/// the saddle, so t must be machine-accurate there for the quotient to
/// hold precision). Within |s - s0| <= 1e-2 s0 an order-8 local series
/// supplies both t and dt/ds directly.
///
/// For mu = 0 (only reachable on the b >= a side) the transformation
/// degenerates to -ln(1-t) = s, taken as the defining limit map.
inline MapPoint map_t_of_s(const SaddleContext& ctx, double s) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw domain_error("map_t_of_s: requires finite s > 0");
    const double mu = ctx.mu;

    if (mu == 0.0) {
        if (ctx.regime.order != Order::b_ge_a)
            throw domain_error("map_t_of_s: mu = 0 only valid for b >= a");
        const double t = -std::expm1(-s);
        return MapPoint{s, t, std::exp(-s)};
    }

    const double u = s - ctx.s0;
    if (std::fabs(u) <= 1e-2 * ctx.s0) {
        const auto d = detail::saddle_series(ctx, 8);
        double horner_t = 0.0, horner_d = 0.0;
        for (int k = 8; k >= 1; --k) {
            horner_t = horner_t * u + d[k];
            horner_d = horner_d * u + static_cast<double>(k) * d[k];
        }
        return MapPoint{s, ctx.t0 + u * horner_t, horner_d};
    }

    const double target = detail::psi_minus_psi0(ctx, s);
    const auto d = detail::saddle_series(ctx, 2);
    double t = ctx.t0 + d[1] * u;
    const bool upper = u > 0.0;
    double lo, hi;
    detail::side_bracket(ctx, upper, lo, hi, t);

    // grow the open upper end until it encloses the root
    if (upper && ctx.regime.order == Order::b_le_a) {
        int grow = 0;
        while (detail::phi_minus_phi0(ctx, hi) < target) {
            hi *= 2.0;
            if (++grow > 600)
                throw convergence_error("map_t_of_s: bracket growth failed");
        }
    }
    if (!(t > lo && t < hi))
        t = 0.5 * (lo + hi);

    bool settled = false;
    for (int it = 0; it < 200 && !settled; ++it) {
        const double f = detail::phi_minus_phi0(ctx, t) - target;
        // maintain the bracket; phi - phi(t0) is monotone on each side
        if ((f > 0.0) == upper)
            hi = t;
        else
            lo = t;
        const double fp = phi_prime(ctx, t);
        double next = t - f / fp;
        if (!(next > lo && next < hi) || !std::isfinite(next))
            next = 0.5 * (lo + hi);
        settled = std::fabs(next - t) <=
                  4.0 * std::numeric_limits<double>::epsilon() *
                      (std::fabs(t) + ctx.t0);
        t = next;
    }
    const double res = detail::phi_minus_phi0(ctx, t) - target;
    if (!settled || std::fabs(res) > 1e-12 * (1.0 + std::fabs(target)))
        throw convergence_error("map_t_of_s: Newton/bisection did not converge");
    return MapPoint{s, t, psi_prime(ctx, s) / phi_prime(ctx, t)};
}

/// Closed-form s(t) for the b >= a transformation via Lambert W
/// (sigma e^sigma = -(t/mu)(1-t)^{1/mu} e^{A/mu}, s = -mu sigma). The
/// branch follows the sign condition: principal for t < t0, lower for
/// t > t0, both meeting at sigma = -1 <-> t = t0.
inline double map_s_of_t_lambert(const SaddleContext& ctx, double t) {
    if (ctx.regime.order != Order::b_ge_a)
        throw domain_error("map_s_of_t_lambert: b >= a transformation only");
    const double mu = ctx.mu;
    if (!(mu > 0.0))
        throw domain_error("map_s_of_t_lambert: requires mu > 0");
    if (!(t > 0.0 && t < 1.0))
        throw domain_error("map_s_of_t_lambert: requires 0 < t < 1");
    // v = -(t/mu) (1-t)^{1/mu} e^{A/mu}, assembled in log form
    const double logmag =
        std::log(t / mu) + std::log1p(-t) / mu + ctx.A / mu;
    const double v = -std::exp(logmag);
    const WBranch br = (t < ctx.t0) ? WBranch::principal : WBranch::lower;
    const double sigma = (t == ctx.t0) ? -1.0 : lambert_w(br, v);
    return -mu * sigma;
}

/// t(s) through the Lambert closed form: bisection on the monotone
/// s(t) of map_s_of_t_lambert. Independent of the phi/psi evaluations
/// used by the Newton backend; used to cross-validate it.
inline MapPoint map_t_of_s_lambert(const SaddleContext& ctx, double s) {
    if (!(s > 0.0))
        throw domain_error("map_t_of_s_lambert: requires s > 0");
    if (s == ctx.s0)
        return MapPoint{s, ctx.t0, detail::saddle_series(ctx, 1)[1]};
    const bool upper = s > ctx.s0;
    double lo = upper ? ctx.t0 : 0.0;
    double hi = upper ? 1.0 : ctx.t0;
    // s(t) is increasing in t on (0, 1)
    for (int it = 0; it < 500; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        const double sm = map_s_of_t_lambert(ctx, mid);
        if (sm < s)
            lo = mid;
        else
            hi = mid;
    }
    const double t = 0.5 * (lo + hi);
    return MapPoint{s, t, psi_prime(ctx, s) / phi_prime(ctx, t)};
}

/// Transformed amplitude of the case integral at s:
///   M, b >= a: f(s) = e^{-z t} s / (t (1-t)) dt/ds
///   M, b <= a: g(s) = s e^{z t} / (t (t-1)) dt/ds
///   U, b >= a: p(s) = e^{z t} (s/t) dt/ds
///   U, b <= a: q(s) = e^{-z t} (s/t) dt/ds
/// At s = s0 these reduce to the closed forms f0, g0, p0, q0.
inline double amplitude(const SaddleContext& ctx, double z, double s) {
    const MapPoint mp = map_t_of_s(ctx, s);
    const double t = mp.t;
    if (ctx.regime.function == Func::M) {
        if (ctx.regime.order == Order::b_ge_a)
            return std::exp(-z * t) * s / (t * (1.0 - t)) * mp.dtds;
        return s * std::exp(z * t) / (t * (t - 1.0)) * mp.dtds;
    }
    if (ctx.regime.order == Order::b_ge_a)
        return std::exp(z * t) * (s / t) * mp.dtds;
    return std::exp(-z * t) * (s / t) * mp.dtds;
}

} // namespace kummer
