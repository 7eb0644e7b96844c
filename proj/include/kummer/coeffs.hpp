#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "kummer/error.hpp"
#include "kummer/regimes.hpp"
#include "kummer/series.hpp"

namespace kummer {

/// Maximum Taylor order of the amplitude expansion. Beyond this the
/// coefficients are not reliable in double precision.
inline constexpr int max_taylor_order = 12;

/// Taylor coefficients a_0..a_M of the case amplitude about s = s0,
/// obtained by matching powers in the transformation: expand both phases
/// about their saddles, solve the series t(s) = t0 + sum d_k (s-s0)^k
/// term by term (d1 = +sqrt(psi''(s0)/phi''(t0))), then compose the
/// amplitude from the t-series. Requires mu > 0 strictly.
inline std::vector<double> taylor_amplitude(const SaddleContext& ctx,
                                            double z, int M) {
    if (M < 0 || M > max_taylor_order)
        throw domain_error("taylor_amplitude: order overflow (M > 12)");
    if (!(ctx.mu > 0.0))
        throw domain_error("taylor_amplitude: requires mu > 0");

    using detail::Poly;
    // d up to order M+1: the u^M coefficient of dt/ds needs d_{M+1}
    const auto d = detail::saddle_series(ctx, M + 1);
    Poly dt(static_cast<std::size_t>(M) + 1, 0.0);
    Poly dt_full(static_cast<std::size_t>(M) + 2, 0.0);
    for (int k = 1; k <= M + 1; ++k) {
        dt_full[k] = d[k];
        if (k <= M)
            dt[k] = d[k];
    }
    const Poly dtds = detail::poly_derivative(dt_full, M);

    Poly s_poly(static_cast<std::size_t>(M) + 1, 0.0);
    s_poly[0] = ctx.mu;
    if (M >= 1)
        s_poly[1] = 1.0;

    // 1/(c0 + sgn * Delta t)
    const auto lin_recip = [&](double c0, double sgn) {
        Poly base = dt;
        for (double& x : base)
            x *= sgn;
        base[0] = c0;
        return detail::poly_recip(base, M);
    };
    // e^{zsgn * z * t} = e^{zsgn * z * t0} * exp(zsgn * z * Delta t)
    const auto exp_part = [&](double zsgn) {
        Poly arg = dt;
        for (double& x : arg)
            x *= zsgn * z;
        return detail::poly_scale(detail::poly_exp(arg, M),
                                  std::exp(zsgn * z * ctx.t0));
    };

    const double t0 = ctx.t0;
    Poly amp;
    if (ctx.regime.function == Func::M) {
        if (ctx.regime.order == Order::b_ge_a) {
            // f(s) = e^{-z t} s / (t (1 - t)) dt/ds
            Poly r = detail::poly_mul(lin_recip(t0, 1.0),
                                      lin_recip(1.0 - t0, -1.0), M);
            amp = detail::poly_mul(exp_part(-1.0), s_poly, M);
            amp = detail::poly_mul(amp, r, M);
        } else {
            // g(s) = s e^{z t} / (t (t - 1)) dt/ds
            Poly r = detail::poly_mul(lin_recip(t0, 1.0),
                                      lin_recip(t0 - 1.0, 1.0), M);
            amp = detail::poly_mul(exp_part(1.0), s_poly, M);
            amp = detail::poly_mul(amp, r, M);
        }
    } else {
        // p(s) = e^{z t} (s/t) dt/ds   or   q(s) = e^{-z t} (s/t) dt/ds
        const double zsgn = (ctx.regime.order == Order::b_ge_a) ? 1.0 : -1.0;
        amp = detail::poly_mul(exp_part(zsgn), s_poly, M);
        amp = detail::poly_mul(amp, lin_recip(t0, 1.0), M);
    }
    amp = detail::poly_mul(amp, dtds, M);
    amp.resize(static_cast<std::size_t>(M) + 1);
    return amp;
}

/// Integration-by-parts recursion on full coefficient arrays:
///   c_m^{(n+1)} = m c_{m+1}^{(n)} + mu (m+1) c_{m+2}^{(n)}
/// with a_m = c_m^{(0)}; returns f_n = c_0^{(n)} for n = 0..N. Each level
/// consumes two usable Taylor orders, hence N <= floor((len-1)/2).
inline std::vector<double> push_recursion(std::span<const double> a_m,
                                          double mu, int N) {
    if (a_m.empty())
        throw domain_error("push_recursion: empty coefficient array");
    if (N < 0 || 2 * N > static_cast<int>(a_m.size()) - 1)
        throw domain_error("push_recursion: order overflow (N > M/2)");
    std::vector<double> c(a_m.begin(), a_m.end());
    std::vector<double> f;
    f.reserve(static_cast<std::size_t>(N) + 1);
    f.push_back(c[0]);
    for (int n = 1; n <= N; ++n) {
        std::vector<double> next(c.size() >= 2 ? c.size() - 2 : 0, 0.0);
        for (std::size_t m = 0; m < next.size(); ++m)
            next[m] = static_cast<double>(m) * c[m + 1] +
                      mu * static_cast<double>(m + 1) * c[m + 2];
        c = std::move(next);
        f.push_back(c.empty() ? 0.0 : c[0]);
    }
    return f;
}

/// The printed closed-form normalized coefficients for n <= 2 (transcribed
/// verbatim per case); n = 0 returns 1. Fixtures for the numeric pipeline.
inline double closed_form(Regime regime, int n, double mu, double z) {
    if (n < 0 || n > 2)
        throw domain_error("closed_form: printed coefficients cover n <= 2");
    if (n == 0)
        return 1.0;
    const double z2 = z * z;
    if (regime.function == Func::M) {
        if (regime.order == Order::b_ge_a) {
            const double w = 1.0 + mu;
            if (n == 1)
                return mu * (w * w + 6.0 * z2) / (12.0 * w * w * w);
            return mu *
                   (mu * std::pow(w, 4) + 12.0 * (mu - 12.0) * w * w * z2 +
                    96.0 * (mu * mu - 1.0) * z2 * z + 36.0 * mu * z2 * z2) /
                   (288.0 * std::pow(w, 6));
        }
        const double w = 1.0 - mu;
        if (n == 1)
            return mu * (w * w + 6.0 * z2) / (12.0 * w * w * w);
        return mu *
               (mu * std::pow(w, 4) + 12.0 * (mu + 12.0) * w * w * z2 +
                96.0 * (1.0 - mu * mu) * z2 * z + 36.0 * mu * z2 * z2) /
               (288.0 * std::pow(w, 6));
    }
    if (regime.order == Order::b_ge_a) {
        const double w = 1.0 + mu;
        if (n == 1)
            return mu / (12.0 * w * w * w) *
                   (w * w + 6.0 * z * (z - 2.0 - 2.0 * mu));
        return mu / (288.0 * std::pow(w, 6)) *
               (mu * std::pow(w, 4) - 24.0 * (mu - 12.0) * w * w * w * z +
                12.0 * (25.0 * mu - 36.0) * w * w * z2 -
                48.0 * (5.0 * mu - 2.0) * w * z2 * z + 36.0 * mu * z2 * z2);
    }
    const double w = 1.0 - mu;
    if (n == 1)
        return mu / (12.0 * w * w * w) *
               (w * w + 6.0 * z * (z - 2.0 + 2.0 * mu));
    return mu / (288.0 * std::pow(w, 6)) *
           (mu * std::pow(w, 4) - 24.0 * (mu + 12.0) * w * w * w * z +
            12.0 * (25.0 * mu + 36.0) * w * w * z2 -
            48.0 * (5.0 * mu + 2.0) * w * z2 * z + 36.0 * mu * z2 * z2);
}

/// Taylor coefficients plus recursion output for one (regime, mu, z).
struct CoefficientTable {
    Regime regime;
    double mu;
    double z;
    std::vector<double> a_m;        ///< amplitude Taylor coefficients
    std::vector<double> f_n;        ///< recursion output, f_0 = a_0
    std::vector<double> normalized; ///< f_n / f_0
};

inline CoefficientTable make_coefficient_table(const SaddleContext& ctx,
                                               double z, int M, int N) {
    CoefficientTable tab;
    tab.regime = ctx.regime;
    tab.mu = ctx.mu;
    tab.z = z;
    tab.a_m = taylor_amplitude(ctx, z, M);
    tab.f_n = push_recursion(tab.a_m, ctx.mu, N);
    tab.normalized.reserve(tab.f_n.size());
    for (double f : tab.f_n)
        tab.normalized.push_back(f / tab.f_n[0]);
    return tab;
}

} // namespace kummer
