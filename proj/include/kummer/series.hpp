#pragma once

// Truncated power-series arithmetic and the local inversion of the
// saddle-to-saddle transformation phi(t) - phi(t0) = psi(s) - psi(s0).
// Everything here works on plain coefficient vectors c[0..M] in powers of
// u = s - s0 and is shared by the mapping and coefficient modules.

#include <cmath>
#include <vector>

#include "kummer/error.hpp"
#include "kummer/regimes.hpp"

namespace kummer::detail {

using Poly = std::vector<double>; // c[0..M]

inline Poly poly_mul(const Poly& a, const Poly& b, int M) {
    Poly out(static_cast<std::size_t>(M) + 1, 0.0);
    for (int i = 0; i <= M && i < static_cast<int>(a.size()); ++i) {
        if (a[i] == 0.0)
            continue;
        const int jmax = std::min(M - i, static_cast<int>(b.size()) - 1);
        for (int j = 0; j <= jmax; ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

inline Poly poly_scale(Poly a, double c) {
    for (double& x : a)
        x *= c;
    return a;
}

// 1 / (a0 + a1 u + ...) with a0 != 0.
inline Poly poly_recip(const Poly& a, int M) {
    Poly out(static_cast<std::size_t>(M) + 1, 0.0);
    out[0] = 1.0 / a[0];
    for (int n = 1; n <= M; ++n) {
        double acc = 0.0;
        for (int k = 1; k <= n && k < static_cast<int>(a.size()); ++k)
            acc += a[k] * out[n - k];
        out[n] = -acc / a[0];
    }
    return out;
}

// exp of a series with zero constant term.
inline Poly poly_exp(const Poly& a, int M) {
    Poly out(static_cast<std::size_t>(M) + 1, 0.0);
    out[0] = 1.0;
    for (int n = 1; n <= M; ++n) {
        double acc = 0.0;
        for (int k = 1; k <= n && k < static_cast<int>(a.size()); ++k)
            acc += k * a[k] * out[n - k];
        out[n] = acc / n;
    }
    return out;
}

inline Poly poly_derivative(const Poly& a, int M) {
    Poly out(static_cast<std::size_t>(M) + 1, 0.0);
    for (int i = 0; i + 1 < static_cast<int>(a.size()) && i <= M; ++i)
        out[i] = (i + 1) * a[i + 1];
    return out;
}

// Taylor coefficients of the phases about their saddles, j = 0..jmax.
// psi_j = (-1)^j mu^{1-j} / j. phi_j in closed form per case:
//   b >= a cases:    ((1+mu)^j / j) (1 + (-1)^j mu^{1-j})
//   b <= a cases:    (-1)^{j+1} ((1-mu)^j / j) (1 - mu^{1-j})
// (both b <= a phases share the same expansion about their t0).
struct PhaseSeries {
    Poly phi; // phi[j], j >= 2 meaningful
    Poly psi;
};

inline PhaseSeries phase_series(const SaddleContext& ctx, int jmax) {
    PhaseSeries ps;
    ps.phi.assign(static_cast<std::size_t>(jmax) + 1, 0.0);
    ps.psi.assign(static_cast<std::size_t>(jmax) + 1, 0.0);
    const double mu = ctx.mu;
    if (!(mu > 0.0))
        throw domain_error("phase_series: requires mu > 0");
    const bool ge = ctx.regime.order == Order::b_ge_a;
    const double base = ge ? (1.0 + mu) : (1.0 - mu);
    double base_pow = base * base;          // base^j
    double mu_pow = 1.0 / mu;               // mu^{1-j}
    for (int j = 2; j <= jmax; ++j) {
        const double sj = (j % 2 == 0) ? 1.0 : -1.0;
        ps.psi[j] = sj * mu_pow / j;
        if (ge)
            ps.phi[j] = (base_pow / j) * (1.0 + sj * mu_pow);
        else
            ps.phi[j] = -sj * (base_pow / j) * (1.0 - mu_pow);
        base_pow *= base;
        mu_pow /= mu;
    }
    return ps;
}

// Coefficients d_k of t(s) = t0 + sum_{k>=1} d_k u^k solving the
// transformation with d1 = +sqrt(psi_2/phi_2) (the sign condition
// sign(t - t0) = sign(s - s0)). Solved triangularly: the coefficient of
// u^n in sum_j phi_j (Delta t)^j involves d_{n-1} only through the term
// 2 phi_2 d_1 d_{n-1}.
//
// Relative accuracy of d_k degrades like eps * mu^{-(k-1)} as mu -> 0
// (the phase coefficients blow up individually while d_k stay bounded);
// callers needing high orders at tiny mu must compensate.
inline std::vector<double> saddle_series(const SaddleContext& ctx, int M) {
    const PhaseSeries ps = phase_series(ctx, M + 1);
    std::vector<double> d(static_cast<std::size_t>(M) + 1, 0.0);
    d[1] = std::sqrt(ps.psi[2] / ps.phi[2]);
    Poly dt(static_cast<std::size_t>(M) + 2, 0.0);
    dt[1] = d[1];
    for (int n = 3; n <= M + 1; ++n) {
        // composite sum with d_{n-1} still zero
        Poly comp(static_cast<std::size_t>(n) + 1, 0.0);
        Poly power = poly_mul(dt, dt, n);
        for (int j = 2; j <= n; ++j) {
            if (j > 2)
                power = poly_mul(power, dt, n);
            for (int i = 0; i <= n; ++i)
                comp[i] += ps.phi[j] * power[i];
        }
        d[n - 1] = (ps.psi[n] - comp[n]) / (2.0 * ps.phi[2] * d[1]);
        dt[n - 1] = d[n - 1];
    }
    return d;
}

} // namespace kummer::detail
