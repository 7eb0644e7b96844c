#pragma once

#include <cmath>

#include "kummer/error.hpp"

namespace kummer {

enum class Func { M, U };
enum class Order { b_ge_a, b_le_a };

struct Regime {
    Func function;
    Order order;
    friend bool operator==(const Regime&, const Regime&) = default;
};

/// Validated evaluation point (a, b, z), all strictly positive.
struct ParameterSet {
    double a;
    double b;
    double z;

    ParameterSet(double a_, double b_, double z_) : a(a_), b(b_), z(z_) {
        if (!(a > 0.0) || !std::isfinite(a) ||
            !(b > 0.0) || !std::isfinite(b) ||
            !(z > 0.0) || !std::isfinite(z))
            throw domain_error("ParameterSet: a, b, z must be finite and > 0");
    }
};

/// Saddle geometry for one of the four cases.
///
/// lambda = |b - a|, mu = lambda / a, s0 = mu always. The interior saddle
/// t0 and the constant A = phi(t0) - psi(s0) depend on the case:
///   b >= a:        t0 = mu/(1+mu),  A = (1+mu) ln(1+mu) - mu  >= 0
///   M with b <= a: t0 = 1/(1-mu),   A = -(1-mu) ln(1-mu) - mu <= 0
///   U with b <= a: t0 = mu/(1-mu),  A as in the M case
struct SaddleContext {
    Regime regime;
    double lambda;
    double mu;
    double t0;
    double s0;
    double A;
};

namespace detail {

inline SaddleContext make_context(Regime regime, double mu) {
    SaddleContext ctx;
    ctx.regime = regime;
    ctx.mu = mu;
    ctx.s0 = mu;
    ctx.lambda = 0.0; // filled by classify when built from parameters
    if (regime.order == Order::b_ge_a) {
        ctx.t0 = mu / (1.0 + mu);
        ctx.A = (1.0 + mu) * std::log1p(mu) - mu;
    } else {
        if (!(mu < 1.0))
            throw domain_error("SaddleContext: b_le_a requires mu < 1");
        ctx.t0 = (regime.function == Func::M) ? 1.0 / (1.0 - mu)
                                              : mu / (1.0 - mu);
        ctx.A = -(1.0 - mu) * std::log1p(-mu) - mu;
    }
    return ctx;
}

} // namespace detail

/// Classify (a, b) for the requested function and derive the saddle
/// geometry. a = b routes to the b_ge_a branch with mu = 0 (both branches
/// coincide there). mu above mu_cap on the b >= a side is rejected:
/// the expansions are stated for all b/a >= 1 but the coefficients grow
/// with mu, so very lopsided parameters are treated as misuse.
inline SaddleContext classify(const ParameterSet& p, Func fn,
                              double mu_cap = 10.0) {
    const Order order = (p.b >= p.a) ? Order::b_ge_a : Order::b_le_a;
    const double lambda = std::fabs(p.b - p.a);
    const double mu = lambda / p.a;
    if (order == Order::b_ge_a && mu > mu_cap)
        throw domain_error("classify: mu = (b-a)/a exceeds the configured cap");
    SaddleContext ctx = detail::make_context(Regime{fn, order}, mu);
    ctx.lambda = lambda;
    return ctx;
}

/// Phase phi(t) on the case's real integration slice.
inline double phi(const SaddleContext& ctx, double t) {
    const double mu = ctx.mu;
    if (ctx.regime.order == Order::b_ge_a) {
        if (!(t > 0.0 && t < 1.0))
            throw domain_error("phi: requires 0 < t < 1");
        return -std::log1p(-t) - mu * std::log(t);
    }
    if (ctx.regime.function == Func::M) {
        if (!(t > 1.0))
            throw domain_error("phi: requires t > 1");
        return std::log(t) - mu * std::log(t - 1.0);
    }
    if (!(t > 0.0))
        throw domain_error("phi: requires t > 0");
    return std::log1p(t) - mu * std::log(t);
}

/// Canonical phase psi(s) = s - mu ln s, shared by all cases.
inline double psi(const SaddleContext& ctx, double s) {
    if (!(s > 0.0))
        throw domain_error("psi: requires s > 0");
    return s - ctx.mu * std::log(s);
}

/// First derivatives of the phases; zero at t0 and s0 respectively.
inline double phi_prime(const SaddleContext& ctx, double t) {
    const double mu = ctx.mu;
    if (ctx.regime.order == Order::b_ge_a)
        return (t * (1.0 + mu) - mu) / (t * (1.0 - t));
    if (ctx.regime.function == Func::M)
        return ((1.0 - mu) * t - 1.0) / (t * (t - 1.0));
    return (t * (1.0 - mu) - mu) / (t * (1.0 + t));
}

inline double psi_prime(const SaddleContext& ctx, double s) {
    return (s - ctx.mu) / s;
}

/// A = phi(t0) - psi(s0) in closed form.
inline double constant_A(const SaddleContext& ctx) { return ctx.A; }

/// Radius of the steepest-descent path of the M (b <= a) contour in polar
/// coordinates, r(theta) = sin(theta/mu) / sin((1-mu) theta/mu) for
/// -mu pi <= theta <= mu pi. Diagnostic only; reproduces the loop through
/// t0 = 1/(1-mu). The theta = 0 limit is returned exactly.
inline double descent_path_radius(double mu, double theta) {
    if (!(mu > 0.0 && mu < 1.0))
        throw domain_error("descent_path_radius: requires 0 < mu < 1");
    constexpr double pi = 3.14159265358979323846;
    if (std::fabs(theta) > mu * pi * (1.0 + 1e-12))
        throw domain_error("descent_path_radius: |theta| exceeds mu*pi");
    if (theta == 0.0)
        return 1.0 / (1.0 - mu);
    return std::sin(theta / mu) / std::sin((1.0 - mu) * theta / mu);
}

} // namespace kummer
