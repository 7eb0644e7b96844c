#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "kummer/coeffs.hpp"
#include "kummer/error.hpp"
#include "kummer/oracle.hpp"
#include "kummer/regimes.hpp"
#include "kummer/scalar.hpp"

namespace kummer {

/// Truncation and safety knobs. terms is the number of summed terms N
/// (coefficient orders 0..N-1); the error estimate is the magnitude of
/// the first omitted term times safety.
struct EvalOptions {
    int terms = 3;
    double safety = 10.0;
    double mu_cap = 10.0;
};

inline constexpr int max_terms = 6;

struct EvalResult {
    double value;     ///< exp(log_value) when representable (else 0/inf)
    double log_value; ///< always finite for valid inputs
    int terms_used;
    std::vector<double> term_magnitudes;
    double error_estimate; ///< |first omitted term| * safety, relative
    Regime regime;
};

namespace detail {

// Normalized coefficients ftilde_0..ftilde_N (N+1 entries: the last one
// is the first omitted term of an N-term sum). Printed closed forms for
// n <= 2, the numeric pipeline beyond. Below mu = 1e-3 the pipeline
// orders are linearized in mu about 1e-3 (every f_n, n >= 1, carries an
// exact factor mu, while the series solve loses digits like mu^{2-k}).
inline std::vector<double> normalized_coeffs(Regime regime, double mu,
                                             double z, int N) {
    std::vector<double> c(static_cast<std::size_t>(N) + 1, 0.0);
    c[0] = 1.0;
    for (int n = 1; n <= std::min(N, 2); ++n)
        c[n] = closed_form(regime, n, mu, z);
    if (N >= 3) {
        constexpr double mu_floor = 1e-3;
        const double mu_eff = std::max(mu, mu_floor);
        const double rescale = mu / mu_eff; // 1 unless mu < mu_floor
        const SaddleContext ctx = make_context(regime, mu_eff);
        const CoefficientTable tab =
            make_coefficient_table(ctx, z, 2 * N, N);
        for (int n = 3; n <= N; ++n)
            c[n] = tab.normalized[n] * rescale;
    }
    return c;
}

struct Assembled {
    double log_front;
    double sum;
    std::vector<double> magnitudes;
    double first_omitted;
};

inline Assembled assemble(const SaddleContext& ctx, double a, double z,
                          int N, double alt_sign) {
    const auto c = normalized_coeffs(ctx.regime, ctx.mu, z, N);
    Assembled out;
    out.sum = 0.0;
    out.magnitudes.reserve(static_cast<std::size_t>(N));
    double apow = 1.0;
    double sgn = 1.0;
    for (int n = 0; n < N; ++n) {
        const double term = c[n] / apow;
        out.sum += sgn * term;
        out.magnitudes.push_back(std::fabs(term));
        apow *= a;
        sgn *= alt_sign;
    }
    out.first_omitted = std::fabs(c[N]) / apow;
    return out;
}

inline void validate_terms(int N) {
    if (N < 1 || N > max_terms)
        throw domain_error("evaluate: terms must be between 1 and 6");
}

} // namespace detail

/// Evaluate M(a,b,z) by the uniform large-a expansion of the matching
/// case:
///   b >= a: e^{z/(1+mu)} Gamma*(b)/Gamma*(a) sum ftilde_n / a^n
///   b <= a: e^{z/(1-mu)} Gamma*(b)/Gamma*(a) sum (-1)^n gtilde_n / a^n
/// At a = b both collapse to the exact special value e^z.
inline EvalResult evaluate_M(const ParameterSet& p,
                             const EvalOptions& opt = {}) {
    detail::validate_terms(opt.terms);
    const SaddleContext ctx = classify(p, Func::M, opt.mu_cap);
    const double mu = ctx.mu;
    const bool ge = ctx.regime.order == Order::b_ge_a;

    const double log_front = p.z / (ge ? 1.0 + mu : 1.0 - mu) +
                             std::log(gamma_star(p.b) / gamma_star(p.a));

    EvalResult res;
    res.regime = ctx.regime;
    if (mu == 0.0) {
        res.log_value = log_front; // = z exactly; the Gamma* ratio is 1
        res.value = std::exp(res.log_value);
        res.terms_used = 1;
        res.term_magnitudes = {1.0};
        res.error_estimate = 0.0;
        return res;
    }

    const auto asm_ = detail::assemble(ctx, p.a, p.z, opt.terms,
                                       ge ? 1.0 : -1.0);
    res.log_value = log_front + std::log(std::fabs(asm_.sum));
    if (!std::isfinite(res.log_value))
        throw convergence_error("evaluate_M: expansion sum degenerated");
    res.value = (asm_.sum < 0.0 ? -1.0 : 1.0) * std::exp(res.log_value);
    res.terms_used = opt.terms;
    res.term_magnitudes = asm_.magnitudes;
    res.error_estimate = opt.safety * asm_.first_omitted;
    return res;
}

inline EvalResult evaluate_M(const ParameterSet& p, int terms) {
    EvalOptions opt;
    opt.terms = terms;
    return evaluate_M(p, opt);
}

/// Evaluate U(a, b+1, z) — second Kummer argument b+1 by convention:
///   z^{-b} a^{-a} b^b e^{a-b} p0(mu) sum (-1)^n ptilde_n / a^n  (b >= a)
///   z^{-b} a^{-a} b^b e^{a-b} q0(mu) sum      qtilde_n / a^n    (b <= a)
/// The front factor is assembled in log space; a^{-a} b^b overflows
/// doubles well inside the supported parameter range.
inline EvalResult evaluate_U(const ParameterSet& p,
                             const EvalOptions& opt = {}) {
    detail::validate_terms(opt.terms);
    const SaddleContext ctx = classify(p, Func::U, opt.mu_cap);
    const double mu = ctx.mu;
    const bool ge = ctx.regime.order == Order::b_ge_a;

    // grouping the b ln b - a ln a pair keeps the a = b case exact
    double log_front = (p.b * std::log(p.b) - p.a * std::log(p.a)) +
                       (p.a - p.b) - p.b * std::log(p.z);
    // ln p0 = z t0 - ln sqrt(1+mu); ln q0 = -z t0 - ln sqrt(1-mu)
    log_front += (ge ? p.z * ctx.t0 : -p.z * ctx.t0) -
                 0.5 * (ge ? std::log1p(mu) : std::log1p(-mu));

    EvalResult res;
    res.regime = ctx.regime;
    if (mu == 0.0) {
        res.log_value = log_front; // = -a ln z exactly
        res.value = std::exp(res.log_value);
        res.terms_used = 1;
        res.term_magnitudes = {1.0};
        res.error_estimate = 0.0;
        return res;
    }

    const auto asm_ = detail::assemble(ctx, p.a, p.z, opt.terms,
                                       ge ? -1.0 : 1.0);
    res.log_value = log_front + std::log(std::fabs(asm_.sum));
    if (!std::isfinite(res.log_value))
        throw convergence_error("evaluate_U: expansion sum degenerated");
    res.value = (asm_.sum < 0.0 ? -1.0 : 1.0) * std::exp(res.log_value);
    res.terms_used = opt.terms;
    res.term_magnitudes = asm_.magnitudes;
    res.error_estimate = opt.safety * asm_.first_omitted;
    return res;
}

inline EvalResult evaluate_U(const ParameterSet& p, int terms) {
    EvalOptions opt;
    opt.terms = terms;
    return evaluate_U(p, opt);
}

/// Relative error of the N-term expansion against the oracle for
/// N = 1..n_max, compared in log space so huge U values stay exact.
inline std::vector<std::pair<int, double>>
convergence_profile(const ParameterSet& p, Func fn, int n_max,
                    unsigned precision = 60) {
    const OracleResult ref = (fn == Func::M)
                                 ? oracle_M(p.a, p.b, p.z, precision)
                                 : oracle_U(p.a, p.b, p.z, precision);
    std::vector<std::pair<int, double>> profile;
    profile.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        EvalOptions opt;
        opt.terms = n;
        const EvalResult r =
            (fn == Func::M) ? evaluate_M(p, opt) : evaluate_U(p, opt);
        profile.emplace_back(
            n, std::fabs(std::expm1(r.log_value - ref.log_value)));
    }
    return profile;
}

} // namespace kummer
