#pragma once

// High-precision reference values for M(a,b,z) and U(a,b+1,z) at desk-scale
// parameters. Used only to validate the asymptotic expansions; performance
// is a non-goal.
//
// oracle_M sums the defining power series (all terms positive for positive
// arguments, so no cancellation). oracle_U has two routes:
//   route A (b < a):  double-exponential quadrature of the Laplace integral
//                     U(a,b+1,z) = z^{-b}/Gamma(a-b) Int_0^inf e^{-z t}
//                     t^{a-b-1} (1+t)^{-a} dt, split at t = 1 with t -> 1/t
//                     on the tail so both pieces live on (0,1).
//   route B (b >= a): the standard connection formula expressing U through
//                     two M series. Integer b sits on a pole of the formula
//                     and is perturbed by 10^{-P/2}; the perturbation is
//                     recorded in the result so callers can widen
//                     tolerances accordingly.

#include <cmath>
#include <string>

#include "kummer/bigreal.hpp"
#include "kummer/error.hpp"

namespace kummer {

struct OracleResult {
    BigReal value;
    double log_value;         ///< ln|value| rounded to double
    unsigned precision;       ///< requested decimal digits P
    std::string route;        ///< "series", "quadrature" or "connection"
    double b_perturbation;    ///< nonzero when an integer b was shifted
    double error_bound_log10; ///< claimed relative error, as log10
};

namespace detail {

// Kummer series sum_(n>=0) (A)_n/(B)_n z^n/n! at `digits` working digits.
// Robust against the sign-flipping, spiking terms that appear when A or B
// is negative (route B): terms are only declared converged past the spike
// region and against the largest magnitude seen.
inline BigReal kummer_m_series(const BigReal& A, const BigReal& B,
                               const BigReal& Z, unsigned digits) {
    const double a_d = A.to_double();
    const double b_d = B.to_double();
    const double z_d = Z.to_double();
    const long n_min =
        10 + static_cast<long>(std::ceil(std::max(
                 {2.0 * z_d, -a_d, -b_d, z_d * std::max(1.0, a_d / b_d)})));
    const BigReal stop_tol =
        exp(BigReal(-2.302585092994046 * (digits + 5.0), digits));

    BigReal term(1.0, digits);
    BigReal sum(1.0, digits);
    BigReal scale(1.0, digits);
    for (long n = 0; n < 200000; ++n) {
        const double nd = static_cast<double>(n);
        term *= (A + nd) / (B + nd) * Z / (nd + 1.0);
        if (!term.is_finite())
            throw convergence_error("oracle: M series hit a pole of (b)_n");
        sum += term;
        const BigReal mag = abs(term);
        if (mag > scale)
            scale = mag;
        if (n > n_min && mag < stop_tol * scale)
            return sum;
    }
    throw convergence_error("oracle: M series did not converge");
}

// tanh-sinh quadrature of f over (0,1); f is evaluated through its log
// integrand callback, log_f(x, lnx) -> BigReal exponent, so endpoint decay
// never overflows. Levels double the nodes; cap 12.
template <typename LogF>
inline BigReal tanh_sinh_01(LogF&& log_f, unsigned digits, unsigned P) {
    const BigReal pi = BigReal::pi(digits);
    const double tau_max =
        std::log((digits + 12.0) * 2.302585092994046 * 4.0 / 3.141592653589793) +
        0.7;
    const BigReal tol = exp(BigReal(-2.302585092994046 * (P + 8.0), digits));
    const BigReal cut = exp(BigReal(-2.302585092994046 * (digits + 8.0), digits));

    const auto node_value = [&](double tau) -> BigReal {
        const BigReal tb(tau, digits);
        const BigReal two_y = pi * sinh(tb); // 2y = pi sinh(tau)
        // x = 1/(1+e^{-2y}), ln x without cancellation on either side
        BigReal lnx(0.0, digits);
        if (tau >= 0.0)
            lnx = -log1p(exp(-two_y));
        else
            lnx = two_y - log1p(exp(two_y));
        const BigReal x = exp(lnx);
        // weight = (pi/4) cosh(tau) / cosh^2(y)
        const BigReal ch = cosh(two_y * 0.5);
        const BigReal w = pi * 0.25 * cosh(tb) / (ch * ch);
        const BigReal lf = log_f(x, lnx);
        if (!lf.is_finite()) // integrand underflowed to zero
            return BigReal(0.0, digits);
        return w * exp(lf);
    };

    const auto row_sum = [&](double h, bool odd_only,
                             const BigReal& ref) -> BigReal {
        BigReal acc(0.0, digits);
        for (int side = 0; side < 2; ++side) {
            int miss = 0;
            const double sgn = side == 0 ? 1.0 : -1.0;
            for (long j = 1;; ++j) {
                if (odd_only && j % 2 == 0)
                    continue;
                const double tau = sgn * static_cast<double>(j) * h;
                if (std::fabs(tau) > tau_max)
                    break;
                const BigReal v = node_value(tau);
                acc += v;
                if (abs(v) < cut * (abs(ref) + abs(acc) + 1e-300)) {
                    if (++miss >= 3)
                        break;
                } else {
                    miss = 0;
                }
            }
        }
        return acc;
    };

    double h = 1.0;
    BigReal integral = node_value(0.0);
    integral += row_sum(h, false, integral);
    integral *= BigReal(h, digits);
    for (int level = 1; level <= 12; ++level) {
        h *= 0.5;
        BigReal refined = integral * 0.5;
        refined += row_sum(h, true, integral) * BigReal(h, digits);
        const BigReal diff = abs(refined - integral);
        integral = refined;
        if (level >= 3 && diff <= tol * abs(integral))
            return integral;
    }
    throw convergence_error("oracle: tanh-sinh quadrature did not converge");
}

// Route A at full generality: only a - b > 0 and z > 0 are required, so
// the Kummer-relation self-check can use it at negative second argument.
inline BigReal u_quadrature(double a, double b, double z, unsigned P) {
    if (!(a - b > 0.0))
        throw domain_error("oracle: quadrature route requires b < a");
    const unsigned digits = P + 15;
    const BigReal ab(a, digits), bb(b, digits), zb(z, digits);
    const BigReal lambda = ab - bb;

    // piece on (0,1): exp(-z x + (lambda-1) ln x - a ln(1+x))
    const auto log_f1 = [&](const BigReal& x, const BigReal& lnx) {
        return (lambda - 1.0) * lnx - ab * log1p(x) - zb * x;
    };
    // tail t in (1,inf) mapped by t = 1/x:
    // exp(-z/x + (b-1) ln x - a ln(1+x))
    const auto log_f2 = [&](const BigReal& x, const BigReal& lnx) {
        return (bb - 1.0) * lnx - ab * log1p(x) - zb / x;
    };

    const BigReal integral = tanh_sinh_01(log_f1, digits, P) +
                             tanh_sinh_01(log_f2, digits, P);
    return exp(-bb * log(zb)) / tgamma(lambda) * integral;
}

struct ConnectionValue {
    BigReal value;
    double perturbation;
};

// Route B: U(a,b+1,z) = Gamma(-b)/Gamma(a-b) M(a,b+1,z)
//                     + Gamma(b)/Gamma(a) z^{-b} M(a-b,1-b,z).
inline ConnectionValue u_connection(double a, double b, double z, unsigned P) {
    const unsigned digits = 2 * P + 30;
    const BigReal ab(a, digits), zb(z, digits);
    BigReal beff(b, digits);
    double pert = 0.0;
    if (b == std::round(b)) {
        const BigReal shift =
            exp(BigReal(-2.302585092994046 * (P / 2), digits));
        beff += shift;
        pert = shift.to_double();
    }

    BigReal term1(0.0, digits);
    const BigReal r = ab - beff; // argument of the reciprocal gamma
    if (!(r.is_integer() && r.sign() <= 0)) {
        term1 = tgamma(-beff) / tgamma(r) *
                kummer_m_series(ab, beff + 1.0, zb, digits);
    } // else 1/Gamma at a nonpositive integer pole: the term vanishes

    const BigReal term2 = tgamma(beff) / tgamma(ab) * exp(-beff * log(zb)) *
                          kummer_m_series(ab - beff, 1.0 - beff, zb, digits);

    const BigReal total = term1 + term2;
    BigReal big = abs(term1);
    if (abs(term2) > big)
        big = abs(term2);
    const BigReal alarm =
        exp(BigReal(-2.302585092994046 * (P - 15.0), digits));
    if (!big.is_zero() && abs(total) < alarm * big)
        throw convergence_error(
            "oracle: connection terms cancel beyond P-15 digits");
    return ConnectionValue{total, pert};
}

} // namespace detail

/// M(a,b,z) by its defining power series; relative error <= 10^{1-P}.
inline OracleResult oracle_M(double a, double b, double z, unsigned P = 60) {
    if (!(a > 0.0 && b > 0.0 && z > 0.0))
        throw domain_error("oracle_M: requires a, b, z > 0");
    if (P < 30)
        throw domain_error("oracle_M: precision must be >= 30 digits");
    const unsigned digits = P + 10;
    BigReal v = detail::kummer_m_series(BigReal(a, digits), BigReal(b, digits),
                                        BigReal(z, digits), digits);
    OracleResult res{v, log(abs(v)).to_double(), P, "series", 0.0,
                     1.0 - static_cast<double>(P)};
    return res;
}

/// U(a, b+1, z) — note the convention: the second Kummer argument is b+1.
/// Route A (quadrature) for b < a with error <= 10^{5-P}; route B
/// (connection formula) for b >= a with error <= 10^{10-P}, degraded to
/// about 10^{-P/2} when an integer b had to be perturbed (reported).
inline OracleResult oracle_U(double a, double b, double z, unsigned P = 60) {
    if (!(a > 0.0 && b > 0.0 && z > 0.0))
        throw domain_error("oracle_U: requires a, b, z > 0");
    if (P < 30)
        throw domain_error("oracle_U: precision must be >= 30 digits");
    if (b < a) {
        BigReal v = detail::u_quadrature(a, b, z, P);
        return OracleResult{v, log(abs(v)).to_double(), P, "quadrature", 0.0,
                            5.0 - static_cast<double>(P)};
    }
    auto conn = detail::u_connection(a, b, z, P);
    double bound = 10.0 - static_cast<double>(P);
    if (conn.perturbation != 0.0)
        bound = std::max(bound, 2.0 - static_cast<double>(P) / 2.0);
    return OracleResult{conn.value, log(abs(conn.value)).to_double(), P,
                        "connection", conn.perturbation, bound};
}

} // namespace kummer
