#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "kummer/coeffs.hpp"
#include "kummer/mapping.hpp"

using namespace kummer;

namespace {

SaddleContext ctx_for(Func fn, Order order, double mu) {
    const double a = 10.0;
    const double b = (order == Order::b_ge_a) ? a * (1.0 + mu) : a * (1.0 - mu);
    return classify(ParameterSet(a, b, 1.0), fn);
}

struct Case {
    Func fn;
    Order order;
};
const Case cases[] = {{Func::M, Order::b_ge_a},
                      {Func::M, Order::b_le_a},
                      {Func::U, Order::b_ge_a},
                      {Func::U, Order::b_le_a}};

} // namespace

// Finite-difference oracle for the low Taylor orders, run against the
// independent amplitude() path (Newton map) before the series pipeline
// is trusted anywhere else.
TEST_CASE("taylor_amplitude a_0, a_1, a_2 against finite differences") {
    for (const Case& c : cases) {
        for (double mu : {0.2, 0.5}) {
            for (double z : {0.7, 2.0}) {
                const auto ctx = ctx_for(c.fn, c.order, mu);
                const auto a_m = taylor_amplitude(ctx, z, 4);
                const double s0 = ctx.s0;
                const double h = 1e-4 * s0;
                const double f0 = amplitude(ctx, z, s0);
                const double fp = amplitude(ctx, z, s0 + h);
                const double fm = amplitude(ctx, z, s0 - h);
                CHECK(a_m[0] == Catch::Approx(f0).epsilon(1e-12));
                const double a1_fd = (fp - fm) / (2.0 * h);
                CHECK(a_m[1] == Catch::Approx(a1_fd).epsilon(1e-6));
                const double a2_fd = (fp - 2.0 * f0 + fm) / (h * h) / 2.0;
                CHECK(a_m[2] == Catch::Approx(a2_fd).epsilon(1e-4));
            }
        }
    }
}

TEST_CASE("a_0 equals the printed closed forms") {
    const auto ctx = ctx_for(Func::M, Order::b_ge_a, 1.0 / 3.0);
    CHECK(taylor_amplitude(ctx, 1.0, 2)[0] ==
          Catch::Approx(std::exp(-0.25) * std::sqrt(4.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("push_recursion reproduces the printed relations") {
    // f1 = mu a2, f2 = mu (2 a3 + 3 mu a4),
    // f3 = mu (6 a4 + 20 mu a5 + 15 mu^2 a6),
    // f4 = mu (24 a5 + 130 mu a6 + 210 mu^2 a7 + 105 mu^3 a8)
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> a(9);
        for (double& x : a)
            x = dist(rng);
        const double mu = 0.05 + 0.9 * (dist(rng) + 1.0) / 2.0;
        const auto f = push_recursion(a, mu, 4);
        CHECK(f[0] == a[0]);
        CHECK(std::fabs(f[1] - mu * a[2]) <= 1e-13);
        CHECK(std::fabs(f[2] - mu * (2.0 * a[3] + 3.0 * mu * a[4])) <= 1e-13);
        CHECK(std::fabs(f[3] - mu * (6.0 * a[4] + 20.0 * mu * a[5] +
                                     15.0 * mu * mu * a[6])) <= 1e-13);
        CHECK(std::fabs(f[4] - mu * (24.0 * a[5] + 130.0 * mu * a[6] +
                                     210.0 * mu * mu * a[7] +
                                     105.0 * mu * mu * mu * a[8])) <= 1e-12);
    }
}

TEST_CASE("push_recursion synthetic inputs") {
    SECTION("a_m = delta_{m,2}: f = (0, mu, 0, 0)") {
        const std::vector<double> a = {0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0};
        const auto f = push_recursion(a, 0.37, 3);
        CHECK(f[0] == 0.0);
        CHECK(f[1] == 0.37);
        CHECK(f[2] == 0.0);
        CHECK(f[3] == 0.0);
    }
    SECTION("constant amplitude: f_n = 0 for n >= 1") {
        const std::vector<double> a = {2.5, 0.0, 0.0, 0.0, 0.0};
        const auto f = push_recursion(a, 0.8, 2);
        CHECK(f[0] == 2.5);
        CHECK(f[1] == 0.0);
        CHECK(f[2] == 0.0);
    }
    SECTION("order overflow") {
        const std::vector<double> a = {1.0, 2.0, 3.0};
        CHECK_THROWS_AS(push_recursion(a, 0.5, 2), domain_error);
        CHECK_NOTHROW(push_recursion(a, 0.5, 1));
    }
}

TEST_CASE("closed_form fixture values") {
    // direct substitutions into the printed formulas
    CHECK(closed_form({Func::M, Order::b_ge_a}, 1, 1.0, 1.0) ==
          Catch::Approx(5.0 / 48.0).epsilon(1e-14));
    CHECK(closed_form({Func::M, Order::b_le_a}, 1, 0.5, 1.0) ==
          Catch::Approx(0.5 * (0.25 + 6.0) / (12.0 * 0.125)).epsilon(1e-14));
    // z = 0, mu = 0.5: f~1 = mu (mu+1)^2 / (12 (mu+1)^3) = 1/36
    CHECK(closed_form({Func::M, Order::b_ge_a}, 1, 0.5, 0.0) ==
          Catch::Approx(1.0 / 36.0).epsilon(1e-14));
    for (const Case& c : cases) {
        CHECK(closed_form({c.fn, c.order}, 0, 0.3, 1.0) == 1.0);
        CHECK(closed_form({c.fn, c.order}, 1, 0.0, 2.0) == 0.0);
        CHECK(closed_form({c.fn, c.order}, 2, 0.0, 2.0) == 0.0);
        CHECK_THROWS_AS(closed_form({c.fn, c.order}, 3, 0.3, 1.0),
                        domain_error);
    }
}

TEST_CASE("pipeline reproduces the printed coefficients (n = 1, 2)") {
    for (const Case& c : cases) {
        std::vector<double> mus = {0.1, 0.3, 0.6};
        if (c.order == Order::b_ge_a) {
            mus.push_back(1.0);
            mus.push_back(2.0);
        }
        for (double mu : mus) {
            for (double z : {0.5, 1.0, 3.0}) {
                const auto ctx = ctx_for(c.fn, c.order, mu);
                const auto tab = make_coefficient_table(ctx, z, 6, 3);
                for (int n = 1; n <= 2; ++n) {
                    const double printed =
                        closed_form({c.fn, c.order}, n, mu, z);
                    CHECK(tab.normalized[n] ==
                          Catch::Approx(printed).epsilon(1e-9));
                }
            }
        }
    }
}

TEST_CASE("sign symmetry between paired expansions") {
    // formal mu -> -mu in the printed closed forms:
    //   ftilde_n(-mu) = (-1)^n gtilde_n(mu), ptilde_n(-mu) = (-1)^n qtilde_n(mu)
    for (double mu = 0.05; mu < 0.9; mu += 0.05) {
        for (double z : {0.5, 1.0, 3.0}) {
            for (int n = 1; n <= 2; ++n) {
                const double sign = (n % 2 == 0) ? 1.0 : -1.0;
                const double f_neg =
                    closed_form({Func::M, Order::b_ge_a}, n, -mu, z);
                const double g = closed_form({Func::M, Order::b_le_a}, n, mu, z);
                CHECK(f_neg == Catch::Approx(sign * g).epsilon(1e-12));
                const double p_neg =
                    closed_form({Func::U, Order::b_ge_a}, n, -mu, z);
                const double q = closed_form({Func::U, Order::b_le_a}, n, mu, z);
                CHECK(p_neg == Catch::Approx(sign * q).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("taylor_amplitude guards") {
    const auto ctx = ctx_for(Func::M, Order::b_ge_a, 0.3);
    CHECK_THROWS_AS(taylor_amplitude(ctx, 1.0, 13), domain_error);
    const auto zero = classify(ParameterSet(4.0, 4.0, 1.0), Func::M);
    CHECK_THROWS_AS(taylor_amplitude(zero, 1.0, 4), domain_error);
}
