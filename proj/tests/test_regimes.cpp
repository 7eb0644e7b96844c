#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "kummer/regimes.hpp"

using namespace kummer;

namespace {
constexpr double pi = 3.14159265358979323846;

// central finite difference, step tuned for ~1e-11 truncation error
double fd(double (*f)(const SaddleContext&, double), const SaddleContext& ctx,
          double x, double h) {
    return (f(ctx, x + h) - f(ctx, x - h)) / (2.0 * h);
}
} // namespace

TEST_CASE("ParameterSet validation") {
    CHECK_NOTHROW(ParameterSet(1.0, 2.0, 3.0));
    CHECK_THROWS_AS(ParameterSet(0.0, 1.0, 1.0), domain_error);
    CHECK_THROWS_AS(ParameterSet(1.0, -2.0, 1.0), domain_error);
    CHECK_THROWS_AS(ParameterSet(1.0, 1.0, 0.0), domain_error);
    CHECK_THROWS_AS(ParameterSet(1.0, 1.0, std::nan("")), domain_error);
}

TEST_CASE("classify picks the case and fills the geometry") {
    SECTION("M with b >= a") {
        const auto ctx = classify(ParameterSet(2.0, 3.0, 1.0), Func::M);
        CHECK(ctx.regime.function == Func::M);
        CHECK(ctx.regime.order == Order::b_ge_a);
        CHECK(ctx.lambda == 1.0);
        CHECK(ctx.mu == 0.5);
        CHECK(ctx.t0 == Catch::Approx(1.0 / 3.0).epsilon(1e-15));
        CHECK(ctx.s0 == 0.5);
    }
    SECTION("a = b ties to b_ge_a with mu = 0") {
        for (Func fn : {Func::M, Func::U}) {
            const auto ctx = classify(ParameterSet(7.0, 7.0, 2.0), fn);
            CHECK(ctx.regime.order == Order::b_ge_a);
            CHECK(ctx.mu == 0.0);
            CHECK(ctx.t0 == 0.0);
            CHECK(ctx.A == 0.0);
        }
    }
    SECTION("M with b <= a") {
        const auto ctx = classify(ParameterSet(3.0, 2.0, 1.0), Func::M);
        CHECK(ctx.regime.order == Order::b_le_a);
        CHECK(ctx.mu == Catch::Approx(1.0 / 3.0).epsilon(1e-15));
        CHECK(ctx.t0 == Catch::Approx(1.5).epsilon(1e-15));
    }
    SECTION("U with b <= a saddle") {
        const auto ctx = classify(ParameterSet(4.0, 2.0, 1.0), Func::U);
        CHECK(ctx.t0 == Catch::Approx(1.0).epsilon(1e-15)); // mu/(1-mu), mu=1/2
    }
    SECTION("mu cap") {
        CHECK_THROWS_AS(classify(ParameterSet(1.0, 100.0, 1.0), Func::M),
                        domain_error);
        CHECK_NOTHROW(classify(ParameterSet(1.0, 100.0, 1.0), Func::M, 200.0));
    }
}

TEST_CASE("phi and psi printed values") {
    SECTION("M b_ge_a at mu = 1/3: saddle t0 = 1/4") {
        const auto ctx = classify(ParameterSet(3.0, 4.0, 1.0), Func::M);
        CHECK(ctx.t0 == Catch::Approx(0.25).epsilon(1e-15));
        CHECK(phi(ctx, 0.25) ==
              Catch::Approx(-std::log(0.75) - std::log(0.25) / 3.0)
                  .epsilon(1e-14));
        // psi at the saddle: mu - mu ln mu
        const double mu = ctx.mu;
        CHECK(psi(ctx, mu) ==
              Catch::Approx(mu - mu * std::log(mu)).epsilon(1e-14));
    }
    SECTION("U b_le_a at mu = 1/2: phi(t0 = 1) = ln 2") {
        const auto ctx = classify(ParameterSet(4.0, 2.0, 1.0), Func::U);
        CHECK(phi(ctx, 1.0) == Catch::Approx(std::log(2.0)).epsilon(1e-14));
    }
    SECTION("domain checks") {
        const auto ge = classify(ParameterSet(2.0, 3.0, 1.0), Func::M);
        CHECK_THROWS_AS(phi(ge, 1.5), domain_error);
        CHECK_THROWS_AS(phi(ge, 0.0), domain_error);
        const auto mle = classify(ParameterSet(3.0, 2.0, 1.0), Func::M);
        CHECK_THROWS_AS(phi(mle, 0.5), domain_error);
        const auto ule = classify(ParameterSet(3.0, 2.0, 1.0), Func::U);
        CHECK_THROWS_AS(phi(ule, -0.5), domain_error);
        CHECK_THROWS_AS(psi(ge, 0.0), domain_error);
    }
}

TEST_CASE("constant_A closed forms and sign") {
    SECTION("mu = 0 vanishes") {
        const auto ctx = classify(ParameterSet(5.0, 5.0, 1.0), Func::M);
        CHECK(constant_A(ctx) == 0.0);
    }
    SECTION("b_ge_a, mu = 1: 2 ln 2 - 1") {
        const auto ctx = classify(ParameterSet(5.0, 10.0, 1.0), Func::M);
        CHECK(constant_A(ctx) ==
              Catch::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-14));
        CHECK(constant_A(ctx) >= 0.0);
    }
    SECTION("b_le_a, mu = 0.5: -0.5 ln 0.5 - 0.5") {
        const auto ctx = classify(ParameterSet(10.0, 5.0, 1.0), Func::M);
        CHECK(constant_A(ctx) ==
              Catch::Approx(-0.5 * std::log(0.5) - 0.5).epsilon(1e-14));
        CHECK(constant_A(ctx) <= 0.0);
    }
}

TEST_CASE("saddle conditions and A identity across all regimes") {
    // The analytic derivative vanishes to 1e-12 at the saddle; a central
    // finite difference corroborates it at the accuracy FD can reach in
    // doubles (the eps^(2/3) floor sits near 1e-11).
    // the FD step must scale with the distance from t0 to the nearest
    // log singularity of phi, not with t0 itself
    const auto fd_scale = [](const SaddleContext& ctx) {
        if (ctx.regime.order == Order::b_ge_a)
            return std::min(ctx.t0, 1.0 - ctx.t0);
        return (ctx.regime.function == Func::M) ? ctx.t0 - 1.0 : ctx.t0;
    };
    const double mus_ge[] = {0.01, 0.1, 0.5, 0.9, 2.0, 5.0};
    const double mus_le[] = {0.01, 0.1, 0.5, 0.9};
    for (Func fn : {Func::M, Func::U}) {
        for (double mu : mus_ge) {
            const auto ctx = classify(ParameterSet(10.0, 10.0 * (1.0 + mu), 1.0), fn);
            CHECK(std::fabs(fd(phi, ctx, ctx.t0, 1e-5 * fd_scale(ctx))) < 1e-8);
            CHECK(std::fabs(fd(psi, ctx, ctx.s0, 1e-5 * ctx.s0)) < 1e-8);
            CHECK(std::fabs(phi_prime(ctx, ctx.t0)) < 1e-12);
            CHECK(std::fabs(psi_prime(ctx, ctx.s0)) < 1e-12);
            CHECK(std::fabs(constant_A(ctx) -
                            (phi(ctx, ctx.t0) - psi(ctx, ctx.s0))) < 1e-13);
        }
        for (double mu : mus_le) {
            const auto ctx = classify(ParameterSet(10.0, 10.0 * (1.0 - mu), 1.0), fn);
            CHECK(std::fabs(fd(phi, ctx, ctx.t0, 1e-5 * fd_scale(ctx))) < 1e-8);
            CHECK(std::fabs(phi_prime(ctx, ctx.t0)) < 1e-12);
            CHECK(std::fabs(psi_prime(ctx, ctx.s0)) < 1e-12);
            CHECK(std::fabs(constant_A(ctx) -
                            (phi(ctx, ctx.t0) - psi(ctx, ctx.s0))) < 1e-13);
        }
    }
}

TEST_CASE("second derivatives at the saddle: psi''/phi'' ratio") {
    // psi''(s0) = 1/mu; phi''(t0) = (1+mu)^3/mu (b>=a) or (1-mu)^3/mu
    for (double mu : {0.1, 0.5, 0.9}) {
        for (Func fn : {Func::M, Func::U}) {
            {
                const auto ctx =
                    classify(ParameterSet(10.0, 10.0 * (1.0 + mu), 1.0), fn);
                const double h = 1e-4 * ctx.s0;
                const double psi2 =
                    (psi(ctx, ctx.s0 + h) - 2.0 * psi(ctx, ctx.s0) +
                     psi(ctx, ctx.s0 - h)) / (h * h);
                const double ht = 1e-4 * ctx.t0;
                const double phi2 =
                    (phi(ctx, ctx.t0 + ht) - 2.0 * phi(ctx, ctx.t0) +
                     phi(ctx, ctx.t0 - ht)) / (ht * ht);
                CHECK(psi2 == Catch::Approx(1.0 / mu).epsilon(1e-5));
                CHECK(psi2 / phi2 ==
                      Catch::Approx(std::pow(1.0 + mu, -3)).epsilon(1e-5));
            }
            {
                const auto ctx =
                    classify(ParameterSet(10.0, 10.0 * (1.0 - mu), 1.0), fn);
                const double ht = 1e-4 * ctx.t0;
                const double phi2 =
                    (phi(ctx, ctx.t0 + ht) - 2.0 * phi(ctx, ctx.t0) +
                     phi(ctx, ctx.t0 - ht)) / (ht * ht);
                CHECK(phi2 == Catch::Approx(std::pow(1.0 - mu, 3) / mu)
                                  .epsilon(1e-5));
            }
        }
    }
}

TEST_CASE("descent path radius") {
    // theta = 0 limit equals the saddle t0 = 1/(1-mu)
    CHECK(descent_path_radius(0.75, 0.0) == Catch::Approx(4.0).epsilon(1e-15));
    // mu = 1/2, theta = pi/4: sin(pi/2)/sin(pi/4) = sqrt(2)
    CHECK(descent_path_radius(0.5, pi / 4.0) ==
          Catch::Approx(std::sqrt(2.0)).epsilon(1e-14));
    // endpoints land on sin(pi)/sin((1-mu) pi)
    CHECK(std::fabs(descent_path_radius(0.75, 0.75 * pi)) < 1e-14);
    CHECK_THROWS_AS(descent_path_radius(1.5, 0.0), domain_error);
    CHECK_THROWS_AS(descent_path_radius(0.5, 2.0), domain_error);
}
