#include <doctest.h>

#include <cmath>

#include "colombeau/bump.hpp"
#include "colombeau/quadrature.hpp"
#include "oracles.hpp"

using namespace colombeau;
using C = std::complex<double>;

namespace {

QuadOptions<double> tight(double tol) {
    QuadOptions<double> o;
    o.tol = tol;
    return o;
}

} // namespace

TEST_SUITE("quadrature") {

TEST_CASE("log endpoint: int_0^1 ln t dt = -1") {
    auto r = integrate<double>([](double t) { return C(std::log(t), 0); }, 0.0, 1.0,
                               {Breakpoint<double>(0.0, Endpoint::log_singular)}, tight(1e-12));
    CHECK(r.converged);
    CHECK(std::abs(r.value.real() + 1.0) < 1e-10);
    CHECK(r.value.imag() == 0.0);
}

TEST_CASE("log endpoint: int_0^1 t ln t dt = -1/4") {
    auto r = integrate<double>([](double t) { return C(t * std::log(t), 0); }, 0.0, 1.0,
                               {Breakpoint<double>(0.0, Endpoint::log_singular)}, tight(1e-12));
    CHECK(r.converged);
    CHECK(std::abs(r.value.real() + 0.25) < 1e-10);
}

TEST_CASE("bump integral against fixed-grid trapezoid oracle") {
    auto k = make_bump<double>(0, 1);
    const double oracle = oracles::trapezoid([&](double x) { return k.eval(x); }, -1.0, 1.0);
    auto r = integrate<double>([&](double x) { return C(k.eval(x), 0); }, -1.0, 1.0, {},
                               tight(1e-12));
    CHECK(r.converged);
    CHECK(std::abs(r.value.real() - oracle) < 1e-8);
    CHECK(r.value.real() == doctest::Approx(0.44399381616807944).epsilon(1e-10));
}

TEST_CASE("degree-15 polynomial exact on a single 8-point panel") {
    auto p = [](double x) { return C(std::pow(x, 15) - 3 * std::pow(x, 11) + x * x, 0); };
    // exact: x^16/16 - 3 x^12/12 + x^3/3 over [0,1]
    const double exact = 1.0 / 16 - 0.25 + 1.0 / 3;
    const C v = gl8_panel<double>(p, 0.0, 1.0);
    CHECK(std::abs(v.real() - exact) < 1e-12);
}

TEST_CASE("forced breakpoint handles a jump") {
    auto f = [](double x) { return C(x < 0.5 ? 1.0 : 3.0, 0); };
    auto r = integrate<double>(f, 0.0, 1.0, {Breakpoint<double>(0.5)}, tight(1e-12));
    CHECK(r.converged);
    CHECK(std::abs(r.value.real() - 2.0) < 1e-12);
}

TEST_CASE("algebraic endpoints") {
    // int_0^1 t^-1/2 dt = 2
    auto r = integrate<double>([](double t) { return C(1.0 / std::sqrt(t), 0); }, 0.0, 1.0,
                               {Breakpoint<double>(0.0, Endpoint::algebraic, -0.5)}, tight(1e-11));
    CHECK(r.converged);
    CHECK(std::abs(r.value.real() - 2.0) < 1e-9);

    // both endpoints singular: int_0^1 (t(1-t))^-1/2 dt = pi
    auto r2 = integrate<double>(
        [](double t) { return C(1.0 / std::sqrt(t * (1.0 - t)), 0); }, 0.0, 1.0,
        {Breakpoint<double>(0.0, Endpoint::algebraic, -0.5),
         Breakpoint<double>(1.0, Endpoint::algebraic, -0.5)},
        tight(1e-11));
    CHECK(r2.converged);
    CHECK(std::abs(r2.value.real() - pi_v<double>) < 1e-9);
}

TEST_CASE("panel exhaustion reports failure with best estimate") {
    QuadOptions<double> o;
    o.tol = 1e-14;
    o.max_panels = 4;
    auto r = integrate<double>(
        [](double t) { return C(std::cos(200.0 * t) + 1.0 / std::sqrt(std::abs(t - 0.3)), 0); },
        0.0, 1.0, {}, o);
    CHECK_FALSE(r.converged);
    CHECK(std::isfinite(r.value.real()));
    CHECK(r.error_estimate > 0);
}

TEST_CASE("error estimate honesty on random smooth integrands") {
    oracles::Lcg rng(12345);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = rng.range(0.5, 4.0);
        const double b = rng.range(-1.0, 1.0);
        const double c = rng.range(-0.8, 0.8);
        const double d = rng.range(-2.0, 2.0);
        auto f = [=](double x) {
            return C(std::sin(a * x + b) * std::exp(c * x) + d * x * x, 0);
        };
        auto ref = integrate<double>(f, 0.0, 2.0, {}, tight(1e-14));
        auto got = integrate<double>(f, 0.0, 2.0, {}, tight(1e-8));
        REQUIRE(got.converged);
        const double true_err = std::abs(got.value - ref.value);
        CHECK(true_err <= 10.0 * (got.error_estimate + got.roundoff) + 1e-15);
    }
}

TEST_CASE("complex integrand") {
    auto r = integrate<double>([](double t) { return C(std::cos(t), std::sin(t)); }, 0.0, 1.0, {},
                               tight(1e-12));
    CHECK(r.converged);
    CHECK(std::abs(r.value.real() - std::sin(1.0)) < 1e-12);
    CHECK(std::abs(r.value.imag() - (1.0 - std::cos(1.0))) < 1e-12);
}

TEST_CASE("invalid interval rejected") {
    CHECK_THROWS_AS(integrate<double>([](double) { return C(0, 0); }, 1.0, 0.0, {}, tight(1e-8)),
                    std::invalid_argument);
}

TEST_CASE("long double instantiation") {
    using LC = std::complex<long double>;
    QuadOptions<long double> o;
    o.tol = 1e-15L;
    auto r = integrate<long double>(
        [](long double t) { return LC(std::log(t), 0.0L); }, 0.0L, 1.0L,
        {Breakpoint<long double>(0.0L, Endpoint::log_singular)}, o);
    CHECK(r.converged);
    CHECK(std::abs(r.value.real() + 1.0L) < 1e-14L);
}

} // TEST_SUITE
