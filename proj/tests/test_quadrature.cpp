#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "plpcov/quadrature.hpp"

using plpcov::integrate;
using plpcov::IntegralResult;
using plpcov::QuadratureSpec;
using plpcov::sum_ranks;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
const double kPi = 3.14159265358979323846;
}  // namespace

TEST_CASE("exponential tail integrates to one") {
    auto r = integrate([](double x) { return std::exp(-x); }, 0.0, kInf);
    CHECK(r.converged);
    CHECK(r.value == Catch::Approx(1.0).margin(1e-8));
}

TEST_CASE("inverse-sqrt endpoint singularity") {
    auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
    CHECK(r.converged);
    CHECK(r.value == Catch::Approx(2.0).margin(1e-5));
}

TEST_CASE("arctangent closed form for the quadratic path-loss kernel") {
    // Int_r^inf s x^-2 / (mu + s x^-2) dx = sqrt(s/mu) (pi/2 - atan(r sqrt(mu/s)))
    const double mu = 1.0;
    for (double s : {0.5, 1.0, 7.0}) {
        for (double r0 : {0.0, 0.3, 2.0}) {
            auto f = [=](double x) {
                const double pl = s / (x * x);
                return pl / (mu + pl);
            };
            auto r = integrate(f, r0, kInf, QuadratureSpec{}.with_tols(1e-9, 1e-12));
            const double expected =
                std::sqrt(s / mu) * (kPi / 2.0 - std::atan(r0 * std::sqrt(mu / s)));
            CHECK(r.converged);
            CHECK(r.value == Catch::Approx(expected).epsilon(1e-8));
        }
    }
}

TEST_CASE("basic finite integrals") {
    auto rpi = integrate([](double x) { return 4.0 / (1.0 + x * x); }, 0.0, 1.0);
    CHECK(rpi.value == Catch::Approx(kPi).epsilon(1e-10));

    auto rpoly = integrate([](double x) { return x * x * x; }, -1.0, 2.0);
    CHECK(rpoly.value == Catch::Approx(15.0 / 4.0).epsilon(1e-12));

    auto rgauss = integrate([](double x) { return std::exp(-x * x); }, 0.0, kInf);
    CHECK(rgauss.value == Catch::Approx(std::sqrt(kPi) / 2.0).epsilon(1e-10));

    auto rslow = integrate([](double x) { return std::pow(x, -4.0); }, 1.0, kInf);
    CHECK(rslow.value == Catch::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("circular-edge singularity like the chord-density kernels") {
    // Int_0^r du / sqrt(r^2 - u^2) = pi/2, integrand blows up at u = r.
    const double r = 0.7;
    auto f = [r](double u) { return 1.0 / std::sqrt(r * r - u * u); };
    auto res = integrate(f, 0.0, r, QuadratureSpec{}.with_tols(1e-7, 1e-10));
    CHECK(res.converged);
    CHECK(res.value == Catch::Approx(kPi / 2.0).margin(2e-6));
}

TEST_CASE("empty interval gives zero") {
    auto r = integrate([](double x) { return x; }, 1.0, 1.0);
    CHECK(r.converged);
    CHECK(r.value == 0.0);
}

TEST_CASE("budget exhaustion is reported with the worst subinterval") {
    QuadratureSpec spec;
    spec.max_panels = 8;
    spec.rel_tol = 1e-14;
    spec.abs_tol = 0.0;
    auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, spec);
    CHECK_FALSE(r.converged);
    CHECK(r.error_estimate > 0.0);
    // The difficult panel hugs the singular endpoint.
    CHECK(r.worst_lo < 0.25);
}

TEST_CASE("non-finite integrand values are rejected") {
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / (x - x); }, 0.0, 1.0),
                    std::domain_error);
}

TEST_CASE("results are deterministic") {
    auto f = [](double x) { return std::exp(-x) * std::cos(5.0 * x); };
    auto a = integrate(f, 0.0, kInf);
    auto b = integrate(f, 0.0, kInf);
    CHECK(a.value == b.value);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("rank series: geometric sum") {
    auto r = sum_ranks([](int n) { return std::pow(2.0, -n); });
    CHECK(r.converged);
    CHECK(r.value == Catch::Approx(1.0).margin(1e-4));
    CHECK(r.terms_used < 25);
}

TEST_CASE("rank series: exponential series hits e") {
    auto r = sum_ranks([](int n) { return 1.0 / std::tgamma(static_cast<double>(n)); });
    CHECK(r.converged);
    CHECK(r.value == Catch::Approx(std::exp(1.0)).margin(1e-4));
}

TEST_CASE("rank series: all-zero terms return zero and converge") {
    auto r = sum_ranks([](int) { return 0.0; });
    CHECK(r.converged);
    CHECK(r.value == 0.0);
}

TEST_CASE("rank series: cap reached is flagged") {
    QuadratureSpec spec;
    spec.series_n_max = 10;
    auto r = sum_ranks([](int n) { return 1.0 / n; }, spec);
    CHECK_FALSE(r.converged);
    CHECK(r.terms_used == 10);
}
