#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "plpcov/distributions.hpp"
#include "plpcov/laplace.hpp"

using namespace plpcov;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

ModelParams flat_params() {
    // Single-line setup with square-law loss, where closed forms exist.
    ModelParams p;
    p.rho = 0.0;
    p.lambda_ru = 1.0;
    p.eta = 2.0;
    return p;
}

// Closed form of the one-sided deficit integral for eta = 2:
// int_c^inf s / (mu (x^2+y^2) + s) dx.
double deficit_tail_eta2(double c, double y, double s, double mu) {
    const double w = std::sqrt(y * y + s / mu);
    return (s / mu) / w * (kPi / 2.0 - std::atan(c / w));
}

}  // namespace

TEST_CASE("point fade transform hand values") {
    ModelParams p = flat_params();
    CHECK(point_fade_lt(2.0, 0.0, p) == 1.0);
    // d = 2, s = 3, eta = 2: 1 / (1 + 3/4).
    CHECK(point_fade_lt(2.0, 3.0, p) == Catch::Approx(4.0 / 7.0).epsilon(1e-14));
    p.mu = 2.0;
    CHECK(point_fade_lt(2.0, 3.0, p) == Catch::Approx(2.0 / 2.75).epsilon(1e-14));
}

TEST_CASE("fade deficit basic properties") {
    const ModelParams p = flat_params();
    CHECK(fade_deficit(1.0, 0.5, 0.0, 0.0, p) == 0.0);
    CHECK(fade_deficit(0.0, 0.0, 1.0, 0.0, p) == 1.0);
    CHECK(fade_deficit(0.0, 0.0, 0.0, 0.0, p) == 0.0);

    for (double x : {0.2, 1.0, 4.0}) {
        const double single = fade_deficit(x, 0.3, 1.0, 0.0, p);
        const double joint = fade_deficit(x, 0.3, 1.0, 2.0, p);
        CHECK(single >= 0.0);
        CHECK(single <= 1.0);
        CHECK(joint >= single);
        CHECK(fade_deficit(x, 0.3, 2.0, 1.0, p) == Catch::Approx(joint).epsilon(1e-14));
        CHECK(fade_deficit(x, 0.3, 3.0, 0.0, p) > single);
    }
}

TEST_CASE("deficit tail matches the square-law closed form") {
    ModelParams p = flat_params();
    for (double s : {0.5, 3.0})
        for (double y : {0.0, 0.5})
            for (double c : {0.0, 0.3, 2.0}) {
                const double expected = deficit_tail_eta2(c, y, s, p.mu);
                CHECK(deficit_tail(c, y, s, 0.0, p) == Catch::Approx(expected).margin(1e-8));
            }
    // Scale in the second slot only behaves identically.
    CHECK(deficit_tail(0.3, 0.5, 0.0, 2.0, p) ==
          Catch::Approx(deficit_tail(0.3, 0.5, 2.0, 0.0, p)).epsilon(1e-10));
}

TEST_CASE("own-line transform closed forms") {
    const ModelParams p = flat_params();

    SECTION("two active slots at unit scales from the origin") {
        // Deficit 1 - (x^2/(1+x^2))^2 integrates to 3 pi / 4.
        const double expected = std::exp(-1.5 * kPi);
        CHECK(lt_own_line(p, 0.0, 1.0, 1.0) == Catch::Approx(expected).margin(1e-9));
        // Between the product of the marginals and the smaller marginal.
        const double single = lt_own_line(p, 0.0, 1.0, 0.0);
        CHECK(single == Catch::Approx(std::exp(-kPi)).margin(1e-9));
        CHECK(lt_own_line(p, 0.0, 1.0, 1.0) > std::exp(-2.0 * kPi));
        CHECK(lt_own_line(p, 0.0, 1.0, 1.0) < single);
    }

    SECTION("single slot with an exclusion radius") {
        for (double s : {0.5, 2.0})
            for (double r : {0.0, 0.4, 1.3}) {
                const double expected =
                    std::exp(-2.0 * p.lambda_ru * deficit_tail_eta2(r, 0.0, s, p.mu));
                CHECK(lt_own_line(p, r, s, 0.0) == Catch::Approx(expected).margin(1e-9));
            }
    }
}

TEST_CASE("transforms are one at zero scales") {
    ModelParams p;
    p.rho = 0.7;
    p.lambda_ru = 1.2;
    CHECK(lt_own_line(p, 0.5, 0.0, 0.0) == 1.0);
    CHECK(lt_serving_line(p, 0.8, 0.3, 0.0, 0.0) == 1.0);
    CHECK(lt_void_lines_inside(p, 0.5, 0.0, 0.0) == 1.0);
    CHECK(lt_lines_beyond(p, 0.5, 0.0, 0.0) == 1.0);
    CHECK(lt_whole_field(p, p.lambda_vt(), 0.0, 0.0) == 1.0);
    CHECK(thermal_factor(p, 0.0) == 1.0);
}

TEST_CASE("transform monotonicity") {
    ModelParams p;
    p.rho = 0.6;
    p.lambda_ru = 1.0;
    p.eta = 4.0;

    const double s = 1.3;
    // Larger exclusion radius means less interference.
    CHECK(lt_own_line(p, 0.8, s, 0.0) > lt_own_line(p, 0.2, s, 0.0));
    CHECK(lt_lines_beyond(p, 0.8, s, 0.0) > lt_lines_beyond(p, 0.2, s, 0.0));
    // Larger scale means a heavier transform argument.
    CHECK(lt_own_line(p, 0.5, 2.0 * s, 0.0) < lt_own_line(p, 0.5, s, 0.0));
    CHECK(lt_void_lines_inside(p, 0.5, 2.0 * s, 0.0) < lt_void_lines_inside(p, 0.5, s, 0.0));
    // Denser field, smaller transform.
    CHECK(lt_whole_field(p, 2.0, s, 0.0) < lt_whole_field(p, 1.0, s, 0.0));

    // Joint slots sit between the product of marginals and either marginal.
    for (auto lt : {+[](const ModelParams& q, double sa, double sb) {
                        return lt_own_line(q, 0.4, sa, sb, QuadratureSpec{});
                    },
                    +[](const ModelParams& q, double sa, double sb) {
                        return lt_void_lines_inside(q, 0.4, sa, sb, QuadratureSpec{});
                    },
                    +[](const ModelParams& q, double sa, double sb) {
                        return lt_lines_beyond(q, 0.4, sa, sb, QuadratureSpec{});
                    }}) {
        const double a = lt(p, 0.9, 0.0), b = lt(p, 1.7, 0.0), joint = lt(p, 0.9, 1.7);
        CHECK(joint >= a * b - 1e-12);
        CHECK(joint <= std::min(a, b) + 1e-12);
    }
}

TEST_CASE("whole field splits into own line and cross lines") {
    ModelParams p;
    p.rho = 0.6;
    p.lambda_ru = 1.1;
    p.eta = 4.0;
    const double s = 0.9;
    CHECK(lt_whole_field(p, p.lambda_ru, s, 0.0) ==
          Catch::Approx(lt_own_line(p, 0.0, s, 0.0) * lt_lines_beyond(p, 0.0, s, 0.0))
              .epsilon(1e-9));

    ModelParams noroads = p;
    noroads.rho = 0.0;
    CHECK(lt_whole_field(noroads, p.lambda_ru, s, 0.0) ==
          Catch::Approx(lt_own_line(noroads, 0.0, s, 0.0)).epsilon(1e-12));
}

TEST_CASE("void conditioning factors recombine into one line integral") {
    // Split each line's contribution as 1 - v*l = (1 - v) + v*(1 - l):
    // the void-tilted conditioned product over lines inside the disk times
    // the untouched lines beyond equals one unconditioned line integral
    // against the combined weight w(u).
    ModelParams p;
    p.rho = 0.8;
    p.lambda_ru = 1.3;
    p.eta = 4.0;
    const double s_a = 1.1, s_b = 0.6, r = 0.7;
    const QuadratureSpec spec = QuadratureSpec{}.with_tols(1e-9, 1e-12);

    auto w = [&](double u) {
        const double c = u < r ? std::sqrt(r * r - u * u) : 0.0;
        const double v = std::exp(-2.0 * p.lambda_ru * c);
        return v * lt_one_line(p.lambda_ru, c, u, s_a, s_b, p, spec);
    };
    const auto expo = integrate([&](double u) { return 1.0 - w(u); }, 0.0, kInf, spec);
    const double combined = std::exp(-2.0 * p.rho * expo.value);

    const double split = void_other_lines(p, r, spec) *
                         lt_void_lines_inside(p, r, s_a, s_b, spec) *
                         lt_lines_beyond(p, r, s_a, s_b, spec);
    CHECK(split == Catch::Approx(combined).epsilon(1e-7));
}

TEST_CASE("own-line transform matches a location-averaged simulation") {
    ModelParams p;
    p.rho = 0.0;
    p.lambda_ru = 1.0;
    p.eta = 4.0;
    const double r = 0.5, s_a = 0.8, s_b = 1.7, extent = 20.0;

    std::mt19937_64 rng(12345);
    std::poisson_distribution<int> count(2.0 * p.lambda_ru * (extent - r));
    std::uniform_real_distribution<double> pos(r, extent);
    const int n = 20000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        double prod = 1.0;
        const int m = count(rng);
        for (int k = 0; k < m; ++k) {
            const double g = path_gain(pos(rng), p.eta);
            prod *= (p.mu / (p.mu + s_a * g)) * (p.mu / (p.mu + s_b * g));
        }
        sum += prod;
        sumsq += prod * prod;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sumsq / n - mean * mean) / n);
    const double expected = lt_own_line(p, r, s_a, s_b);
    CHECK(std::abs(mean - expected) < 5.0 * se + 1e-3);
}

TEST_CASE("whole-field transform matches a location-averaged simulation") {
    ModelParams p;
    p.rho = 0.3;
    p.lambda_ru = 0.5;
    p.eta = 4.0;
    const double s = 1.2, extent = 15.0;

    std::mt19937_64 rng(777);
    std::poisson_distribution<int> line_count(2.0 * p.rho * extent);
    std::uniform_real_distribution<double> uline(0.0, extent);
    std::poisson_distribution<int> pt_count(2.0 * p.lambda_ru * extent);
    std::uniform_real_distribution<double> upos(0.0, extent);

    auto line_product = [&](double y) {
        double prod = 1.0;
        const int m = pt_count(rng);
        for (int k = 0; k < m; ++k) {
            const double x = upos(rng);
            const double g = path_gain_sq(x * x + y * y, p.eta);
            prod *= p.mu / (p.mu + s * g);
        }
        return prod;
    };

    const int n = 4000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        double prod = line_product(0.0);
        const int lines = line_count(rng);
        for (int l = 0; l < lines; ++l) prod *= line_product(uline(rng));
        sum += prod;
        sumsq += prod * prod;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sumsq / n - mean * mean) / n);
    const double expected = lt_whole_field(p, p.lambda_ru, s, 0.0);
    CHECK(std::abs(mean - expected) < 5.0 * se + 2e-3);
}

TEST_CASE("thermal factor") {
    ModelParams p;
    p.noise = 0.0;
    CHECK(thermal_factor(p, 2.0) == 1.0);
    p.noise = 0.5;
    p.kappa = 2.0;
    CHECK(thermal_factor(p, 3.0) == Catch::Approx(std::exp(-0.75)).epsilon(1e-14));
}
