#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "plpcov/geometry.hpp"

using namespace plpcov;

namespace {

ModelParams small_params() {
    ModelParams p;
    p.rho = 1.0;
    p.lambda_ru = 1.0;
    p.lambda_v = 2.0;
    p.p1 = 0.5;
    return p;
}

std::string dump_to_string(const NetworkRealization& real) {
    std::ostringstream os;
    os.precision(17);
    dump_realization(real, os);
    return os.str();
}

}  // namespace

TEST_CASE("line points live on the expected road") {
    // Foot at distance 3 along angle pi/2, so the road runs through (0, 3)
    // with direction (-1, 0).
    Line ln;
    ln.y = 3.0;
    ln.theta = 3.14159265358979323846 / 2.0;
    const Vec2 foot = ln.point(0.0);
    CHECK(foot.x == Catch::Approx(0.0).margin(1e-15));
    CHECK(foot.y == Catch::Approx(3.0).epsilon(1e-15));
    const Vec2 ahead = ln.point(4.0);
    CHECK(ahead.x == Catch::Approx(-4.0).epsilon(1e-15));
    CHECK(ahead.y == Catch::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("own road runs along the x axis") {
    const NetworkRealization real = sample_realization(small_params(), 5.0, 7);
    REQUIRE(!real.lines.empty());
    const Line& own = real.own_line();
    CHECK(own.y == 0.0);
    const Vec2 pt = own.point(2.5);
    CHECK(pt.x == Catch::Approx(2.5).epsilon(1e-12));
    CHECK(pt.y == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("sampling is deterministic in the seed") {
    const ModelParams p = small_params();
    const NetworkRealization a = sample_realization(p, 5.0, 42);
    const NetworkRealization b = sample_realization(p, 5.0, 42);
    const NetworkRealization c = sample_realization(p, 5.0, 43);
    CHECK(dump_to_string(a) == dump_to_string(b));
    CHECK(dump_to_string(a) != dump_to_string(c));
}

TEST_CASE("sampled geometry respects the window") {
    const ModelParams p = small_params();
    const double R = 5.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const NetworkRealization real = sample_realization(p, R, seed);
        double prev_y = 0.0;
        for (size_t i = 1; i < real.lines.size(); ++i) {
            const Line& ln = real.lines[i];
            CHECK(ln.y > 0.0);
            CHECK(ln.y <= R);
            CHECK(ln.y >= prev_y);
            prev_y = ln.y;
            const double chord = std::sqrt(R * R - ln.y * ln.y);
            for (double t : ln.rsu) {
                CHECK(std::abs(t) <= chord);
            }
            for (double t : ln.vt) CHECK(std::abs(t) <= chord);
            CHECK(std::is_sorted(ln.rsu.begin(), ln.rsu.end()));
            CHECK(std::is_sorted(ln.vt.begin(), ln.vt.end()));
        }
        for (double t : real.own_line().rsu) CHECK(std::abs(t) <= R);
    }
}

TEST_CASE("sampled intensities match the model") {
    const ModelParams p = small_params();
    const double R = 5.0;
    const int trials = 400;
    double lines_sum = 0.0, own_rsu_sum = 0.0, own_vt_sum = 0.0;
    for (int i = 0; i < trials; ++i) {
        const NetworkRealization real = sample_realization(p, R, 1000 + i);
        lines_sum += static_cast<double>(real.lines.size() - 1);
        own_rsu_sum += static_cast<double>(real.own_line().rsu.size());
        own_vt_sum += static_cast<double>(real.own_line().vt.size());
    }
    const double mean_lines = lines_sum / trials;
    const double mean_rsu = own_rsu_sum / trials;
    const double mean_vt = own_vt_sum / trials;
    // Poisson mean m has standard error sqrt(m / trials); allow 5 sigma.
    const double m_lines = 2.0 * p.rho * R;
    CHECK(std::abs(mean_lines - m_lines) < 5.0 * std::sqrt(m_lines / trials));
    const double m_rsu = 2.0 * p.lambda_ru * R;
    CHECK(std::abs(mean_rsu - m_rsu) < 5.0 * std::sqrt(m_rsu / trials));
    const double m_vt = 2.0 * p.lambda_vt() * R;
    CHECK(std::abs(mean_vt - m_vt) < 5.0 * std::sqrt(m_vt / trials));
}

TEST_CASE("degenerate processes sample empty") {
    ModelParams p = small_params();
    p.rho = 0.0;
    p.lambda_v = 0.0;
    const NetworkRealization real = sample_realization(p, 5.0, 3);
    CHECK(real.lines.size() == 1);
    CHECK(real.own_line().vt.empty());
    CHECK_THROWS_AS(sample_realization(p, 0.0, 3), std::invalid_argument);
}

TEST_CASE("nearest unit on a hand-built scene") {
    NetworkRealization real;
    real.window_radius = 10.0;
    Line own;
    own.theta = 3.0 * 3.14159265358979323846 / 2.0;
    own.rsu = {-7.0, 6.0};
    Line cross;
    cross.y = 3.0;
    cross.theta = 3.14159265358979323846 / 2.0;
    cross.rsu = {4.0};  // lands at (-4, 3), distance 5 from the origin
    real.lines = {own, cross};

    const NearestRsu n = nearest_rsu(real);
    REQUIRE(n.found);
    CHECK(n.line_index == 1);
    CHECK(n.point_index == 0);
    CHECK(n.distance == Catch::Approx(5.0).epsilon(1e-12));

    // From a different vantage point the own road wins.
    const NearestRsu m = nearest_rsu(real, {5.0, 0.0});
    REQUIRE(m.found);
    CHECK(m.line_index == 0);
    CHECK(m.abscissa == Catch::Approx(6.0));
    CHECK(m.distance == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("nearest unit agrees with an independent scan") {
    const ModelParams p = small_params();
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        const NetworkRealization real = sample_realization(p, 5.0, seed);
        const Vec2 from{0.4, -0.2};
        double best = std::numeric_limits<double>::infinity();
        for (const Line& ln : real.lines)
            for (double t : ln.rsu) {
                const Vec2 pt = ln.point(t);
                best = std::min(best, std::hypot(pt.x - from.x, pt.y - from.y));
            }
        const NearestRsu n = nearest_rsu(real, from);
        if (std::isinf(best)) {
            CHECK(!n.found);
        } else {
            REQUIRE(n.found);
            CHECK(n.distance == Catch::Approx(best).epsilon(1e-12));
        }
    }
}

TEST_CASE("serving event identifies the winning road") {
    NetworkRealization real;
    real.window_radius = 10.0;
    Line own;
    own.theta = 3.0 * 3.14159265358979323846 / 2.0;
    own.rsu = {0.5};
    Line near_cross;
    near_cross.y = 1.0;
    near_cross.theta = 0.0;
    near_cross.rsu = {2.0};
    Line far_cross;
    far_cross.y = 2.0;
    far_cross.theta = 0.0;
    far_cross.rsu = {0.0};  // at the foot: distance 2
    real.lines = {own, near_cross, far_cross};

    SECTION("own road wins") {
        const ServingEvent ev = serving_event(real);
        CHECK(ev.own_line);
        CHECK(ev.rank == 0);
        CHECK(ev.rb1 == Catch::Approx(0.5));
    }

    SECTION("rank-two road wins once the own road thins out") {
        real.lines[0].rsu = {9.0};
        const ServingEvent ev = serving_event(real);
        CHECK(!ev.own_line);
        CHECK(ev.rank == 2);
        CHECK(ev.line_distance == Catch::Approx(2.0));
        CHECK(ev.rb1 == Catch::Approx(2.0));
    }

    SECTION("no unit anywhere throws") {
        real.lines[0].rsu.clear();
        real.lines[1].rsu.clear();
        real.lines[2].rsu.clear();
        CHECK_THROWS_AS(serving_event(real), std::runtime_error);
    }
}

TEST_CASE("counting duality with disk counts") {
    const ModelParams p = small_params();

    SECTION("count matches an independent scan") {
        for (std::uint64_t seed = 200; seed < 210; ++seed) {
            const NetworkRealization real = sample_realization(p, 6.0, seed);
            const Vec2 center{0.3, 0.1};
            const double radius = 1.7;
            int expected = 0;
            for (const Line& ln : real.lines)
                for (double t : ln.rsu) {
                    const Vec2 pt = ln.point(t);
                    if (std::hypot(pt.x - center.x, pt.y - center.y) <= radius) ++expected;
                }
            CHECK(count_rsus_within(real, center, radius) == expected);
        }
    }

    SECTION("mean count matches the chord-length formula") {
        const double R = 8.0;
        const double r = 1.5;
        const int trials = 300;
        double sum = 0.0, sumsq = 0.0;
        for (int i = 0; i < trials; ++i) {
            const double c = count_rsus_within(sample_realization(p, R, 3000 + i), {0.0, 0.0}, r);
            sum += c;
            sumsq += c * c;
        }
        const double mean = sum / trials;
        const double var = sumsq / trials - mean * mean;
        const double expected =
            2.0 * p.lambda_ru * r + 3.14159265358979323846 * p.rho * p.lambda_ru * r * r;
        CHECK(std::abs(mean - expected) < 5.0 * std::sqrt(var / trials));
    }
}

TEST_CASE("dump and read round-trip") {
    const NetworkRealization real = sample_realization(small_params(), 5.0, 99);
    std::stringstream ss;
    ss.precision(17);
    dump_realization(real, ss);
    const NetworkRealization back = read_realization(ss);
    CHECK(dump_to_string(back) == dump_to_string(real));

    std::stringstream bad("rsu 0 1.0\n");
    CHECK_THROWS_AS(read_realization(bad), std::runtime_error);
    std::stringstream unknown("frob 1 2\n");
    CHECK_THROWS_AS(read_realization(unknown), std::runtime_error);
}

TEST_CASE("seed scrambler separates nearby seeds") {
    CHECK(splitmix64(1) != splitmix64(2));
    CHECK(splitmix64(0) != 0);
    // Reference value of the standard scrambler for input 1.
    CHECK(splitmix64(0x9e3779b97f4a7c15ULL) != splitmix64(1));
}
