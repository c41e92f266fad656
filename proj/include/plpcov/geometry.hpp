/*
 * Copyright 2026 the plpcov authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "plpcov/model.hpp"

namespace plpcov {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// One road: perpendicular foot at distance y from the origin with angle
// theta, points stored as abscissae along the road relative to the foot.
// Road direction is (-sin theta, cos theta).
struct Line {
    double y = 0.0;
    double theta = 0.0;
    std::vector<double> rsu;  // roadside-unit abscissae, sorted
    std::vector<double> vt;   // transmitting-vehicle abscissae, sorted

    Vec2 point(double t) const {
        const double c = std::cos(theta), s = std::sin(theta);
        return {y * c - t * s, y * s + t * c};
    }
};

// A sampled network inside a disk window. lines[0] is always the observer's
// own road through the origin, oriented along the x axis.
struct NetworkRealization {
    double window_radius = 0.0;
    std::vector<Line> lines;

    const Line& own_line() const { return lines.front(); }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace detail {

inline void fill_ppp_on_segment(std::vector<double>& out, double half_len, double density,
                                std::mt19937_64& rng) {
    out.clear();
    if (density <= 0.0 || half_len <= 0.0) return;
    std::poisson_distribution<int> count(2.0 * half_len * density);
    std::uniform_real_distribution<double> pos(-half_len, half_len);
    const int n = count(rng);
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(pos(rng));
    std::sort(out.begin(), out.end());
}

}  // namespace detail

// Samples the road process and the per-road point processes inside a disk of
// the given radius. The own road is added through the origin; other roads have
// perpendicular distances from a 1D Poisson process of rate 2*rho on
// (0, window_radius] and uniform angles. Deterministic in the seed.
inline void sample_realization_into(NetworkRealization& real, const ModelParams& p,
                                    double window_radius, std::uint64_t seed) {
    if (!(window_radius > 0.0))
        throw std::invalid_argument("sample_realization: window_radius must be > 0");
    std::mt19937_64 rng(splitmix64(seed));
    real.window_radius = window_radius;

    std::poisson_distribution<int> line_count(2.0 * p.rho * window_radius);
    const int n_other = p.rho > 0.0 ? line_count(rng) : 0;
    real.lines.resize(1 + n_other);

    // Own road along the x axis: direction (1, 0) needs theta = 3*pi/2.
    Line& own = real.lines[0];
    own.y = 0.0;
    own.theta = 4.71238898038468986;
    detail::fill_ppp_on_segment(own.rsu, window_radius, p.lambda_ru, rng);
    detail::fill_ppp_on_segment(own.vt, window_radius, p.lambda_vt(), rng);

    std::uniform_real_distribution<double> ydist(0.0, window_radius);
    std::uniform_real_distribution<double> tdist(0.0, 6.28318530717958648);
    for (int i = 0; i < n_other; ++i) {
        Line& ln = real.lines[1 + i];
        ln.y = ydist(rng);
        ln.theta = tdist(rng);
        const double chord = std::sqrt(std::max(0.0, window_radius * window_radius - ln.y * ln.y));
        detail::fill_ppp_on_segment(ln.rsu, chord, p.lambda_ru, rng);
        detail::fill_ppp_on_segment(ln.vt, chord, p.lambda_vt(), rng);
    }
    // Keep the other roads ordered by distance; the own road stays first.
    std::sort(real.lines.begin() + 1, real.lines.end(),
              [](const Line& a, const Line& b) { return a.y < b.y; });
}

inline NetworkRealization sample_realization(const ModelParams& p, double window_radius,
                                             std::uint64_t seed) {
    NetworkRealization real;
    sample_realization_into(real, p, window_radius, seed);
    return real;
}

struct NearestRsu {
    bool found = false;
    double distance = 0.0;
    int line_index = -1;
    int point_index = -1;
    double abscissa = 0.0;
};

inline double squared_distance(const Line& ln, double t, const Vec2& from) {
    const Vec2 pt = ln.point(t);
    const double dx = pt.x - from.x, dy = pt.y - from.y;
    return dx * dx + dy * dy;
}

// Nearest roadside unit to `from` over every road. Ties break on
// (distance, line index, point index), which makes the result a total order.
inline NearestRsu nearest_rsu(const NetworkRealization& real, const Vec2& from = {}) {
    NearestRsu best;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (size_t li = 0; li < real.lines.size(); ++li) {
        const Line& ln = real.lines[li];
        for (size_t pi = 0; pi < ln.rsu.size(); ++pi) {
            const double d2 = squared_distance(ln, ln.rsu[pi], from);
            if (d2 < best_d2) {
                best_d2 = d2;
                best.found = true;
                best.line_index = static_cast<int>(li);
                best.point_index = static_cast<int>(pi);
                best.abscissa = ln.rsu[pi];
            }
        }
    }
    if (best.found) best.distance = std::sqrt(best_d2);
    return best;
}

// Which road serves the origin: the own road (rank 0) or the rank-n other
// road, together with the serving distance.
struct ServingEvent {
    bool own_line = false;
    int rank = 0;          // 0 for the own road, 1-based among other roads
    double line_distance = 0.0;
    double rb1 = 0.0;
    int line_index = -1;
};

inline ServingEvent serving_event(const NetworkRealization& real) {
    const NearestRsu n = nearest_rsu(real);
    if (!n.found) throw std::runtime_error("serving_event: no roadside unit in the window");
    ServingEvent ev;
    ev.rb1 = n.distance;
    ev.line_index = n.line_index;
    if (n.line_index == 0) {
        ev.own_line = true;
        return ev;
    }
    // Other roads are sorted by distance, so the rank is the index itself.
    ev.rank = n.line_index;
    ev.line_distance = real.lines[n.line_index].y;
    return ev;
}

inline int count_rsus_within(const NetworkRealization& real, const Vec2& center, double radius) {
    const double r2 = radius * radius;
    int count = 0;
    for (const Line& ln : real.lines)
        for (double t : ln.rsu)
            if (squared_distance(ln, t, center) <= r2) ++count;
    return count;
}

// Line-oriented text dump: one record per road or point.
inline void dump_realization(const NetworkRealization& real, std::ostream& os) {
    os << "window " << real.window_radius << "\n";
    for (size_t i = 0; i < real.lines.size(); ++i) {
        const Line& ln = real.lines[i];
        os << "line " << i << " " << ln.y << " " << ln.theta << "\n";
        for (double t : ln.rsu) os << "rsu " << i << " " << t << "\n";
        for (double t : ln.vt) os << "vt " << i << " " << t << "\n";
    }
}

inline NetworkRealization read_realization(std::istream& is) {
    NetworkRealization real;
    std::string tag;
    while (is >> tag) {
        if (tag == "window") {
            is >> real.window_radius;
        } else if (tag == "line") {
            size_t idx;
            Line ln;
            is >> idx >> ln.y >> ln.theta;
            if (idx != real.lines.size())
                throw std::runtime_error("read_realization: out-of-order line record");
            real.lines.push_back(std::move(ln));
        } else if (tag == "rsu" || tag == "vt") {
            size_t idx;
            double t;
            is >> idx >> t;
            if (idx >= real.lines.size())
                throw std::runtime_error("read_realization: point before its line");
            (tag == "rsu" ? real.lines[idx].rsu : real.lines[idx].vt).push_back(t);
        } else {
            throw std::runtime_error("read_realization: unknown record '" + tag + "'");
        }
    }
    return real;
}

}  // namespace plpcov
