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

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "plpcov/geometry.hpp"
#include "plpcov/model.hpp"

namespace plpcov {

// One slot's worth of fading marks, shaped like the realization's point
// lists. Links transmitted in different slots get independent epochs over
// the same point locations.
struct FadingEpoch {
    std::vector<std::vector<double>> rsu;
    std::vector<std::vector<double>> vt;
    double relay_mark = 1.0;  // fade on the dedicated relay's own signal
};

inline void draw_fading_into(FadingEpoch& f, const NetworkRealization& real, double mu,
                             std::mt19937_64& rng) {
    std::exponential_distribution<double> fade(mu);
    f.rsu.resize(real.lines.size());
    f.vt.resize(real.lines.size());
    for (size_t i = 0; i < real.lines.size(); ++i) {
        f.rsu[i].resize(real.lines[i].rsu.size());
        for (double& h : f.rsu[i]) h = fade(rng);
        f.vt[i].resize(real.lines[i].vt.size());
        for (double& h : f.vt[i]) h = fade(rng);
    }
    f.relay_mark = fade(rng);
}

inline FadingEpoch draw_fading(const NetworkRealization& real, double mu, std::mt19937_64& rng) {
    FadingEpoch f;
    draw_fading_into(f, real, mu, rng);
    return f;
}

// Total interference power at `from`: every roadside unit at power kappa and
// every transmitting vehicle at power nu, each with its epoch fade. At most
// one roadside unit (the serving one) can be excluded.
inline double total_interference(const NetworkRealization& real, const FadingEpoch& fading,
                                 const ModelParams& p, const Vec2& from,
                                 int exclude_line = -1, int exclude_point = -1) {
    double sum = 0.0;
    for (size_t li = 0; li < real.lines.size(); ++li) {
        const Line& ln = real.lines[li];
        const double c = std::cos(ln.theta), s = std::sin(ln.theta);
        const double bx = ln.y * c - from.x, by = ln.y * s - from.y;
        for (size_t pi = 0; pi < ln.rsu.size(); ++pi) {
            if (static_cast<int>(li) == exclude_line && static_cast<int>(pi) == exclude_point)
                continue;
            const double t = ln.rsu[pi];
            const double dx = bx - t * s, dy = by + t * c;
            sum += p.kappa * fading.rsu[li][pi] * path_gain(std::sqrt(dx * dx + dy * dy), p.eta);
        }
        for (size_t pi = 0; pi < ln.vt.size(); ++pi) {
            const double t = ln.vt[pi];
            const double dx = bx - t * s, dy = by + t * c;
            sum += p.nu * fading.vt[li][pi] * path_gain(std::sqrt(dx * dx + dy * dy), p.eta);
        }
    }
    return sum;
}

// Downlink from the given roadside unit to the origin. Every other unit and
// every transmitting vehicle interferes.
inline double sinr_direct(const NetworkRealization& real, const FadingEpoch& fading,
                          const ModelParams& p, const NearestRsu& serving) {
    if (!serving.found) throw std::invalid_argument("sinr_direct: no serving unit");
    const double signal = p.kappa * fading.rsu[serving.line_index][serving.point_index] *
                          path_gain(serving.distance, p.eta);
    const double interference =
        total_interference(real, fading, p, {0.0, 0.0}, serving.line_index, serving.point_index);
    return signal / (p.noise + interference);
}

// Second hop of the relay scheme: a dedicated vehicle at abscissa r1 on the
// own road transmits to the origin at power nu. No unit is excluded here:
// every roadside unit interferes with this hop, including the one that
// would have served the direct link.
inline double sinr_relay_hop(const NetworkRealization& real, const FadingEpoch& fading,
                             const ModelParams& p, double r1) {
    if (!(r1 > 0.0)) throw std::invalid_argument("sinr_relay_hop: r1 must be > 0");
    const double signal = p.nu * fading.relay_mark * path_gain(r1, p.eta);
    const double interference = total_interference(real, fading, p, {0.0, 0.0});
    return signal / (p.noise + interference);
}

struct BackhaulLink {
    double sinr = 0.0;
    double r0 = 0.0;  // distance from the relay to its serving unit
    NearestRsu serving;
};

// First hop of the relay scheme: the relay at `relay_pos` is served by its
// own nearest roadside unit; everything else interferes at the relay.
inline BackhaulLink sinr_backhaul(const NetworkRealization& real, const FadingEpoch& fading,
                                  const ModelParams& p, const Vec2& relay_pos) {
    BackhaulLink link;
    link.serving = nearest_rsu(real, relay_pos);
    if (!link.serving.found)
        throw std::runtime_error("sinr_backhaul: no roadside unit in the window");
    link.r0 = link.serving.distance;
    const double signal = p.kappa * fading.rsu[link.serving.line_index][link.serving.point_index] *
                          path_gain(link.r0, p.eta);
    const double interference = total_interference(real, fading, p, relay_pos,
                                                   link.serving.line_index,
                                                   link.serving.point_index);
    link.sinr = signal / (p.noise + interference);
    return link;
}

}  // namespace plpcov
