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
#include <stdexcept>

#include "plpcov/distributions.hpp"
#include "plpcov/laplace.hpp"

// Coverage probabilities assembled as expectations over the serving
// configuration: the distance r of the nearest roadside unit and whether it
// sits on the own line or on a cross line. Every link event factors into
// per-component Laplace transforms conditioned on that configuration, so
// each quantity here is one outer integral over r of a product of the
// transforms from laplace.hpp.

namespace plpcov {

// Kernel scales of up to two transmission slots. A zero scale switches the
// slot off. `server` is the scale at which the serving unit's own fade
// enters as interference (it does for the relay hop, which the serving unit
// does not carry); zero excludes it.
struct SlotScales {
    double rsu_a = 0.0;
    double rsu_b = 0.0;
    double veh_a = 0.0;
    double veh_b = 0.0;
    double server = 0.0;
};

// Direct link served from distance r at power kappa.
inline SlotScales direct_link_scales(const ModelParams& p, double r) {
    const double base = p.mu * p.threshold * std::pow(r, p.eta);
    SlotScales s;
    s.rsu_a = base;
    s.veh_a = base * p.nu / p.kappa;
    return s;
}

// Relay-to-destination hop over the fixed spacing r1 at power nu. The unit
// serving the (abandoned) direct link keeps transmitting, hence `server`.
inline SlotScales relay_hop_scales(const ModelParams& p, double r1) {
    const double base = p.mu * p.threshold * std::pow(r1, p.eta);
    SlotScales s;
    s.rsu_a = base * p.kappa / p.nu;
    s.veh_a = base;
    s.server = s.rsu_a;
    return s;
}

// Both slots together: direct link in slot a, relay hop in slot b, common
// point locations with independent fades.
inline SlotScales joint_link_scales(const ModelParams& p, double r, double r1) {
    const SlotScales a = direct_link_scales(p, r);
    const SlotScales b = relay_hop_scales(p, r1);
    SlotScales s;
    s.rsu_a = a.rsu_a;
    s.veh_a = a.veh_a;
    s.rsu_b = b.rsu_a;
    s.veh_b = b.veh_a;
    s.server = b.server;
    return s;
}

namespace detail {

// Sum of the rank-n line-distance densities at y over ranks 1..n_max: the
// cross-line serving branch weights each distance y by every rank it could
// hold. Grows to 2*rho as n_max increases; the gap is a Poisson upper tail.
inline double rank_weight(double rho, double y, int n_max) {
    const double lam = 2.0 * rho * y;
    if (lam > 600.0) return 0.0;  // ranks this deep are switched off anyway
    double term = 1.0, cdf = 1.0;
    for (int j = 1; j < n_max; ++j) {
        term *= lam / j;
        cdf += term;
    }
    return 2.0 * rho * std::exp(-lam) * cdf;
}

// Success-weighted serving-configuration density at distance r: the
// serving-distance decomposition (own branch plus rank-summed cross branch)
// times the conditional interference transforms and noise factors of the
// active slots. With all scales zero this is the serving-distance density
// itself.
inline double success_density(const ModelParams& p, double r, const SlotScales& s,
                              const QuadratureSpec& spec) {
    if (r <= 0.0) return 0.0;
    const QuadratureSpec mid = tighter(spec);
    const QuadratureSpec leaf = tighter(mid);
    const double lam = p.lambda_ru;

    // Cheap decaying factors first: the configuration mass e^{-2 lam r} and
    // the noise factors bound the density (the serving branch is at most
    // 2 lam (1 + (pi/2) rho r) and every transform is at most one), so once
    // they are negligible the expensive transforms are skipped. The absolute
    // floor only drops mass far below any supported tolerance.
    const double branch_bound = 2.0 * lam * (1.0 + 1.5708 * p.rho * r);
    double weight = thermal_factor(p, s.rsu_a) * thermal_factor(p, s.rsu_b) *
                    std::exp(-2.0 * lam * r);
    if (weight * branch_bound < 1e-22) return 0.0;
    weight *= void_other_lines(p, r, mid) * point_fade_lt(r, s.server, p) *
              lt_own_line(p, r, s.rsu_a, s.rsu_b, mid);
    if (weight * branch_bound < 1e-22) return 0.0;
    weight *= lt_void_lines_inside(p, r, s.rsu_a, s.rsu_b, mid) *
              lt_lines_beyond(p, r, s.rsu_a, s.rsu_b, mid) *
              lt_whole_field(p, p.lambda_vt(), s.veh_a, s.veh_b, mid);
    if (weight == 0.0) return 0.0;

    double branch = 2.0 * lam;  // own-line serving branch
    if (p.rho > 0.0) {
        // Cross-line branch in angular form: y = r sin(phi) removes the
        // chord-edge singularity of the serving-distance density.
        const auto cross = integrate(
            [&](double phi) {
                const double c = r * std::cos(phi), y = r * std::sin(phi);
                return rank_weight(p.rho, y, spec.series_n_max) *
                       std::exp(-2.0 * lam * c) *
                       lt_one_line(lam, c, y, s.rsu_a, s.rsu_b, p, leaf);
            },
            0.0, 1.57079632679489662, mid);
        branch += 2.0 * lam * r * cross.value;
    }
    return weight * branch;
}

}  // namespace detail

// Joint density in r of {direct link covered, nearest unit at distance r}.
// By stationarity this is also the backhaul law at the relay's position.
inline double coverage_density(const ModelParams& p, double r, const QuadratureSpec& spec = {}) {
    return detail::success_density(p, r, direct_link_scales(p, r), spec);
}

// Density of the nearest-unit distance with no link requirement.
inline double serving_distance_density(const ModelParams& p, double r,
                                       const QuadratureSpec& spec = {}) {
    return detail::success_density(p, r, SlotScales{}, spec);
}

// P[direct link covered, nearest unit beyond r_min].
inline double direct_coverage_tail(const ModelParams& p, double r_min,
                                   const QuadratureSpec& spec = {}) {
    return integrate([&](double r) { return coverage_density(p, r, spec); }, r_min,
                     std::numeric_limits<double>::infinity(), spec)
        .value;
}

// P[relay hop covered, nearest unit beyond r_min] for relay spacing r1.
inline double relay_hop_tail(const ModelParams& p, double r1, double r_min,
                             const QuadratureSpec& spec = {}) {
    const SlotScales s = relay_hop_scales(p, r1);
    return integrate([&](double r) { return detail::success_density(p, r, s, spec); }, r_min,
                     std::numeric_limits<double>::infinity(), spec)
        .value;
}

// P[direct link and relay hop both covered, nearest unit beyond r_min].
inline double joint_coverage_tail(const ModelParams& p, double r1, double r_min,
                                  const QuadratureSpec& spec = {}) {
    return integrate(
               [&](double r) {
                   return detail::success_density(p, r, joint_link_scales(p, r, r1), spec);
               },
               r_min, std::numeric_limits<double>::infinity(), spec)
        .value;
}

// Coverage probability of the direct (nearest-unit) service.
inline double scenario_a_coverage(const ModelParams& p, const QuadratureSpec& spec = {}) {
    return direct_coverage_tail(p, 0.0, spec);
}

// Conditional building blocks of the relayed coverage probability, each
// conditioned on the nearest unit lying beyond the relay spacing r1.
struct RelayCoverage {
    double serving_tail = 0.0;      // P[nearest unit beyond r1]
    double direct_tail = 0.0;       // P[direct covered, nearest beyond r1]
    double hop_tail = 0.0;          // P[hop covered, nearest beyond r1]
    double joint_tail = 0.0;        // P[both covered, nearest beyond r1]
    double p_hop_not_direct = 0.0;  // hop up and direct down, conditional
    double p_backhaul = 0.0;        // backhaul up with a nearer unit, conditional
    double p_direct_fail = 0.0;     // direct down, conditional
    double value = 0.0;             // relayed coverage probability
};

// Guard against a vanishing conditional denominator; the ratio is already
// meaningless well before this floor.
inline constexpr double kDirectFailFloor = 1e-6;

inline RelayCoverage relay_coverage(const ModelParams& p, double r1,
                                    const QuadratureSpec& spec = {}) {
    if (!(r1 > 0.0)) throw std::invalid_argument("relay_coverage: r1 must be > 0");
    const auto clamp01 = [](double v) { return std::clamp(v, 0.0, 1.0); };
    const QuadratureSpec mid = detail::tighter(spec);

    RelayCoverage rc;
    rc.serving_tail = nearest_distance_tail(p, r1, mid);
    rc.direct_tail = direct_coverage_tail(p, r1, spec);
    rc.hop_tail = relay_hop_tail(p, r1, r1, spec);
    rc.joint_tail = joint_coverage_tail(p, r1, r1, spec);

    const double f1 = rc.serving_tail;
    rc.p_hop_not_direct = clamp01((rc.hop_tail - rc.joint_tail) / f1);
    rc.p_direct_fail = clamp01(1.0 - rc.direct_tail / f1);

    // Backhaul success with the relay's unit nearer than the destination's:
    // the two serving distances are taken independent, with the destination
    // side keeping its stationary law.
    const double head =
        integrate([&](double w) { return coverage_density(p, w, spec); }, 0.0, r1, spec).value;
    const double weighted =
        integrate(
            [&](double w) {
                return coverage_density(p, w, spec) * nearest_distance_tail(p, w, mid);
            },
            r1, std::numeric_limits<double>::infinity(), spec)
            .value;
    rc.p_backhaul = clamp01(head + weighted / f1);

    rc.value =
        clamp01(rc.p_hop_not_direct * rc.p_backhaul / std::max(rc.p_direct_fail, kDirectFailFloor));
    return rc;
}

}  // namespace plpcov
