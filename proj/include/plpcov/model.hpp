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
#include <stdexcept>
#include <string>

namespace plpcov {

// Network and channel parameters. Distances are in km, densities per km,
// line density per km of perpendicular distance. The SINR threshold is
// linear here; dB conversion happens at the CLI/config boundary only.
struct ModelParams {
    double rho       = 2.0;   // line density of the road process
    double lambda_ru = 2.0;   // roadside-unit density on each line
    double lambda_v  = 10.0;  // vehicle density on each line
    double p1        = 0.2;   // fraction of vehicles transmitting
    double mu        = 1.0;   // exponential fading rate (mean power 1/mu)
    double eta       = 4.0;   // path-loss exponent
    double threshold = 1.0;   // SINR threshold, linear
    double noise     = 17.7445678;  // thermal noise power
    double kappa     = 1.0;   // roadside-unit transmit power
    double nu        = 0.1;   // vehicle transmit power

    // Density of transmitting vehicles per line.
    double lambda_vt() const { return p1 * lambda_v; }

    void validate() const {
        auto fail = [](const std::string& m) { throw std::invalid_argument("ModelParams: " + m); };
        if (!(rho >= 0.0) || !std::isfinite(rho)) fail("rho must be finite and >= 0");
        if (!(lambda_ru > 0.0)) fail("lambda_ru must be > 0");
        if (!(lambda_v >= 0.0)) fail("lambda_v must be >= 0");
        if (!(p1 >= 0.0 && p1 <= 1.0)) fail("p1 must lie in [0, 1]");
        if (!(mu > 0.0)) fail("mu must be > 0");
        if (!(eta > 1.0)) fail("eta must be > 1 for line integrals to converge");
        if (rho > 0.0 && !(eta > 2.0)) fail("eta must be > 2 when cross lines are present");
        if (!(threshold > 0.0)) fail("threshold must be > 0");
        if (!(noise >= 0.0)) fail("noise must be >= 0");
        if (!(kappa > 0.0)) fail("kappa must be > 0");
        if (!(nu > 0.0)) fail("nu must be > 0");
    }
};

// Laplace-argument scales for the three links. Each scale multiplies a
// unit-power interference sum; transmit-power ratios are absorbed here.
//   backhaul_*: RSU -> relay link at distance r0 (serving power kappa)
//   relay_*:    relay -> destination link at distance r1 (serving power nu)
//   direct_*:   RSU -> destination link at distance rb1 (serving power kappa)
// The _rsu member scales RSU interference (power kappa), _veh scales
// transmitting-vehicle interference (power nu).
struct SinrScales {
    double backhaul_rsu = 0.0;  // mu*T*r0^eta
    double backhaul_veh = 0.0;  // nu*mu*T*r0^eta/kappa
    double relay_rsu    = 0.0;  // kappa*mu*T*r1^eta/nu
    double relay_veh    = 0.0;  // mu*T*r1^eta
    double direct_rsu   = 0.0;  // mu*T*rb1^eta
    double direct_veh   = 0.0;  // nu*mu*T*rb1^eta/kappa
};

// Power path loss d^{-eta}, with fast paths for the common exponents, and
// the squared-distance form used on hot analytic paths to skip the sqrt.
inline double path_gain(double distance, double eta) {
    if (eta == 4.0) {
        const double d2 = distance * distance;
        return 1.0 / (d2 * d2);
    }
    if (eta == 2.0) return 1.0 / (distance * distance);
    if (eta == 3.0) return 1.0 / (distance * distance * distance);
    return std::pow(distance, -eta);
}

inline double path_gain_sq(double d2, double eta) {
    if (eta == 4.0) return 1.0 / (d2 * d2);
    if (eta == 2.0) return 1.0 / d2;
    return std::pow(d2, -0.5 * eta);
}

inline SinrScales derive_scales(const ModelParams& p, double r0, double r1, double rb1) {
    if (!(r0 >= 0.0)) throw std::invalid_argument("derive_scales: r0 must be >= 0");
    if (!(r1 > 0.0)) throw std::invalid_argument("derive_scales: r1 must be > 0");
    if (!(rb1 > r1)) throw std::invalid_argument("derive_scales: rb1 must exceed r1");
    const double base0 = p.mu * p.threshold * std::pow(r0, p.eta);
    const double base1 = p.mu * p.threshold * std::pow(r1, p.eta);
    const double baseb = p.mu * p.threshold * std::pow(rb1, p.eta);
    SinrScales s;
    s.backhaul_rsu = base0;
    s.backhaul_veh = base0 * p.nu / p.kappa;
    s.relay_rsu    = base1 * p.kappa / p.nu;
    s.relay_veh    = base1;
    s.direct_rsu   = baseb;
    s.direct_veh   = baseb * p.nu / p.kappa;
    return s;
}

}  // namespace plpcov
