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
#include <complex>

#include "plpcov/model.hpp"
#include "plpcov/quadrature.hpp"

// Laplace transforms of the interference seen at the origin, conditioned on
// the serving configuration. A point transmitting in two slots carries
// independent fades, so its expectation factors per slot; passing a slot
// scale of zero switches that slot off. All transforms are per whole line
// (both half-axes), hence the factors of two on the line densities.

namespace plpcov {

// Laplace transform of one exponentially faded interferer at distance d
// under the channel scale s: E[e^{-s h d^-eta}] = mu / (mu + s d^-eta).
inline double point_fade_lt(double d, double s, const ModelParams& p) {
    if (s <= 0.0) return 1.0;
    return p.mu / (p.mu + s * path_gain(d, p.eta));
}

// Expected attenuation deficit of one point at planar offset (x, y)
// transmitting in up to two independently faded slots.
inline double fade_deficit(double x, double y, double s_a, double s_b, const ModelParams& p) {
    const double d2 = x * x + y * y;
    if (d2 == 0.0) return (s_a > 0.0 || s_b > 0.0) ? 1.0 : 0.0;
    const double g = path_gain_sq(d2, p.eta);
    double keep = 1.0;
    if (s_a > 0.0) keep *= p.mu / (p.mu + s_a * g);
    if (s_b > 0.0) keep *= p.mu / (p.mu + s_b * g);
    return 1.0 - keep;
}

// Integral of the deficit along one half-line at perpendicular distance y,
// starting at abscissa c. Converges for eta > 1.
//
// Two active slots reduce exactly to single-slot tails: with the per-slot
// deficit S(s) = s g / (mu + s g) one has
//   1 - (1 - S(a))(1 - S(b)) = (b S(b) - a S(a)) / (b - a),
// and the single-slot tail has closed forms for eta = 2 and eta = 4 (the
// quartic splits over conjugate complex poles). Everything else integrates
// numerically.
inline double deficit_tail(double c, double y, double s_a, double s_b, const ModelParams& p,
                           const QuadratureSpec& spec = {}) {
    if (s_a <= 0.0 && s_b <= 0.0) return 0.0;
    if (s_a > 0.0 && s_b > 0.0) {
        const double lo = std::min(s_a, s_b), hi = std::max(s_a, s_b);
        if (hi - lo > 1e-9 * hi)
            return (hi * deficit_tail(c, y, hi, 0.0, p, spec) -
                    lo * deficit_tail(c, y, lo, 0.0, p, spec)) /
                   (hi - lo);
        // nearly equal scales: the reduction cancels, integrate directly
    } else {
        const double s = std::max(s_a, s_b);
        if (p.eta == 2.0) {
            const double w = std::sqrt(y * y + s / p.mu);
            return (s / p.mu) / w * (1.57079632679489662 - std::atan(c / w));
        }
        if (p.eta == 4.0) {
            const double k2 = std::sqrt(s / p.mu);
            const std::complex<double> beta = std::sqrt(std::complex<double>(y * y, -k2));
            return k2 * std::imag((1.57079632679489662 - std::atan(c / beta)) / beta);
        }
    }
    return integrate(
               [&](double x) { return fade_deficit(x, y, s_a, s_b, p); }, c,
               std::numeric_limits<double>::infinity(), spec)
        .value;
}

// Laplace transform of the interference from one line at perpendicular
// distance y whose points form a Poisson process of density lambda outside
// the chord interval (-c, c).
inline double lt_one_line(double lambda, double c, double y, double s_a, double s_b,
                          const ModelParams& p, const QuadratureSpec& spec = {}) {
    if (lambda <= 0.0) return 1.0;
    return std::exp(-2.0 * lambda * deficit_tail(c, y, s_a, s_b, p, spec));
}

namespace detail {

// Nested integrals run tighter than their callers so adaptive refinement in
// the outer variable is not chasing inner quadrature noise.
inline QuadratureSpec tighter(const QuadratureSpec& spec) {
    return spec.with_tols(std::max(spec.rel_tol * 1e-2, 1e-13),
                          std::max(spec.abs_tol * 1e-2, 1e-15));
}

}  // namespace detail

// Own-line units beyond the exclusion radius r.
inline double lt_own_line(const ModelParams& p, double r, double s_a, double s_b,
                          const QuadratureSpec& spec = {}) {
    return lt_one_line(p.lambda_ru, r, 0.0, s_a, s_b, p, spec);
}

// Units on the serving line (perpendicular distance y) beyond the serving
// chord sqrt(r^2 - y^2).
inline double lt_serving_line(const ModelParams& p, double r, double y, double s_a, double s_b,
                              const QuadratureSpec& spec = {}) {
    const double c2 = r * r - y * y;
    return lt_one_line(p.lambda_ru, c2 > 0.0 ? std::sqrt(c2) : 0.0, y, s_a, s_b, p, spec);
}

// Units on the non-serving lines that cut the disk of radius r. Those lines
// are conditioned to carry no unit inside the disk, which both tilts the
// line density by the chord void probability and removes the chord segment
// from each line's point process.
inline double lt_void_lines_inside(const ModelParams& p, double r, double s_a, double s_b,
                                   const QuadratureSpec& spec = {}) {
    if (p.rho <= 0.0 || r <= 0.0 || (s_a <= 0.0 && s_b <= 0.0)) return 1.0;
    const QuadratureSpec inner = detail::tighter(spec);
    // Angular form u = r sin(phi) of the chord integral; the direct form has
    // a square-root cusp at the disk edge that wastes adaptive panels.
    const auto exponent = integrate(
        [&](double phi) {
            const double c = r * std::cos(phi), u = r * std::sin(phi);
            return std::cos(phi) * std::exp(-2.0 * p.lambda_ru * c) *
                   (1.0 - lt_one_line(p.lambda_ru, c, u, s_a, s_b, p, inner));
        },
        0.0, 1.57079632679489662, spec);
    return std::exp(-2.0 * p.rho * r * exponent.value);
}

// Units on the lines that do not cut the disk of radius r. Unconstrained
// beyond that, so r = 0 gives the whole cross-line field.
inline double lt_lines_beyond(const ModelParams& p, double r, double s_a, double s_b,
                              const QuadratureSpec& spec = {}) {
    if (p.rho <= 0.0 || (s_a <= 0.0 && s_b <= 0.0)) return 1.0;
    const QuadratureSpec inner = detail::tighter(spec);
    const auto exponent = integrate(
        [&](double u) { return 1.0 - lt_one_line(p.lambda_ru, 0.0, u, s_a, s_b, p, inner); }, r,
        std::numeric_limits<double>::infinity(), spec);
    return std::exp(-2.0 * p.rho * exponent.value);
}

// Unconditioned whole-field transform for a per-line density lambda: the
// own line plus every cross line, nothing excluded. Used for the vehicle
// field, which is independent of the serving configuration.
inline double lt_whole_field(const ModelParams& p, double lambda, double s_a, double s_b,
                             const QuadratureSpec& spec = {}) {
    if (lambda <= 0.0 || (s_a <= 0.0 && s_b <= 0.0)) return 1.0;
    const QuadratureSpec inner = detail::tighter(spec);
    double value = lt_one_line(lambda, 0.0, 0.0, s_a, s_b, p, spec);
    if (p.rho > 0.0) {
        const auto exponent = integrate(
            [&](double u) { return 1.0 - lt_one_line(lambda, 0.0, u, s_a, s_b, p, inner); }, 0.0,
            std::numeric_limits<double>::infinity(), spec);
        value *= std::exp(-2.0 * p.rho * exponent.value);
    }
    return value;
}

// Noise factor of a fade-threshold event whose RSU-slot scale is s_rsu;
// the serving power cancels so the same form covers all three links.
inline double thermal_factor(const ModelParams& p, double s_rsu) {
    if (p.noise <= 0.0 || s_rsu <= 0.0) return 1.0;
    return std::exp(-s_rsu * p.noise / p.kappa);
}

}  // namespace plpcov
