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

#include "plpcov/model.hpp"
#include "plpcov/quadrature.hpp"

namespace plpcov {

// Erlang density with shape n and rate beta, computed in log space.
inline double erlang_pdf(int n, double beta, double y) {
    if (n < 1) throw std::invalid_argument("erlang_pdf: n must be >= 1");
    if (y < 0.0) return 0.0;
    if (y == 0.0) return n == 1 ? beta : 0.0;
    return std::exp(n * std::log(beta) + (n - 1) * std::log(y) - beta * y -
                    std::lgamma(static_cast<double>(n)));
}

inline double erlang_cdf(int n, double beta, double y) {
    if (n < 1) throw std::invalid_argument("erlang_cdf: n must be >= 1");
    if (y <= 0.0) return 0.0;
    // 1 - e^{-by} sum_{m<n} (by)^m / m!
    double term = 1.0, partial = 1.0;
    const double by = beta * y;
    for (int m = 1; m < n; ++m) {
        term *= by / m;
        partial += term;
    }
    return 1.0 - std::exp(-by) * partial;
}

// Distance from the observer to the n-th nearest other line: the
// perpendicular-distance process is Poisson with rate 2*rho.
inline double pdf_yn(const ModelParams& p, int n, double y) {
    return erlang_pdf(n, 2.0 * p.rho, y);
}

inline double cdf_yn(const ModelParams& p, int n, double y) {
    return erlang_cdf(n, 2.0 * p.rho, y);
}

// Nearest-point distance on the observer's own line (a 1D Poisson process
// of rate lambda_ru on both sides).
inline double pdf_serving_distance_own(const ModelParams& p, double r) {
    if (r < 0.0) return 0.0;
    return 2.0 * p.lambda_ru * std::exp(-2.0 * p.lambda_ru * r);
}

inline double cdf_serving_distance_own(const ModelParams& p, double r) {
    if (r <= 0.0) return 0.0;
    return 1.0 - std::exp(-2.0 * p.lambda_ru * r);
}

// Nearest-point distance on a line at perpendicular distance y: the chord
// coordinate sqrt(r^2 - y^2) is Exp(2*lambda_ru) distributed.
inline double pdf_serving_distance_cross(const ModelParams& p, double r, double y) {
    if (y < 0.0) throw std::invalid_argument("pdf_serving_distance_cross: y must be >= 0");
    if (r <= y) return 0.0;
    const double chord = std::sqrt(r * r - y * y);
    return 2.0 * p.lambda_ru * r * std::exp(-2.0 * p.lambda_ru * chord) / chord;
}

inline double cdf_serving_distance_cross(const ModelParams& p, double r, double y) {
    if (r <= y) return 0.0;
    return 1.0 - std::exp(-2.0 * p.lambda_ru * std::sqrt(r * r - y * y));
}

// Probability that no line other than the observer's own has a point inside
// the disk of radius r: exp(-2 rho Int_0^r (1 - e^{-2 lambda_ru c(u)}) du)
// with chord half-length c(u) = sqrt(r^2 - u^2).
inline double void_other_lines(const ModelParams& p, double r,
                               const QuadratureSpec& spec = {}) {
    if (r <= 0.0) return 1.0;
    if (p.rho == 0.0) return 1.0;
    auto f = [&p, r](double u) {
        return 1.0 - std::exp(-2.0 * p.lambda_ru * std::sqrt(r * r - u * u));
    };
    const auto integral = integrate(f, 0.0, r, spec);
    return std::exp(-2.0 * p.rho * integral.value);
}

// Tail of the overall nearest-point distance: own-line void times the
// other-lines void. Its negative derivative decomposes into the own-line
// serving density and the cross-line serving densities.
inline double nearest_distance_tail(const ModelParams& p, double r,
                                    const QuadratureSpec& spec = {}) {
    if (r <= 0.0) return 1.0;
    return std::exp(-2.0 * p.lambda_ru * r) * void_other_lines(p, r, spec);
}

// Probability that the overall nearest point lies on the observer's own
// line: the own-line nearest density integrated against the void of every
// other line inside the matching disk.
inline double prob_e0(const ModelParams& p, const QuadratureSpec& spec = {}) {
    auto f = [&](double r) {
        return pdf_serving_distance_own(p, r) * void_other_lines(p, r, spec);
    };
    return integrate(f, 0.0, std::numeric_limits<double>::infinity(), spec).value;
}

// Probability that the overall nearest point lies on a given other line at
// perpendicular distance y. Once y is fixed the value does not depend on the
// line's rank: under the line-process Palm distribution the remaining lines
// are again the full line process. Integrated in the chord coordinate so the
// edge of the support needs no special handling.
inline double prob_en_given_yn(const ModelParams& p, int n, double y,
                               const QuadratureSpec& spec = {}) {
    if (n < 1) throw std::invalid_argument("prob_en_given_yn: n must be >= 1");
    if (y < 0.0) throw std::invalid_argument("prob_en_given_yn: y must be >= 0");
    auto f = [&](double v) {
        const double r = std::sqrt(y * y + v * v);
        return 2.0 * p.lambda_ru * std::exp(-2.0 * p.lambda_ru * v) *
               std::exp(-2.0 * p.lambda_ru * r) * void_other_lines(p, r, spec);
    };
    return integrate(f, 0.0, std::numeric_limits<double>::infinity(), spec).value;
}

}  // namespace plpcov
