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
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace plpcov {

struct QuadratureSpec {
    double rel_tol = 1e-6;
    double abs_tol = 1e-9;
    int max_panels = 4000;       // subdivision budget per integral
    int points = 15;             // Gauss-Legendre points per panel
    int series_n_max = 20;       // rank-sum truncation cap
    double series_tail_tol = 1e-5;

    QuadratureSpec with_tols(double rel, double abs) const {
        QuadratureSpec s = *this;
        s.rel_tol = rel;
        s.abs_tol = abs;
        return s;
    }
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
    // Worst remaining subinterval, in the caller's coordinates.
    double worst_lo = 0.0;
    double worst_hi = 0.0;
    long evaluations = 0;
};

struct SeriesResult {
    double value = 0.0;
    int terms_used = 0;
    bool converged = false;
};

namespace detail {

// Gauss-Legendre nodes/weights on [-1, 1], computed by Newton iteration on
// the Legendre recurrence so no transcribed tables are needed.
struct GlRule {
    std::vector<double> x;  // nodes, symmetric
    std::vector<double> w;  // weights
};

inline GlRule make_gl_rule(int n) {
    GlRule r;
    r.x.resize(n);
    r.w.resize(n);
    const double pi = 3.14159265358979323846;
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess for the i-th positive root.
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        r.w[n - 1 - i] = r.w[i];
    }
    return r;
}

inline const GlRule& gl_rule(int n) {
    static const std::array<GlRule, 33> cache = [] {
        std::array<GlRule, 33> c{};
        for (int k = 2; k <= 32; ++k) c[k] = make_gl_rule(k);
        return c;
    }();
    if (n < 2 || n > 32) throw std::invalid_argument("gl_rule: points must be in [2, 32]");
    return cache[n];
}

template <class F>
double gl_panel(const F& f, double a, double b, const GlRule& rule, long& evals) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double acc = 0.0;
    for (size_t i = 0; i < rule.x.size(); ++i) {
        const double xi = c + h * rule.x[i];
        const double v = f(xi);
        if (!std::isfinite(v))
            throw std::domain_error("integrate: non-finite integrand at x = " + std::to_string(xi));
        acc += rule.w[i] * v;
    }
    evals += static_cast<long>(rule.x.size());
    return acc * h;
}

struct Panel {
    double a, b;
    double left, right;  // the two half-panel estimates
    double err;          // |left + right - one-shot|
    std::uint64_t id;
    double fine() const { return left + right; }
};

struct PanelWorse {
    bool operator()(const Panel& p, const Panel& q) const {
        if (p.err != q.err) return p.err < q.err;
        return p.id > q.id;  // deterministic tie-break
    }
};

// Adaptive two-level Gauss-Legendre on a finite interval.
template <class F>
IntegralResult adaptive_finite(const F& f, double a, double b, const QuadratureSpec& spec) {
    IntegralResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    const GlRule& rule = gl_rule(spec.points);
    long evals = 0;
    std::uint64_t next_id = 0;

    double total = 0.0, errsum = 0.0;
    auto make_panel = [&](double lo, double hi, double coarse) {
        const double mid = 0.5 * (lo + hi);
        const double left = gl_panel(f, lo, mid, rule, evals);
        const double right = gl_panel(f, mid, hi, rule, evals);
        Panel p{lo, hi, left, right, std::abs(left + right - coarse), next_id++};
        total += p.fine();
        errsum += p.err;
        return p;
    };

    std::vector<Panel> heap;
    std::vector<Panel> stuck;  // unsplittable at double resolution
    const int seed_panels = 4;
    for (int i = 0; i < seed_panels; ++i) {
        const double lo = a + (b - a) * i / seed_panels;
        const double hi = a + (b - a) * (i + 1) / seed_panels;
        heap.push_back(make_panel(lo, hi, gl_panel(f, lo, hi, rule, evals)));
    }
    std::make_heap(heap.begin(), heap.end(), PanelWorse{});

    int n_panels = seed_panels;
    while (true) {
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
        if (errsum <= tol || heap.empty() || n_panels >= spec.max_panels) {
            // Recompute the totals once in container order for the report.
            double v = 0.0, e = 0.0;
            const Panel* worst = nullptr;
            for (const Panel& p : heap) {
                v += p.fine(); e += p.err;
                if (!worst || p.err > worst->err) worst = &p;
            }
            for (const Panel& p : stuck) {
                v += p.fine(); e += p.err;
                if (!worst || p.err > worst->err) worst = &p;
            }
            res.value = v;
            res.error_estimate = e;
            res.converged = e <= std::max(spec.abs_tol, spec.rel_tol * std::abs(v));
            res.evaluations = evals;
            if (worst) { res.worst_lo = worst->a; res.worst_hi = worst->b; }
            return res;
        }
        std::pop_heap(heap.begin(), heap.end(), PanelWorse{});
        Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            stuck.push_back(worst);
            continue;
        }
        total -= worst.fine();
        errsum -= worst.err;
        // Children reuse the parent's half-panel values as their coarse pass.
        heap.push_back(make_panel(worst.a, mid, worst.left));
        std::push_heap(heap.begin(), heap.end(), PanelWorse{});
        heap.push_back(make_panel(mid, worst.b, worst.right));
        std::push_heap(heap.begin(), heap.end(), PanelWorse{});
        ++n_panels;
    }
}

}  // namespace detail

// Integrate f over [a, b]; b may be +infinity, mapped through
// x = a + t/(1-t) onto t in [0, 1).
template <class F>
IntegralResult integrate(const F& f, double a, double b, const QuadratureSpec& spec = {}) {
    if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
    if (std::isinf(b)) {
        auto g = [&f, a](double t) {
            const double om = 1.0 - t;
            const double x = a + t / om;
            return f(x) / (om * om);
        };
        IntegralResult r = detail::adaptive_finite(g, 0.0, 1.0, spec);
        // Map the worst subinterval back to x coordinates.
        auto back = [a](double t) { return t >= 1.0 ? std::numeric_limits<double>::infinity() : a + t / (1.0 - t); };
        r.worst_lo = back(r.worst_lo);
        r.worst_hi = back(r.worst_hi);
        return r;
    }
    return detail::adaptive_finite(f, a, b, spec);
}

// Sum term(1) + term(2) + ... until two consecutive terms fall below
// series_tail_tol relative to the running sum, or series_n_max is hit
// (in which case the result is flagged unconverged).
template <class F>
SeriesResult sum_ranks(const F& term, const QuadratureSpec& spec = {}) {
    SeriesResult r;
    int small_streak = 0;
    for (int n = 1; n <= spec.series_n_max; ++n) {
        const double t = term(n);
        if (!std::isfinite(t))
            throw std::domain_error("sum_ranks: non-finite term at rank " + std::to_string(n));
        r.value += t;
        r.terms_used = n;
        if (std::abs(t) <= spec.series_tail_tol * std::abs(r.value)) {
            if (++small_streak >= 2 && n >= 2) {
                r.converged = true;
                return r;
            }
        } else {
            small_streak = 0;
        }
    }
    r.converged = false;
    return r;
}

}  // namespace plpcov
