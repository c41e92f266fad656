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
#include <atomic>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "plpcov/channel.hpp"
#include "plpcov/geometry.hpp"
#include "plpcov/model.hpp"

// Empirical estimators for every quantity the analytic pipeline produces,
// computed from independently sampled network realizations. Each drop owns
// a private generator derived from (seed, drop index), drops are processed
// in fixed-size batches, and batch results merge in batch order, so every
// estimate is bit-identical for a given seed regardless of the job count.

namespace plpcov {

// 95% score interval for a binomial proportion.
struct WilsonInterval {
    double center = 0.5;
    double half = 0.5;
    double lo = 0.0;
    double hi = 1.0;
};

inline WilsonInterval wilson_interval(long long k, long long n,
                                      double z = 1.959963984540054) {
    WilsonInterval w;
    if (n <= 0) return w;
    const double nn = static_cast<double>(n);
    const double ph = static_cast<double>(k) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    w.center = (ph + z2 / (2.0 * nn)) / denom;
    w.half = z * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn)) / denom;
    w.lo = std::max(0.0, w.center - w.half);
    w.hi = std::min(1.0, w.center + w.half);
    return w;
}

// Kolmogorov-Smirnov distance of a sample against the uniform law on [0,1].
// Callers map samples through the hypothesised cdf first, so one statistic
// serves every target distribution.
inline double ks_statistic_uniform(std::vector<double> u) {
    if (u.empty()) throw std::invalid_argument("ks_statistic_uniform: empty sample");
    std::sort(u.begin(), u.end());
    const double n = static_cast<double>(u.size());
    double d = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double f = std::min(1.0, std::max(0.0, u[i]));
        d = std::max(d, std::max((static_cast<double>(i) + 1.0) / n - f,
                                 f - static_cast<double>(i) / n));
    }
    return d;
}

// Two-sided asymptotic p-value of the KS distance with the small-sample
// correction of Stephens.
inline double ks_pvalue(std::size_t n, double d) {
    if (n == 0) throw std::invalid_argument("ks_pvalue: empty sample");
    const double rn = std::sqrt(static_cast<double>(n));
    const double x = (rn + 0.12 + 0.11 / rn) * d;
    if (x < 0.2) return 1.0;
    double p = 0.0;
    for (int k = 1; k <= 101; ++k) {
        const double term = std::exp(-2.0 * x * x * static_cast<double>(k) * static_cast<double>(k));
        p += (k % 2 == 1 ? 2.0 : -2.0) * term;
        if (term < 1e-12) break;
    }
    return std::min(1.0, std::max(0.0, p));
}

// Piecewise-linear cdf over [lo, hi] built from a density by composite
// trapezoid, normalized to the tabulated mass. Turns samples into uniform
// variates for KS tests against laws that lack a closed-form cdf.
struct TabulatedCdf {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<double> cum;

    template <class Pdf>
    static TabulatedCdf build(Pdf&& pdf, double lo, double hi, int cells = 4000) {
        if (!(hi > lo) || cells < 1) throw std::invalid_argument("TabulatedCdf: bad grid");
        TabulatedCdf t;
        t.lo = lo;
        t.hi = hi;
        t.cum.resize(static_cast<std::size_t>(cells) + 1);
        const double h = (hi - lo) / cells;
        double prev = pdf(lo), acc = 0.0;
        t.cum[0] = 0.0;
        for (int i = 1; i <= cells; ++i) {
            const double cur = pdf(lo + h * i);
            acc += 0.5 * h * (prev + cur);
            t.cum[static_cast<std::size_t>(i)] = acc;
            prev = cur;
        }
        if (!(acc > 0.0)) throw std::invalid_argument("TabulatedCdf: zero mass");
        return t;
    }

    double operator()(double x) const {
        if (x <= lo) return 0.0;
        if (x >= hi) return 1.0;
        const double pos = (x - lo) / (hi - lo) * (static_cast<double>(cum.size()) - 1.0);
        const std::size_t i = std::min(cum.size() - 2, static_cast<std::size_t>(pos));
        const double frac = pos - static_cast<double>(i);
        return (cum[i] + (cum[i + 1] - cum[i]) * frac) / cum.back();
    }
};

struct McConfig {
    long long drops = 20000;      // independent realizations
    std::uint64_t seed = 1;       // base seed; each drop derives its own stream
    double window_radius = 10.0;  // sampling disk radius
    long long batch = 4096;       // drops per dispatch unit (fixes the merge order)
    int jobs = 1;                 // worker threads

    void validate() const {
        if (drops < 1) throw std::invalid_argument("McConfig: drops must be >= 1");
        if (!(window_radius > 0.0))
            throw std::invalid_argument("McConfig: window_radius must be > 0");
        if (batch < 1) throw std::invalid_argument("McConfig: batch must be >= 1");
        if (jobs < 1) throw std::invalid_argument("McConfig: jobs must be >= 1");
    }
};

namespace detail {

// Seed layout: each drop owns four stream slots (primary geometry, primary
// fading, backhaul geometry, backhaul fading), so no two generator streams
// in a run ever share a seed.
inline std::uint64_t geometry_seed(const McConfig& cfg, long long k) {
    return cfg.seed + 4ULL * static_cast<std::uint64_t>(k);
}

inline std::mt19937_64 fading_engine(const McConfig& cfg, long long k) {
    return std::mt19937_64(splitmix64(cfg.seed + 4ULL * static_cast<std::uint64_t>(k) + 1ULL));
}

inline std::uint64_t backhaul_geometry_seed(const McConfig& cfg, long long k) {
    return cfg.seed + 4ULL * static_cast<std::uint64_t>(k) + 2ULL;
}

inline std::mt19937_64 backhaul_fading_engine(const McConfig& cfg, long long k) {
    return std::mt19937_64(splitmix64(cfg.seed + 4ULL * static_cast<std::uint64_t>(k) + 3ULL));
}

// Runs `body(accumulator, first_drop, last_drop)` over fixed-size batches.
// Workers pull batch indices from a shared counter; results land in a vector
// indexed by batch, so the caller's in-order merge is independent of which
// worker ran which batch.
template <class Acc, class Body>
inline std::vector<Acc> run_batches(const McConfig& cfg, Body&& body) {
    const long long batches = (cfg.drops + cfg.batch - 1) / cfg.batch;
    std::vector<Acc> acc(static_cast<std::size_t>(batches));
    std::atomic<long long> next{0};
    auto worker = [&]() {
        for (;;) {
            const long long c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= batches) return;
            const long long lo = c * cfg.batch;
            const long long hi = std::min(cfg.drops, lo + cfg.batch);
            body(acc[static_cast<std::size_t>(c)], lo, hi);
        }
    };
    if (cfg.jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(cfg.jobs));
        for (int j = 0; j < cfg.jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return acc;
}

struct DropScratch {
    NetworkRealization real;
    FadingEpoch a;
    FadingEpoch b;
    FadingEpoch r;
};

}  // namespace detail

struct CoverageEstimate {
    double threshold = 0.0;
    double value = 0.0;    // success fraction within the accepted population
    double ci_half = 0.0;  // Wilson 95% half-width
    long long successes = 0;
    long long accepted = 0;
    long long total = 0;
    long long degenerate = 0;  // drops with no roadside unit in the window
};

// Fraction of drops whose nearest-unit downlink beats each threshold, with
// the serving distance restricted to rb1 > min_rb1 (0 disables the
// restriction). One epoch of fading per drop; thresholds share the drop.
inline std::vector<CoverageEstimate> mc_scenario_a(const ModelParams& p, const McConfig& cfg,
                                                   double min_rb1,
                                                   const std::vector<double>& thresholds) {
    p.validate();
    cfg.validate();
    if (thresholds.empty()) throw std::invalid_argument("mc_scenario_a: no thresholds");
    struct Acc {
        std::vector<long long> success;
        long long accepted = 0;
        long long degenerate = 0;
    };
    const std::size_t nt = thresholds.size();
    auto parts = detail::run_batches<Acc>(cfg, [&](Acc& acc, long long lo, long long hi) {
        acc.success.assign(nt, 0);
        detail::DropScratch d;
        for (long long k = lo; k < hi; ++k) {
            sample_realization_into(d.real, p, cfg.window_radius, detail::geometry_seed(cfg, k));
            const NearestRsu serving = nearest_rsu(d.real);
            if (!serving.found) {
                ++acc.degenerate;
                continue;
            }
            if (!(serving.distance > min_rb1)) continue;
            auto rng = detail::fading_engine(cfg, k);
            draw_fading_into(d.a, d.real, p.mu, rng);
            const double sinr = sinr_direct(d.real, d.a, p, serving);
            ++acc.accepted;
            for (std::size_t t = 0; t < nt; ++t)
                if (sinr > thresholds[t]) ++acc.success[t];
        }
    });
    long long accepted = 0, degenerate = 0;
    std::vector<long long> success(nt, 0);
    for (const Acc& a : parts) {
        accepted += a.accepted;
        degenerate += a.degenerate;
        for (std::size_t t = 0; t < nt; ++t) success[t] += a.success[t];
    }
    if (degenerate == cfg.drops)
        throw std::runtime_error(
            "mc_scenario_a: no roadside unit in any drop; enlarge window_radius or raise "
            "intensities");
    if (accepted == 0)
        throw std::runtime_error("mc_scenario_a: conditioning population empty; lower min_rb1");
    std::vector<CoverageEstimate> out(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        out[t].threshold = thresholds[t];
        out[t].successes = success[t];
        out[t].accepted = accepted;
        out[t].total = cfg.drops;
        out[t].degenerate = degenerate;
        out[t].value = static_cast<double>(success[t]) / static_cast<double>(accepted);
        out[t].ci_half = wilson_interval(success[t], accepted).half;
    }
    return out;
}

inline CoverageEstimate mc_scenario_a(const ModelParams& p, const McConfig& cfg,
                                      double min_rb1 = 0.0) {
    return mc_scenario_a(p, cfg, min_rb1, {p.threshold}).front();
}

struct RelayEstimate {
    double threshold = 0.0;
    long long accepted = 0;  // drops with rb1 > r1
    long long total = 0;
    long long degenerate = 0;
    long long n_not_a = 0;    // direct link failed
    long long n_b_not_a = 0;  // relay hop succeeded while the direct link failed
    long long n_rel = 0;      // backhaul succeeded with its server nearer than rb1
    double p_not_a = 0.0, ci_not_a = 0.0;
    double p_b_not_a = 0.0, ci_b_not_a = 0.0;
    double p_rel = 0.0, ci_rel = 0.0;
    double p_pipeline = 0.0, ci_pipeline = 0.0;
    bool pipeline_valid = false;  // false when the failure population is empty
};

// Relay pipeline per drop: the typical vehicle sits at the origin, the relay
// at abscissa r1 on the own road. Drops with rb1 <= r1 leave the population.
// The direct and relay-hop slots use independent fading epochs over the same
// locations. The backhaul slot runs on an independently sampled realization:
// the analytic pipeline treats the relay's serving geometry as independent
// of the typical vehicle's serving distance, and the estimator mirrors that
// reading, keeping only the drop's rb1 for the r0 < rb1 comparison. All
// thresholds share the drop.
inline std::vector<RelayEstimate> mc_relay(const ModelParams& p, const McConfig& cfg, double r1,
                                           const std::vector<double>& thresholds) {
    p.validate();
    cfg.validate();
    if (!(r1 > 0.0)) throw std::invalid_argument("mc_relay: r1 must be > 0");
    if (thresholds.empty()) throw std::invalid_argument("mc_relay: no thresholds");
    struct Acc {
        std::vector<long long> n_not_a, n_b_not_a, n_rel;
        long long accepted = 0;
        long long degenerate = 0;
    };
    const std::size_t nt = thresholds.size();
    auto parts = detail::run_batches<Acc>(cfg, [&](Acc& acc, long long lo, long long hi) {
        acc.n_not_a.assign(nt, 0);
        acc.n_b_not_a.assign(nt, 0);
        acc.n_rel.assign(nt, 0);
        detail::DropScratch d;
        NetworkRealization backhaul_real;
        for (long long k = lo; k < hi; ++k) {
            sample_realization_into(d.real, p, cfg.window_radius, detail::geometry_seed(cfg, k));
            const NearestRsu serving = nearest_rsu(d.real);
            if (!serving.found) {
                ++acc.degenerate;
                continue;
            }
            const double rb1 = serving.distance;
            if (!(rb1 > r1)) continue;
            ++acc.accepted;
            auto rng = detail::fading_engine(cfg, k);
            draw_fading_into(d.a, d.real, p.mu, rng);
            draw_fading_into(d.b, d.real, p.mu, rng);
            const double sinr_a = sinr_direct(d.real, d.a, p, serving);
            const double sinr_b = sinr_relay_hop(d.real, d.b, p, r1);

            sample_realization_into(backhaul_real, p, cfg.window_radius,
                                    detail::backhaul_geometry_seed(cfg, k));
            auto rng_r = detail::backhaul_fading_engine(cfg, k);
            draw_fading_into(d.r, backhaul_real, p.mu, rng_r);
            // A scene with no unit at all simply cannot serve the relay.
            const bool backhaul_possible = nearest_rsu(backhaul_real).found;
            BackhaulLink bh;
            if (backhaul_possible) bh = sinr_backhaul(backhaul_real, d.r, p, {r1, 0.0});

            for (std::size_t t = 0; t < nt; ++t) {
                const double T = thresholds[t];
                if (sinr_a < T) {
                    ++acc.n_not_a[t];
                    if (sinr_b > T) ++acc.n_b_not_a[t];
                }
                if (backhaul_possible && bh.sinr > T && bh.r0 < rb1) ++acc.n_rel[t];
            }
        }
    });
    long long accepted = 0, degenerate = 0;
    std::vector<long long> n_not_a(nt, 0), n_b_not_a(nt, 0), n_rel(nt, 0);
    for (const Acc& a : parts) {
        accepted += a.accepted;
        degenerate += a.degenerate;
        for (std::size_t t = 0; t < nt; ++t) {
            n_not_a[t] += a.n_not_a[t];
            n_b_not_a[t] += a.n_b_not_a[t];
            n_rel[t] += a.n_rel[t];
        }
    }
    if (accepted == 0)
        throw std::runtime_error("mc_relay: conditioning population empty; lower r1 or add drops");
    std::vector<RelayEstimate> out(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        RelayEstimate& e = out[t];
        e.threshold = thresholds[t];
        e.accepted = accepted;
        e.total = cfg.drops;
        e.degenerate = degenerate;
        e.n_not_a = n_not_a[t];
        e.n_b_not_a = n_b_not_a[t];
        e.n_rel = n_rel[t];
        const double n = static_cast<double>(accepted);
        e.p_not_a = static_cast<double>(e.n_not_a) / n;
        e.ci_not_a = wilson_interval(e.n_not_a, accepted).half;
        e.p_b_not_a = static_cast<double>(e.n_b_not_a) / n;
        e.ci_b_not_a = wilson_interval(e.n_b_not_a, accepted).half;
        e.p_rel = static_cast<double>(e.n_rel) / n;
        e.ci_rel = wilson_interval(e.n_rel, accepted).half;
        e.pipeline_valid = e.n_not_a > 0;
        if (e.pipeline_valid) {
            const double fail = e.p_not_a;
            e.p_pipeline = (e.p_b_not_a / fail) * e.p_rel;
            // First-order error propagation; additive, so it stays finite
            // when individual terms sit at zero.
            e.ci_pipeline = (e.ci_b_not_a * e.p_rel + e.p_b_not_a * e.ci_rel +
                             e.p_b_not_a * e.p_rel * e.ci_not_a / fail) /
                            fail;
        }
    }
    return out;
}

inline RelayEstimate mc_relay(const ModelParams& p, const McConfig& cfg, double r1) {
    return mc_relay(p, cfg, r1, {p.threshold}).front();
}

// Which interference component a transform estimate ranges over.
enum class Component {
    rsu_own_line,  // roadside units on the observer's own road
    rsu_field,     // every roadside unit on every road
    vt_field,      // every transmitting vehicle on every road
};

struct ScalePair {
    double a = 0.0;
    double b = 0.0;
};

// Optional conditioning: keep only drops whose overall nearest unit lies on
// the own road at distance within width/2 of rb1. A non-positive rb1 keeps
// every drop; a non-positive width picks max(0.02, 2% of rb1).
struct ServingBin {
    double rb1 = 0.0;
    double width = 0.0;

    bool active() const { return rb1 > 0.0; }
    double half_width() const {
        const double w = width > 0.0 ? width : std::max(0.02, 0.02 * rb1);
        return 0.5 * w;
    }
};

struct LaplaceEstimate {
    ScalePair scales;
    double value = 0.0;
    double ci_half = 0.0;  // normal-approximation 95% half-width
};

struct LaplaceRun {
    std::vector<LaplaceEstimate> estimates;
    std::vector<double> serving_distances;  // accepted rb1 values, drop order
    long long accepted = 0;
    long long total = 0;
};

namespace detail {

// Raw two-epoch shot noise of one component: unit transmit power, fades and
// path gain only, so the result matches transforms taken in the scale
// variable. Conditioned runs exclude the serving unit.
inline void component_sums(const NetworkRealization& real, const FadingEpoch& fa,
                           const FadingEpoch& fb, Component comp, double eta, int exclude_line,
                           int exclude_point, double& ia, double& ib) {
    ia = 0.0;
    ib = 0.0;
    const bool rsu = comp != Component::vt_field;
    const std::size_t nlines = comp == Component::rsu_own_line ? 1 : real.lines.size();
    for (std::size_t i = 0; i < nlines; ++i) {
        const Line& ln = real.lines[i];
        const double c = std::cos(ln.theta), s = std::sin(ln.theta);
        const double bx = ln.y * c, by = ln.y * s;
        const std::vector<double>& pts = rsu ? ln.rsu : ln.vt;
        const std::vector<double>& ga = rsu ? fa.rsu[i] : fa.vt[i];
        const std::vector<double>& gb = rsu ? fb.rsu[i] : fb.vt[i];
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (static_cast<int>(i) == exclude_line && static_cast<int>(j) == exclude_point)
                continue;
            const double x = bx - pts[j] * s;
            const double y = by + pts[j] * c;
            const double g = path_gain_sq(x * x + y * y, eta);
            ia += ga[j] * g;
            ib += gb[j] * g;
        }
    }
}

}  // namespace detail

// Empirical mean of exp(-a I - b I') where I and I' are the same component's
// shot noise under two independent fading epochs on shared locations. All
// scale pairs reuse each drop's pair of sums.
inline LaplaceRun mc_laplace(const ModelParams& p, const McConfig& cfg, Component comp,
                             const std::vector<ScalePair>& scales, const ServingBin& bin = {}) {
    p.validate();
    cfg.validate();
    if (scales.empty()) throw std::invalid_argument("mc_laplace: no scale pairs");
    for (const ScalePair& sp : scales)
        if (sp.a < 0.0 || sp.b < 0.0)
            throw std::invalid_argument("mc_laplace: scales must be >= 0");
    struct Acc {
        std::vector<double> sum, sum_sq;
        std::vector<double> distances;
        long long accepted = 0;
    };
    const std::size_t np = scales.size();
    const bool conditioned = bin.active();
    const double half_width = conditioned ? bin.half_width() : 0.0;
    auto parts = detail::run_batches<Acc>(cfg, [&](Acc& acc, long long lo, long long hi) {
        acc.sum.assign(np, 0.0);
        acc.sum_sq.assign(np, 0.0);
        detail::DropScratch d;
        for (long long k = lo; k < hi; ++k) {
            sample_realization_into(d.real, p, cfg.window_radius, detail::geometry_seed(cfg, k));
            int exclude_line = -1, exclude_point = -1;
            if (conditioned) {
                const NearestRsu serving = nearest_rsu(d.real);
                if (!serving.found || serving.line_index != 0) continue;
                if (std::abs(serving.distance - bin.rb1) > half_width) continue;
                exclude_line = serving.line_index;
                exclude_point = serving.point_index;
                acc.distances.push_back(serving.distance);
            }
            ++acc.accepted;
            auto rng = detail::fading_engine(cfg, k);
            draw_fading_into(d.a, d.real, p.mu, rng);
            draw_fading_into(d.b, d.real, p.mu, rng);
            double ia = 0.0, ib = 0.0;
            detail::component_sums(d.real, d.a, d.b, comp, p.eta, exclude_line, exclude_point,
                                   ia, ib);
            for (std::size_t j = 0; j < np; ++j) {
                const double v = std::exp(-scales[j].a * ia - scales[j].b * ib);
                acc.sum[j] += v;
                acc.sum_sq[j] += v * v;
            }
        }
    });
    LaplaceRun run;
    run.total = cfg.drops;
    std::vector<double> sum(np, 0.0), sum_sq(np, 0.0);
    for (const Acc& a : parts) {
        run.accepted += a.accepted;
        run.serving_distances.insert(run.serving_distances.end(), a.distances.begin(),
                                     a.distances.end());
        for (std::size_t j = 0; j < np; ++j) {
            sum[j] += a.sum[j];
            sum_sq[j] += a.sum_sq[j];
        }
    }
    if (conditioned && run.accepted * 1000 < run.total)
        throw std::runtime_error(
            "mc_laplace: conditioning acceptance rate below 1e-3; widen the serving bin");
    if (run.accepted == 0) throw std::runtime_error("mc_laplace: no accepted drops");
    run.estimates.resize(np);
    const double n = static_cast<double>(run.accepted);
    for (std::size_t j = 0; j < np; ++j) {
        LaplaceEstimate& e = run.estimates[j];
        e.scales = scales[j];
        e.value = sum[j] / n;
        const double var = std::max(0.0, sum_sq[j] / n - e.value * e.value);
        e.ci_half = run.accepted > 1 ? 1.959963984540054 * std::sqrt(var / (n - 1.0)) : 1.0;
    }
    return run;
}

struct DistributionSamples {
    std::vector<double> y1, y2;            // nearest and second-nearest other-road distances
    std::vector<double> own_serving;       // rb1 when the own road serves
    std::vector<double> rank1_y, rank1_r;  // (road distance, rb1) when the nearest other road serves
    std::vector<long long> rank_counts;    // serving-road rank frequencies, index 0 = own road
    long long total = 0;
    long long degenerate = 0;
};

// Raw geometric samples for goodness-of-fit tests. Fading never enters, so
// a caller that only needs these laws can zero the vehicle intensity to
// skip sampling the vehicle field.
inline DistributionSamples mc_distributions(const ModelParams& p, const McConfig& cfg) {
    p.validate();
    cfg.validate();
    struct Acc {
        DistributionSamples s;
    };
    auto parts = detail::run_batches<Acc>(cfg, [&](Acc& acc, long long lo, long long hi) {
        NetworkRealization real;
        for (long long k = lo; k < hi; ++k) {
            sample_realization_into(real, p, cfg.window_radius, detail::geometry_seed(cfg, k));
            ++acc.s.total;
            if (real.lines.size() >= 2) acc.s.y1.push_back(real.lines[1].y);
            if (real.lines.size() >= 3) acc.s.y2.push_back(real.lines[2].y);
            const NearestRsu n = nearest_rsu(real);
            if (!n.found) {
                ++acc.s.degenerate;
                continue;
            }
            const std::size_t rank = static_cast<std::size_t>(n.line_index);
            if (acc.s.rank_counts.size() <= rank) acc.s.rank_counts.resize(rank + 1, 0);
            ++acc.s.rank_counts[rank];
            if (rank == 0) {
                acc.s.own_serving.push_back(n.distance);
            } else if (rank == 1) {
                acc.s.rank1_y.push_back(real.lines[1].y);
                acc.s.rank1_r.push_back(n.distance);
            }
        }
    });
    DistributionSamples out;
    for (const Acc& a : parts) {
        out.total += a.s.total;
        out.degenerate += a.s.degenerate;
        auto cat = [](std::vector<double>& dst, const std::vector<double>& src) {
            dst.insert(dst.end(), src.begin(), src.end());
        };
        cat(out.y1, a.s.y1);
        cat(out.y2, a.s.y2);
        cat(out.own_serving, a.s.own_serving);
        cat(out.rank1_y, a.s.rank1_y);
        cat(out.rank1_r, a.s.rank1_r);
        if (out.rank_counts.size() < a.s.rank_counts.size())
            out.rank_counts.resize(a.s.rank_counts.size(), 0);
        for (std::size_t i = 0; i < a.s.rank_counts.size(); ++i)
            out.rank_counts[i] += a.s.rank_counts[i];
    }
    return out;
}

}  // namespace plpcov
