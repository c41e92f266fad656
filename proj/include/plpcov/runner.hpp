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

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "plpcov/config.hpp"
#include "plpcov/validation.hpp"

// Run orchestration behind the command line: a parsed configuration plus
// overrides becomes a RunSpec, and each mode renders a CSV artifact.
// Artifacts are deterministic: with a fixed seed the bytes are identical
// across repeat runs and across worker counts, because parallel work is
// partitioned by fixed index and merged in index order.

namespace plpcov {

enum class RunMode { analytic, mc, validate, sweep };

inline RunMode parse_run_mode(const std::string& s) {
    if (s == "analytic") return RunMode::analytic;
    if (s == "mc") return RunMode::mc;
    if (s == "validate") return RunMode::validate;
    if (s == "sweep") return RunMode::sweep;
    throw std::invalid_argument("unknown mode '" + s +
                                "' (expected analytic, mc, validate or sweep)");
}

// A swept variable: "VAR:FROM:TO:STEP" with VAR one of threshold_db,
// lambda_ru, rho, r1. Endpoints are inclusive.
struct SweepSpec {
    std::string variable;
    double from = 0.0;
    double to = 0.0;
    double step = 0.0;

    bool active() const { return !variable.empty(); }
};

inline SweepSpec parse_sweep(const std::string& text) {
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("bad sweep '" + text + "': " + why +
                                    " (expected VAR:FROM:TO:STEP)");
    };
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 4) fail("need four ':'-separated fields");
    SweepSpec s;
    s.variable = parts[0];
    if (s.variable != "threshold_db" && s.variable != "lambda_ru" && s.variable != "rho" &&
        s.variable != "r1")
        fail("variable must be threshold_db, lambda_ru, rho or r1");
    try {
        s.from = detail::parse_double(parts[1]);
        s.to = detail::parse_double(parts[2]);
        s.step = detail::parse_double(parts[3]);
    } catch (const std::exception&) {
        fail("fields after the variable must be numbers");
    }
    if (!(s.step > 0.0)) fail("step must be > 0");
    if (s.to < s.from) fail("TO must not be below FROM");
    return s;
}

inline std::vector<double> sweep_points(const SweepSpec& s) {
    const long long n = static_cast<long long>(std::floor((s.to - s.from) / s.step + 1e-9)) + 1;
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) xs.push_back(s.from + static_cast<double>(i) * s.step);
    return xs;
}

struct RunSpec {
    RunMode mode = RunMode::analytic;
    SweepSpec sweep;
    std::string out;  // empty writes to stdout
    bool quiet = false;
    double r1 = 0.1;
    ModelParams params;
    McConfig mc;
    QuadratureSpec quad;
    bool drops_overridden = false;  // validate mode rescales its budgets on this

    void validate() const {
        params.validate();
        mc.validate();
        if (!(r1 > 0.0)) throw std::invalid_argument("RunSpec: r1 must be > 0");
        if (mode == RunMode::sweep && !sweep.active())
            throw std::invalid_argument("RunSpec: sweep mode needs a sweep variable");
    }
};

// Applies parsed key=value pairs onto a RunSpec. Unknown keys are errors so
// typos never silently fall back to defaults. The threshold enters in dB
// and is converted to linear exactly once, here.
inline void apply_config(RunSpec& spec, const ConfigMap& cfg) {
    using detail::to_bool;
    using detail::to_count;
    using detail::to_double;
    using detail::to_seed;
    for (const auto& [key, e] : cfg) {
        if (key == "rho")
            spec.params.rho = to_double(key, e);
        else if (key == "lambda_ru")
            spec.params.lambda_ru = to_double(key, e);
        else if (key == "lambda_v")
            spec.params.lambda_v = to_double(key, e);
        else if (key == "p1")
            spec.params.p1 = to_double(key, e);
        else if (key == "mu")
            spec.params.mu = to_double(key, e);
        else if (key == "eta")
            spec.params.eta = to_double(key, e);
        else if (key == "threshold_db")
            spec.params.threshold = db_to_linear(to_double(key, e));
        else if (key == "noise")
            spec.params.noise = to_double(key, e);
        else if (key == "kappa")
            spec.params.kappa = to_double(key, e);
        else if (key == "nu")
            spec.params.nu = to_double(key, e);
        else if (key == "r1")
            spec.r1 = to_double(key, e);
        else if (key == "window_radius")
            spec.mc.window_radius = to_double(key, e);
        else if (key == "drops") {
            spec.mc.drops = to_count(key, e);
            spec.drops_overridden = true;
        } else if (key == "seed")
            spec.mc.seed = to_seed(key, e);
        else if (key == "batch")
            spec.mc.batch = to_count(key, e);
        else if (key == "jobs")
            spec.mc.jobs = static_cast<int>(to_count(key, e));
        else if (key == "quad_rel_tol")
            spec.quad.rel_tol = to_double(key, e);
        else if (key == "quad_abs_tol")
            spec.quad.abs_tol = to_double(key, e);
        else if (key == "series_n_max")
            spec.quad.series_n_max = static_cast<int>(to_count(key, e));
        else if (key == "mode")
            spec.mode = parse_run_mode(e.value);
        else if (key == "sweep")
            spec.sweep = parse_sweep(e.value);
        else if (key == "out")
            spec.out = e.value;
        else if (key == "quiet")
            spec.quiet = to_bool(key, e);
        else
            throw std::invalid_argument("line " + std::to_string(e.line) + ": unknown key '" +
                                        key + "'");
    }
}

inline void apply_sweep_value(RunSpec& spec, const std::string& variable, double x) {
    if (variable == "threshold_db")
        spec.params.threshold = db_to_linear(x);
    else if (variable == "lambda_ru")
        spec.params.lambda_ru = x;
    else if (variable == "rho")
        spec.params.rho = x;
    else if (variable == "r1")
        spec.r1 = x;
    else
        throw std::invalid_argument("unknown sweep variable '" + variable + "'");
}

namespace detail {

inline std::string fmt10(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

inline std::string csv_safe(std::string s) {
    for (char& ch : s)
        if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
    return s;
}

// Index-parallel loop with deterministic output slots: fn(i) must write
// only to position i of pre-sized storage.
template <class Fn>
inline void parallel_for(std::size_t n, int jobs, Fn&& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const int workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(jobs), n));
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
}

inline std::string input_columns() {
    return "rho,lambda_ru,lambda_v,p1,mu,eta,threshold_db,noise,kappa,nu,r1";
}

inline std::string input_values(const RunSpec& s) {
    const ModelParams& p = s.params;
    std::string row;
    for (double v : {p.rho, p.lambda_ru, p.lambda_v, p.p1, p.mu, p.eta,
                     linear_to_db(p.threshold), p.noise, p.kappa, p.nu, s.r1}) {
        if (!row.empty()) row += ',';
        row += fmt10(v);
    }
    return row;
}

struct RowResult {
    std::string text;
    std::string note;  // per-row failure note for the log, empty when clean
};

}  // namespace detail

inline std::string analytic_csv_header() {
    return detail::input_columns() +
           ",coverage_direct,serving_tail,p_hop_not_direct,p_backhaul,p_direct_fail,"
           "relay_coverage,status\n";
}

inline std::string mc_csv_header() {
    return detail::input_columns() +
           ",drops,seed,window_radius"
           ",coverage_direct,serving_tail,p_hop_not_direct,p_backhaul,p_direct_fail,"
           "relay_coverage"
           ",coverage_direct_mc,coverage_direct_ci"
           ",p_hop_not_direct_mc,p_hop_not_direct_ci"
           ",p_backhaul_mc,p_backhaul_ci"
           ",p_direct_fail_mc,p_direct_fail_ci"
           ",relay_coverage_mc,relay_coverage_ci,status\n";
}

namespace detail {

// One analytic row. Numeric failures become a NaN-filled row plus a note,
// so a sweep never aborts halfway.
inline RowResult analytic_csv_row(const RunSpec& spec) {
    RowResult row;
    row.text = input_values(spec);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    try {
        spec.validate();
        const double direct = scenario_a_coverage(spec.params, spec.quad);
        const RelayCoverage rc = relay_coverage(spec.params, spec.r1, spec.quad);
        for (double v : {direct, rc.serving_tail, rc.p_hop_not_direct, rc.p_backhaul,
                         rc.p_direct_fail, rc.value})
            row.text += "," + fmt10(v);
        row.text += ",ok\n";
    } catch (const std::exception& e) {
        for (int i = 0; i < 6; ++i) row.text += "," + fmt10(nan);
        row.text += "," + csv_safe(e.what()) + "\n";
        row.note = e.what();
    }
    return row;
}

inline RowResult mc_csv_row(const RunSpec& spec) {
    RowResult row;
    row.text = input_values(spec);
    row.text += "," + std::to_string(spec.mc.drops) + "," + std::to_string(spec.mc.seed) + "," +
                fmt10(spec.mc.window_radius);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    try {
        spec.validate();
        const double direct = scenario_a_coverage(spec.params, spec.quad);
        const RelayCoverage rc = relay_coverage(spec.params, spec.r1, spec.quad);
        const CoverageEstimate cov = mc_scenario_a(spec.params, spec.mc);
        const std::vector<RelayEstimate> rel =
            mc_relay(spec.params, spec.mc, spec.r1, {spec.params.threshold});
        const RelayEstimate& re = rel.front();
        for (double v : {direct, rc.serving_tail, rc.p_hop_not_direct, rc.p_backhaul,
                         rc.p_direct_fail, rc.value, cov.value, cov.ci_half, re.p_b_not_a,
                         re.ci_b_not_a, re.p_rel, re.ci_rel, re.p_not_a, re.ci_not_a,
                         re.p_pipeline, re.ci_pipeline})
            row.text += "," + fmt10(v);
        row.text += ",ok\n";
    } catch (const std::exception& e) {
        for (int i = 0; i < 16; ++i) row.text += "," + fmt10(nan);
        row.text += "," + csv_safe(e.what()) + "\n";
        row.note = e.what();
    }
    return row;
}

}  // namespace detail

// Renders the CSV artifact for the analytic, mc and sweep modes. Sweep rows
// are computed index-parallel and joined in sweep order; failure notes are
// returned in row order.
inline std::string run_to_csv(const RunSpec& spec, std::vector<std::string>* notes = nullptr) {
    if (spec.mode == RunMode::validate)
        throw std::logic_error("run_to_csv does not handle validate mode");
    if (spec.mode == RunMode::analytic || spec.mode == RunMode::mc) {
        const bool mc = spec.mode == RunMode::mc;
        const detail::RowResult row =
            mc ? detail::mc_csv_row(spec) : detail::analytic_csv_row(spec);
        if (notes && !row.note.empty()) notes->push_back(row.note);
        return (mc ? mc_csv_header() : analytic_csv_header()) + row.text;
    }
    const std::vector<double> xs = sweep_points(spec.sweep);
    std::vector<detail::RowResult> rows(xs.size());
    detail::parallel_for(xs.size(), spec.mc.jobs, [&](std::size_t i) {
        RunSpec point = spec;
        apply_sweep_value(point, spec.sweep.variable, xs[i]);
        rows[i] = detail::analytic_csv_row(point);
    });
    std::string csv = analytic_csv_header();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        csv += rows[i].text;
        if (notes && !rows[i].note.empty())
            notes->push_back(spec.sweep.variable + "=" + detail::fmt10(xs[i]) + ": " +
                             rows[i].note);
    }
    return csv;
}

// Deterministic artifacts across worker counts: the mc-mode row and an
// analytic sweep must render byte-identical CSV whether computed by one
// worker or several, and across repeat runs with the same seed.
inline CheckResult check_csv_determinism(const ModelParams& params, const ValidationBudgets& b) {
    CheckResult res;
    res.name = "csv-determinism-across-workers";
    RunSpec mc;
    mc.mode = RunMode::mc;
    mc.params = params;
    mc.r1 = 0.1;
    mc.mc.drops = 10000;
    mc.mc.seed = b.seed;
    mc.mc.window_radius = b.window_radius;
    mc.mc.jobs = 1;
    const std::string mc_one = run_to_csv(mc);
    mc.mc.jobs = 3;
    const std::string mc_three = run_to_csv(mc);
    mc.mc.jobs = 3;
    const std::string mc_again = run_to_csv(mc);

    RunSpec sweep;
    sweep.mode = RunMode::sweep;
    sweep.params = params;
    sweep.sweep = parse_sweep("threshold_db:-10:10:5");
    sweep.mc.jobs = 1;
    const std::string sw_one = run_to_csv(sweep);
    sweep.mc.jobs = 3;
    const std::string sw_three = run_to_csv(sweep);

    const bool ok = mc_one == mc_three && mc_three == mc_again && sw_one == sw_three;
    res.verdict = ok ? Verdict::pass : Verdict::fail;
    res.detail = "mc row " + std::to_string(mc_one.size()) + " bytes, sweep " +
                 std::to_string(sw_one.size()) + " bytes, workers 1 vs 3" +
                 (ok ? ", identical" : ", MISMATCH");
    return res;
}

// The full validation suite in fixed order. Progress lines go to `log` as
// each check completes (pass a null pointer to silence them).
inline std::vector<CheckResult> run_all_checks(const ModelParams& params,
                                               const ValidationBudgets& budgets,
                                               std::ostream* log = nullptr) {
    std::vector<CheckResult> results;
    auto push = [&](CheckResult r) {
        if (log) {
            const char* v = r.verdict == Verdict::pass   ? "PASS"
                            : r.verdict == Verdict::fail ? "FAIL"
                                                         : "SKIP";
            (*log) << r.name << ": " << v << " (" << r.detail << ")\n" << std::flush;
        }
        results.push_back(std::move(r));
    };
    push(check_direct_coverage(params, budgets));
    push(check_interference_transforms(params, budgets));
    const detail::RelayComparison cmp = detail::build_relay_comparison(params, budgets);
    push(check_relay_terms(params, budgets, cmp));
    push(check_relay_pipeline(params, budgets, cmp));
    push(check_geometric_laws(params, budgets));
    push(check_structural_identities(params, budgets));
    push(check_csv_determinism(params, budgets));
    return results;
}

// Entry point shared by the command line and tests. Returns the process
// exit status: 0 on success, the number of failed checks in validate mode,
// 1 when any row of a CSV artifact failed numerically.
inline int run(const RunSpec& spec, std::ostream& out, std::ostream& log) {
    if (spec.mode == RunMode::validate) {
        ValidationBudgets b;
        b.seed = spec.mc.seed;
        b.jobs = spec.mc.jobs;
        b.window_radius = spec.mc.window_radius;
        if (spec.drops_overridden) {
            b.pinned = false;
            b.drops_direct = b.drops_conditioned = b.drops_whole_field = b.drops_relay =
                b.drops_distributions = spec.mc.drops;
        }
        const std::vector<CheckResult> results =
            run_all_checks(spec.params, b, spec.quiet ? nullptr : &log);
        out << "check,verdict,detail\n";
        int fails = 0;
        for (const CheckResult& r : results) {
            const char* v = r.verdict == Verdict::pass   ? "PASS"
                            : r.verdict == Verdict::fail ? "FAIL"
                                                         : "SKIP";
            out << r.name << ',' << v << ',' << detail::csv_safe(r.detail) << '\n';
            fails += r.verdict == Verdict::fail;
        }
        return fails;
    }
    std::vector<std::string> notes;
    out << run_to_csv(spec, &notes);
    if (!spec.quiet)
        for (const std::string& n : notes) log << "row failed: " << n << '\n';
    return notes.empty() ? 0 : 1;
}

}  // namespace plpcov
