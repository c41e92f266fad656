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

// Command line around the library: evaluates the analytic coverage pipeline,
// runs the simulation oracle next to it, sweeps a parameter, or executes the
// validation suite. Settings come from defaults, then an optional config
// file, then flags, in that order of precedence. Exit status: 0 on success,
// the number of failed checks in validate mode, 1 when a CSV row failed
// numerically, 2 on unusable inputs.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "plpcov/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "plpcov: coverage probability of a typical vehicle served by roadside units\n"
        "on a Poisson line network of roads, directly or through one relay hop.\n"};
    std::string config_path, mode, sweep, out;
    std::uint64_t seed = 0;
    long long drops = 0;
    int jobs = 0;
    bool quiet = false;
    app.add_option("--config", config_path, "key = value configuration file")
        ->check(CLI::ExistingFile);
    app.add_option("--mode", mode, "analytic | mc | validate | sweep (default analytic)");
    app.add_option("--sweep", sweep,
                   "swept variable as VAR:FROM:TO:STEP with VAR one of\n"
                   "threshold_db, lambda_ru, rho, r1 (implies nothing; use --mode sweep)");
    app.add_option("--out", out, "write the CSV artifact to this path instead of stdout");
    app.add_option("--seed", seed, "base seed for the simulation streams");
    app.add_option("--drops", drops, "simulated realizations per estimate");
    app.add_option("--jobs", jobs, "worker threads (results do not depend on this)");
    app.add_flag("--quiet", quiet, "suppress progress and per-row failure notes");
    CLI11_PARSE(app, argc, argv);

    plpcov::RunSpec spec;
    try {
        if (!config_path.empty()) plpcov::apply_config(spec, plpcov::parse_config_file(config_path));
        if (app.count("--mode") > 0) spec.mode = plpcov::parse_run_mode(mode);
        if (app.count("--sweep") > 0) spec.sweep = plpcov::parse_sweep(sweep);
        if (app.count("--out") > 0) spec.out = out;
        if (app.count("--seed") > 0) spec.mc.seed = seed;
        if (app.count("--drops") > 0) {
            spec.mc.drops = drops;
            spec.drops_overridden = true;
        }
        if (app.count("--jobs") > 0) spec.mc.jobs = jobs;
        if (quiet) spec.quiet = true;
        if (spec.mode != plpcov::RunMode::validate) spec.validate();
    } catch (const std::exception& e) {
        std::cerr << "plpcov: " << e.what() << '\n';
        return 2;
    }

    try {
        if (!spec.out.empty()) {
            std::ofstream file(spec.out);
            if (!file) {
                std::cerr << "plpcov: cannot write to '" << spec.out << "'\n";
                return 2;
            }
            return plpcov::run(spec, file, std::cerr);
        }
        return plpcov::run(spec, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "plpcov: " << e.what() << '\n';
        return 2;
    }
}
