/*
 Copyright 2026 The cyclid Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "cyclid/errors.hpp"

using namespace cyclid;

int main(int argc, char** argv) {
    cli::init_logging();

    CLI::App app{"cyclid: identification of periodically time-varying systems by cyclic reformulation"};
    app.require_subcommand(1);
    app.footer(
        "Exit codes: 0 success, 1 reproduce check failed, 2 argument, 3 I/O, 4 validation,\n"
        "5 identification, 6 structure (also verify failure), 10 internal error.\n"
        "Set CYCLID_LOG=error|warn|info|debug for diagnostics on stderr (default warn).");

    cli::SimulateConfig sim;
    auto* simulate = app.add_subcommand("simulate", "Simulate a periodic model and write u/y/state CSV files");
    simulate->add_option("--model", sim.model, "pex, random, or a model JSON file")->capture_default_str();
    simulate->add_option("--input", sim.input, "random, impulse, step, or a signal CSV file")->capture_default_str();
    simulate->add_option("--output-dir", sim.output_dir, "Directory for the output files")->capture_default_str();
    simulate->add_option("-M,--period", sim.period, "Period for --model random");
    simulate->add_option("-n,--order", sim.order, "State dimension for --model random");
    simulate->add_option("--seed", sim.seed, "Seed for the input, noise (seed + 1) and random model")
        ->capture_default_str();
    simulate->add_option("--length", sim.length, "Number of samples for generated inputs")->capture_default_str();
    simulate->add_option("--noise-var", sim.noise_var, "Process noise variance (enters with the input)")
        ->capture_default_str();
    simulate->add_option("--measurement-var", sim.measurement_var, "Measurement noise variance")
        ->capture_default_str();

    cli::IdentifyConfig ident;
    double tol_structure = 0.0;
    double tol_projection = 0.0;
    auto* identify = app.add_subcommand("identify", "Identify a periodic model from input/output CSV files");
    identify->add_option("--input", ident.input, "Input signal CSV (u)")->required();
    identify->add_option("--response", ident.response, "Output signal CSV (y)")->required();
    identify->add_option("--output-dir", ident.output_dir, "Directory for model.json and diagnostics.json")
        ->capture_default_str();
    identify->add_option("-M,--period", ident.period, "Period M")->required();
    identify->add_option("-n,--order", ident.order, "Per-phase state dimension n")->required();
    identify->add_option("--hankel-rows", ident.hankel_rows, "Block rows of the Hankel matrices (0: 2*ceil(Mn/Ml)+2)")
        ->capture_default_str();
    identify->add_option("--horizon", ident.horizon, "Largest shift i, j in the structure check (0: M+n)")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    auto* tol_s = identify->add_option("--tol-structure", tol_structure,
                                       "Structure-check tolerance (default 1e-4, or 5e-2 with --noisy)");
    auto* tol_p = identify->add_option("--tol-projection", tol_projection,
                                       "Projection tolerance (default 1e-6, or 5e-2 with --noisy)");
    identify->add_flag("--noisy", ident.noisy, "Use the tolerances for noisy data");
    identify->add_flag("--allow-assumption-failure", ident.allow_assumption_failure,
                       "Continue when the shifted Markov structure check fails");

    cli::VerifyConfig ver;
    auto* verify = app.add_subcommand("verify", "Check the shifted Markov structure and round trip of a model");
    verify->add_option("--model", ver.model, "pex, random, or a model JSON file (periodic or cycled)")
        ->capture_default_str();
    verify->add_option("--output-dir", ver.output_dir, "Directory for structure_report.json")->capture_default_str();
    verify->add_option("-M,--period", ver.period, "Period for --model random");
    verify->add_option("-n,--order", ver.order, "State dimension for --model random");
    verify->add_option("--seed", ver.seed, "Seed for --model random")->capture_default_str();
    verify->add_option("--horizon", ver.horizon, "Largest shift i, j (default M+n)");
    verify->add_option("--tol-structure", ver.tol_structure, "Structure tolerance")->capture_default_str();

    cli::ReproduceConfig rep;
    auto* reproduce = app.add_subcommand("reproduce", "Run a built-in pex experiment");
    reproduce->add_option("experiment", rep.experiment, "pex-noisefree or pex-noisy")->required();
    reproduce->add_option("--output-dir", rep.output_dir, "Directory for reports and traces")->capture_default_str();
    reproduce->add_option("--seed", rep.seed, "First seed; pex-noisy uses seed .. seed+seeds-1")
        ->capture_default_str();
    reproduce->add_option("--seeds", rep.seeds, "Number of seeds for pex-noisy")->capture_default_str();
    reproduce->add_option("--length", rep.length, "Number of samples")->capture_default_str();
    reproduce->add_option("--noise-var", rep.noise_var, "Process noise variance for pex-noisy")
        ->capture_default_str();
    reproduce->add_option("--hankel-rows", rep.hankel_rows, "Block rows of the Hankel matrices (0: default)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return exit_code(ErrorKind::Argument);
    }

    try {
        if (simulate->parsed()) return cli::run_simulate(sim);
        if (identify->parsed()) {
            if (tol_s->count() > 0) ident.tol_structure = tol_structure;
            if (tol_p->count() > 0) ident.tol_projection = tol_projection;
            return cli::run_identify(ident);
        }
        if (verify->parsed()) return cli::run_verify(ver);
        if (reproduce->parsed()) return cli::run_reproduce(rep);
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return cli::kInternalError;
    }
    return cli::kInternalError;
}
