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
#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

#include "cyclid/errors.hpp"
#include "cyclid/io.hpp"
#include "cyclid/transform.hpp"

namespace cyclid::cli {

namespace fs = std::filesystem;

namespace {

LogLevel g_level = LogLevel::Warn;

constexpr std::string_view kLevelNames[] = {"error", "warn", "info", "debug"};

// Noise uses its own stream so that the input sequence does not depend on
// whether noise is switched on.
std::uint64_t noise_seed(std::uint64_t seed) { return seed + 1; }

LptvModel resolve_model(const std::string& spec, int period, int order, std::uint64_t seed) {
    if (spec == "pex") return pex_model();
    if (spec == "random") {
        if (period < 1 || order < 1) {
            throw argument_error("--model random needs --period and --order >= 1");
        }
        return generate_random_plant(period, order, 1, 1, seed, 0.9);
    }
    const io::AnyModel any = io::read_model(spec);
    if (const auto* lptv = std::get_if<LptvModel>(&any)) return *lptv;
    return extract_periodic(std::get<CycledModel>(any));
}

SignalSequence make_input(const std::string& spec, int dim, long length, std::uint64_t seed) {
    if (spec == "random" || spec == "impulse" || spec == "step") {
        if (length < 1) throw argument_error("--length must be >= 1");
        SignalSequence u{Matrix::Zero(dim, length), 0};
        if (spec == "random") {
            std::mt19937_64 rng(seed);
            std::normal_distribution<double> normal(0.0, 1.0);
            for (long k = 0; k < length; ++k) {
                for (int i = 0; i < dim; ++i) u.values(i, k) = normal(rng);
            }
        } else if (spec == "impulse") {
            u.values.col(0).setOnes();
        } else {
            u.values.setOnes();
        }
        return u;
    }
    SignalSequence u = io::read_signal_csv(spec);
    if (u.dim() != dim) {
        throw validation_error("input file has " + std::to_string(u.dim()) + " channels, model expects " +
                               std::to_string(dim));
    }
    return u;
}

struct ComparisonRow {
    std::string parameter;
    int phase;
    Eigen::Index row;
    Eigen::Index col;
    double truth;
    double estimate;
};

std::vector<ComparisonRow> compare_parameters(const LptvModel& estimate, const LptvModel& truth) {
    std::vector<ComparisonRow> rows;
    auto add = [&](const char* name, int k, const Matrix& e, const Matrix& t) {
        for (Eigen::Index r = 0; r < t.rows(); ++r) {
            for (Eigen::Index c = 0; c < t.cols(); ++c) rows.push_back({name, k, r, c, t(r, c), e(r, c)});
        }
    };
    for (int k = 0; k < truth.period(); ++k) {
        add("A", k, estimate.a(k), truth.a(k));
        add("B", k, estimate.b(k), truth.b(k));
        add("C", k, estimate.c(k), truth.c(k));
        add("D", k, estimate.d(k), truth.d(k));
    }
    return rows;
}

std::ofstream open_output(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path.string());
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    return out;
}

void write_comparison(const fs::path& path, const std::vector<ComparisonRow>& rows) {
    std::ofstream out = open_output(path);
    out << "parameter,phase,row,col,true,identified,abs_error\n";
    for (const ComparisonRow& r : rows) {
        out << r.parameter << ',' << r.phase << ',' << r.row << ',' << r.col << ',' << r.truth << ','
            << r.estimate << ',' << std::abs(r.estimate - r.truth) << '\n';
    }
}

void write_traces(const fs::path& dir, const SignalSequence& u, const SignalSequence& y) {
    io::write_signal_csv(dir / "u.csv", u, "u");
    io::write_signal_csv(dir / "y.csv", y, "y");
}

void log_warnings(const IdentifyDiagnostics& d) {
    for (const std::string& w : d.lti.warnings) log(LogLevel::Warn, "subspace: " + w);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int reproduce_noise_free(const ReproduceConfig& config, const fs::path& dir) {
    const LptvModel truth = pex_model();
    const SignalSequence u = make_input("random", 1, config.length, config.seed);
    const SignalSequence y = simulate_lptv(truth, u, Vector::Zero(2)).output;
    IdentifyOptions options;
    options.hankel.block_rows = config.hankel_rows;
    const IdentifyResult result = identify_lptv(u, y, truth.period(), truth.state_dim(), options);
    log_warnings(result.diagnostics);

    const double max_err = parameter_max_abs_error(result.model, truth);
    const double mse = parameter_mse(result.model, truth);
    const bool pass = max_err <= 1e-3;

    write_traces(dir, u, y);
    io::write_model(dir / "model.json", result.model);
    io::write_json(dir / "diagnostics.json", io::to_json(result.diagnostics));
    write_comparison(dir / "comparison.csv", compare_parameters(result.model, truth));
    {
        std::ofstream out = open_output(dir / "summary.csv");
        out << "experiment,seed,length,noise_var,max_abs_error,mse,pass\n";
        out << config.experiment << ',' << config.seed << ',' << config.length << ",0," << max_err << ',' << mse
            << ',' << (pass ? 1 : 0) << '\n';
    }
    io::write_json(dir / "report.json", io::Json{{"experiment", config.experiment},
                                                 {"seed", config.seed},
                                                 {"length", config.length},
                                                 {"max_abs_error", max_err},
                                                 {"mse", mse},
                                                 {"tolerance", 1e-3},
                                                 {"pass", pass}});
    std::cout << (pass ? "PASS" : "FAIL") << " pex-noisefree: max entrywise error " << max_err
              << " (tolerance 1e-3)\n";
    return pass ? 0 : kCheckFailed;
}

int reproduce_noisy(const ReproduceConfig& config, const fs::path& dir) {
    if (config.seeds < 1) throw argument_error("--seeds must be >= 1");
    const LptvModel truth = pex_model();
    const int seeds = config.seeds;
    std::vector<double> mse(static_cast<std::size_t>(seeds), std::numeric_limits<double>::quiet_NaN());
    std::vector<double> max_err(mse), assumption(mse);
    std::vector<std::string> failures(static_cast<std::size_t>(seeds));
    std::vector<IdentifyResult> first;
    SignalSequence first_u, first_y;

#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < seeds; ++s) {
        const auto i = static_cast<std::size_t>(s);
        const std::uint64_t seed = config.seed + i;
        try {
            const SignalSequence u = make_input("random", 1, config.length, seed);
            const SignalSequence y =
                simulate_lptv(truth, u, Vector::Zero(2), NoiseSpec{config.noise_var, 0.0, noise_seed(seed)}).output;
            IdentifyOptions options = IdentifyOptions::noisy();
            options.hankel.block_rows = config.hankel_rows;
            IdentifyResult result = identify_lptv(u, y, truth.period(), truth.state_dim(), options);
            mse[i] = parameter_mse(result.model, truth);
            max_err[i] = parameter_max_abs_error(result.model, truth);
            assumption[i] = result.diagnostics.assumption.worst.residual;
            if (s == 0) {
#pragma omp critical
                {
                    first.push_back(std::move(result));
                    first_u = u;
                    first_y = y;
                }
            }
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    }

    bool all_ok = true;
    for (int s = 0; s < seeds; ++s) {
        if (!failures[static_cast<std::size_t>(s)].empty()) {
            all_ok = false;
            log(LogLevel::Error, "seed " + std::to_string(config.seed + static_cast<std::uint64_t>(s)) + ": " +
                                     failures[static_cast<std::size_t>(s)]);
        }
    }
    std::vector<double> finite;
    for (double v : mse) {
        if (std::isfinite(v)) finite.push_back(v);
    }
    const double med = finite.empty() ? std::numeric_limits<double>::quiet_NaN() : median(finite);
    const bool pass = all_ok && med <= 0.15;

    {
        std::ofstream out = open_output(dir / "summary.csv");
        out << "experiment,seed,length,noise_var,max_abs_error,mse,assumption_residual\n";
        for (int s = 0; s < seeds; ++s) {
            const auto i = static_cast<std::size_t>(s);
            out << config.experiment << ',' << config.seed + i << ',' << config.length << ',' << config.noise_var
                << ',' << max_err[i] << ',' << mse[i] << ',' << assumption[i] << '\n';
        }
    }
    if (!first.empty()) {
        write_traces(dir, first_u, first_y);
        io::write_model(dir / "model.json", first.front().model);
        io::write_json(dir / "diagnostics.json", io::to_json(first.front().diagnostics));
        write_comparison(dir / "comparison.csv", compare_parameters(first.front().model, truth));
    }
    io::Json per_seed = io::Json::array();
    for (int s = 0; s < seeds; ++s) {
        const auto i = static_cast<std::size_t>(s);
        per_seed.push_back({{"seed", config.seed + i},
                            {"mse", std::isfinite(mse[i]) ? io::Json(mse[i]) : io::Json(nullptr)},
                            {"error", failures[i].empty() ? io::Json(nullptr) : io::Json(failures[i])}});
    }
    io::write_json(dir / "report.json", io::Json{{"experiment", config.experiment},
                                                 {"length", config.length},
                                                 {"noise_var", config.noise_var},
                                                 {"median_mse", std::isfinite(med) ? io::Json(med) : io::Json(nullptr)},
                                                 {"mse_limit", 0.15},
                                                 {"seeds", per_seed},
                                                 {"pass", pass}});
    std::cout << (pass ? "PASS" : "FAIL") << " pex-noisy: median MSE " << med << " over " << seeds
              << " seeds (limit 0.15)\n";
    return pass ? 0 : kCheckFailed;
}

}  // namespace

void init_logging() {
    const char* env = std::getenv("CYCLID_LOG");
    if (env == nullptr) return;
    const std::string value(env);
    for (std::size_t i = 0; i < std::size(kLevelNames); ++i) {
        if (value == kLevelNames[i]) g_level = static_cast<LogLevel>(i);
    }
}

void log(LogLevel level, const std::string& message) {
    if (level > g_level) return;
    std::cerr << "[cyclid " << kLevelNames[static_cast<int>(level)] << "] " << message << '\n';
}

int run_simulate(const SimulateConfig& config) {
    if (config.noise_var < 0.0 || config.measurement_var < 0.0) {
        throw argument_error("noise variances must be nonnegative");
    }
    const LptvModel model = resolve_model(config.model, config.period, config.order, config.seed);
    const ValidationReport report = validate_model(model);
    if (!report.ok()) {
        throw validation_error(std::string("model is not ") + (report.observable ? "controllable" : "observable") +
                               " at every phase");
    }
    const SignalSequence u = make_input(config.input, model.input_dim(), config.length, config.seed);
    std::optional<NoiseSpec> noise;
    if (config.noise_var > 0.0 || config.measurement_var > 0.0) {
        noise = NoiseSpec{config.noise_var, config.measurement_var, noise_seed(config.seed)};
    }
    const SimulationResult sim = simulate_lptv(model, u, Vector::Zero(model.state_dim()), noise);

    const fs::path dir(config.output_dir);
    write_traces(dir, u, sim.output);
    io::write_signal_csv(dir / "states.csv", sim.states, "x");
    io::write_cycled_csv(dir / "u_check.csv", cycle_input(u, model.period()), "u_check");
    io::write_cycled_csv(dir / "y_check.csv", cycle_signal(sim.output, model.period()), "y_check");
    io::write_model(dir / "model.json", model);
    log(LogLevel::Info, "simulated " + std::to_string(u.length()) + " samples into " + dir.string());
    return 0;
}

int run_identify(const IdentifyConfig& config) {
    if (config.input.empty() || config.response.empty()) {
        throw argument_error("identify needs --input and --response");
    }
    if (config.period < 1) throw argument_error("--period must be >= 1");
    if (config.order < 1) throw argument_error("--order must be >= 1");
    const SignalSequence u = io::read_signal_csv(config.input);
    const SignalSequence y = io::read_signal_csv(config.response);

    IdentifyOptions options = config.noisy ? IdentifyOptions::noisy() : IdentifyOptions{};
    options.hankel.block_rows = config.hankel_rows;
    options.max_shift = config.horizon;
    options.require_assumption = !config.allow_assumption_failure;
    if (config.tol_structure) options.assumption_tolerance = *config.tol_structure;
    if (config.tol_projection) options.projection_tolerance = *config.tol_projection;

    const IdentifyResult result = identify_lptv(u, y, config.period, config.order, options);
    log_warnings(result.diagnostics);
    if (!result.diagnostics.assumption.pass) {
        log(LogLevel::Warn, "shifted Markov structure check failed; continuing as requested");
    }

    const fs::path dir(config.output_dir);
    io::write_model(dir / "model.json", result.model);
    io::write_json(dir / "diagnostics.json", io::to_json(result.diagnostics));
    std::cout << "identified M=" << config.period << " n=" << config.order
              << ": cond(T)=" << result.diagnostics.transform.condition_number
              << ", structure residual=" << result.diagnostics.assumption.worst.residual << '\n';
    return 0;
}

int run_verify(const VerifyConfig& config) {
    if (config.horizon && *config.horizon < 1) throw argument_error("--horizon must be >= 1");
    if (!(config.tol_structure > 0.0)) throw argument_error("--tol-structure must be positive");

    CycledModel cycled;
    std::optional<LptvModel> lptv;
    if (config.model == "pex" || config.model == "random") {
        lptv = resolve_model(config.model, config.period, config.order, config.seed);
    } else {
        io::AnyModel any = io::read_model(config.model);
        if (auto* m = std::get_if<LptvModel>(&any)) lptv = *m;
        else cycled = std::get<CycledModel>(any);
    }
    if (lptv) cycled = build_cyclic(*lptv);

    const int horizon = config.horizon.value_or(cycled.period + cycled.state_dim);

    const MarkovSequence h = markov_parameters(cycled, 2 * horizon);
    const StructureReport report = check_structure(h, shift_matrix(cycled.output_dim, cycled.period),
                                                   shift_matrix(cycled.input_dim, cycled.period), horizon, horizon,
                                                   config.tol_structure);

    bool round_trip = false;
    std::string round_trip_note;
    try {
        const LptvModel extracted = extract_periodic(cycled, config.tol_structure);
        const CycledModel rebuilt = build_cyclic(extracted);
        round_trip = lptv ? extracted == *lptv
                          : (rebuilt.a - cycled.a).cwiseAbs().maxCoeff() <= config.tol_structure &&
                                (rebuilt.b - cycled.b).cwiseAbs().maxCoeff() <= config.tol_structure &&
                                (rebuilt.c - cycled.c).cwiseAbs().maxCoeff() <= config.tol_structure &&
                                (rebuilt.d - cycled.d).cwiseAbs().maxCoeff() <= config.tol_structure;
    } catch (const Error& e) {
        round_trip_note = e.what();
    }

    io::Json j{{"model", config.model},
               {"period", cycled.period},
               {"horizon", horizon},
               {"structure", io::to_json(report)},
               {"round_trip", round_trip},
               {"pass", report.pass && round_trip}};
    if (!round_trip_note.empty()) j["round_trip_error"] = round_trip_note;
    if (lptv) j["validation"] = io::to_json(validate_model(*lptv));
    io::write_json(fs::path(config.output_dir) / "structure_report.json", j);

    if (report.pass && round_trip) {
        std::cout << "PASS structure and round trip (" << report.cells.size() << " cells, worst residual "
                  << report.worst.residual << ")\n";
        return 0;
    }
    static constexpr const char* kCheckNames[] = {"shifted", "left-cyclic", "right-cyclic"};
    std::cout << "FAIL worst cell: " << kCheckNames[static_cast<int>(report.worst.check)] << " i=" << report.worst.i
              << " j=" << report.worst.j << " residual " << report.worst.residual << " (tolerance "
              << config.tol_structure << ")";
    if (!round_trip) std::cout << "; round trip failed" << (round_trip_note.empty() ? "" : ": " + round_trip_note);
    std::cout << '\n';
    return exit_code(ErrorKind::Structure);
}

int run_reproduce(const ReproduceConfig& config) {
    if (config.length < 1) throw argument_error("--length must be >= 1");
    if (config.noise_var < 0.0) throw argument_error("--noise-var must be nonnegative");
    const fs::path dir(config.output_dir);
    if (config.experiment == "pex-noisefree") return reproduce_noise_free(config, dir);
    if (config.experiment == "pex-noisy") return reproduce_noisy(config, dir);
    throw argument_error("unknown experiment '" + config.experiment + "' (expected pex-noisefree or pex-noisy)");
}

}  // namespace cyclid::cli
