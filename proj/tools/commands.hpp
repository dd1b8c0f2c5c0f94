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
#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace cyclid::cli {

/// Exit status of a command whose run completed but whose check failed
/// (reproduce assertions). Error classes map through cyclid::exit_code.
inline constexpr int kCheckFailed = 1;
/// Exit status for anything that is not a cyclid::Error.
inline constexpr int kInternalError = 10;

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

/// Reads CYCLID_LOG (error, warn, info, debug); warn when unset or unknown.
void init_logging();
void log(LogLevel level, const std::string& message);

struct SimulateConfig {
    std::string model = "pex";    // "pex", "random" or a model JSON path
    std::string input = "random"; // "random", "impulse", "step" or a signal CSV path
    std::string output_dir = ".";
    int period = 0;  // needed for --model random
    int order = 0;
    std::uint64_t seed = 42;
    long length = 1000;
    double noise_var = 0.0;
    double measurement_var = 0.0;
};

struct IdentifyConfig {
    std::string input;
    std::string response;
    std::string output_dir = ".";
    int period = 0;
    int order = 0;
    int hankel_rows = 0;
    int horizon = 0;
    bool noisy = false;
    bool allow_assumption_failure = false;
    std::optional<double> tol_structure;
    std::optional<double> tol_projection;
};

struct VerifyConfig {
    std::string model = "pex";
    std::string output_dir = ".";
    int period = 0;
    int order = 0;
    std::uint64_t seed = 42;
    std::optional<int> horizon;  // default M + n
    double tol_structure = 1e-8;
};

struct ReproduceConfig {
    std::string experiment;
    std::string output_dir = ".";
    std::uint64_t seed = 42;
    int seeds = 10;
    long length = 3000;
    double noise_var = 0.2;
    int hankel_rows = 0;
};

int run_simulate(const SimulateConfig& config);
int run_identify(const IdentifyConfig& config);
int run_verify(const VerifyConfig& config);
int run_reproduce(const ReproduceConfig& config);

}  // namespace cyclid::cli
