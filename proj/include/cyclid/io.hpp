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

#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "cyclid/cyclic.hpp"
#include "cyclid/markov.hpp"
#include "cyclid/transform.hpp"

namespace cyclid::io {

using Json = nlohmann::json;

// Model documents: {"M", "n", "m", "l", "A": [...], "B": [...], "C": [...], "D": [...]}
// with every matrix a row-major nested array. A cycled (time-invariant)
// model uses "A_check", "B_check", "C_check", "D_check" instead.

[[nodiscard]] Json matrix_to_json(const Matrix& m);
[[nodiscard]] Matrix matrix_from_json(const Json& j, int rows, int cols, const std::string& what);

[[nodiscard]] Json to_json(const LptvModel& model);
[[nodiscard]] Json to_json(const CycledModel& model);
[[nodiscard]] LptvModel lptv_from_json(const Json& j);
[[nodiscard]] CycledModel cycled_from_json(const Json& j);

using AnyModel = std::variant<LptvModel, CycledModel>;
[[nodiscard]] AnyModel model_from_json(const Json& j);

[[nodiscard]] Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

[[nodiscard]] AnyModel read_model(const std::filesystem::path& path);
void write_model(const std::filesystem::path& path, const LptvModel& model);

// Signal CSV: header "t,<prefix>_1,...,<prefix>_d", one row per sample.

[[nodiscard]] SignalSequence read_signal_csv(const std::filesystem::path& path);
void write_signal_csv(const std::filesystem::path& path, const SignalSequence& signal,
                      const std::string& prefix);

/// Cycled signals use the same CSV scheme with M*block_dim columns plus a
/// sidecar "<file>.meta.json" holding {"M", "block_dim"}.
void write_cycled_csv(const std::filesystem::path& path, const CycledSignal& signal,
                      const std::string& prefix);
[[nodiscard]] CycledSignal read_cycled_csv(const std::filesystem::path& path);
[[nodiscard]] std::filesystem::path sidecar_path(const std::filesystem::path& csv);

[[nodiscard]] Json to_json(const ValidationReport& report);
[[nodiscard]] Json to_json(const StructureReport& report);
[[nodiscard]] Json to_json(const IdentifyDiagnostics& diagnostics);

}  // namespace cyclid::io
