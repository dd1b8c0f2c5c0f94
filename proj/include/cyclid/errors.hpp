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

#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclid {

/// Failure classes. Each one maps to a distinct CLI exit code.
enum class ErrorKind {
    Argument,        ///< bad parameters or inconsistent dimensions
    Io,              ///< unreadable or malformed files
    Validation,      ///< model fails observability/controllability checks
    Identification,  ///< subspace engine or transformation could not produce a model
    Structure,       ///< matrix does not follow the expected block pattern
};

std::string_view to_string(ErrorKind kind);

/// Process exit code for a failure class.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

    /// Copy of this error with `stage: ` prepended to the message.
    [[nodiscard]] Error with_stage(std::string_view stage) const;

private:
    ErrorKind kind_;
};

inline Error argument_error(const std::string& what) { return {ErrorKind::Argument, what}; }
inline Error io_error(const std::string& what) { return {ErrorKind::Io, what}; }
inline Error validation_error(const std::string& what) { return {ErrorKind::Validation, what}; }
inline Error identification_error(const std::string& what) { return {ErrorKind::Identification, what}; }
inline Error structure_error(const std::string& what) { return {ErrorKind::Structure, what}; }

}  // namespace cyclid
