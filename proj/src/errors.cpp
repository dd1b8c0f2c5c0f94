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
#include "cyclid/errors.hpp"

namespace cyclid {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Argument: return "argument";
        case ErrorKind::Io: return "io";
        case ErrorKind::Validation: return "validation";
        case ErrorKind::Identification: return "identification";
        case ErrorKind::Structure: return "structure";
    }
    return "unknown";
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Argument: return 2;
        case ErrorKind::Io: return 3;
        case ErrorKind::Validation: return 4;
        case ErrorKind::Identification: return 5;
        case ErrorKind::Structure: return 6;
    }
    return 1;
}

Error Error::with_stage(std::string_view stage) const {
    return {kind_, std::string(stage) + ": " + what()};
}

}  // namespace cyclid
