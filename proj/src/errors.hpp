/*
   Copyright 2026 tracedyn developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#pragma once

#include <stdexcept>
#include <string>

namespace td {

/// Error taxonomy shared by the core, the C API status codes and the CLI
/// exit codes.
enum class ErrorKind {
    Config,     ///< bad scenario/model/parameter configuration
    Io,         ///< file not readable/writable, malformed JSON
    Numerical,  ///< NaN/overflow, refused integration, step underflow
    Invariant,  ///< a checked invariant or tolerance was violated
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string msg)
        : std::runtime_error(std::move(msg)), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_config(const std::string& msg) {
    throw Error(ErrorKind::Config, msg);
}
[[noreturn]] inline void throw_io(const std::string& msg) {
    throw Error(ErrorKind::Io, msg);
}
[[noreturn]] inline void throw_numerical(const std::string& msg) {
    throw Error(ErrorKind::Numerical, msg);
}
[[noreturn]] inline void throw_invariant(const std::string& msg) {
    throw Error(ErrorKind::Invariant, msg);
}

}  // namespace td
