// Copyright 2026 The wsnsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WSNSIM_ERRORS_HPP
#define WSNSIM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wsnsim {

/// A configuration value violates its documented range.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& why)
        : std::invalid_argument("invalid " + field + ": " + why), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Malformed configuration text.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& why)
        : std::runtime_error("line " + std::to_string(line) + ": " + why), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// File system failure, carrying the offending path.
class IoError : public std::runtime_error {
public:
    IoError(std::string path, const std::string& why)
        : std::runtime_error(path + ": " + why), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// A simulation operation was called on a state it does not accept
/// (dead node, empty cluster, no alive nodes, too few candidates).
class SimulationError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace wsnsim

#endif  // WSNSIM_ERRORS_HPP
