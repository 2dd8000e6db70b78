// Copyright 2026 The qtunnel Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qtunnel {

struct InvalidLabelError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidSizeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnsupportedSizeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidEventError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IndexError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct CapacityError : std::length_error {
    using std::length_error::length_error;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Configuration problem tied to a specific key.
class ConfigError : public std::invalid_argument {
  public:
    ConfigError(std::string key, const std::string &message)
        : std::invalid_argument("config key '" + key + "': " + message), key_(std::move(key)) {}

    const std::string &key() const noexcept { return key_; }

  private:
    std::string key_;
};

}  // namespace qtunnel
