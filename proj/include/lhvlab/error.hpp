// Copyright 2026 The lhvlab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lhvlab {

enum class Errc {
    invalid_dimension,
    invalid_argument,
    invalid_measurement,
    invalid_channel,
    invalid_use,
    truncation_insufficient,
    capacity_exceeded,
};

constexpr std::string_view to_string(Errc code) {
    switch (code) {
    case Errc::invalid_dimension: return "invalid-dimension";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::invalid_measurement: return "invalid-measurement";
    case Errc::invalid_channel: return "invalid-channel";
    case Errc::invalid_use: return "invalid-use";
    case Errc::truncation_insufficient: return "truncation-insufficient";
    case Errc::capacity_exceeded: return "capacity-exceeded";
    }
    return "unknown";
}

/// Every failure raised by the library carries one of the `Errc` codes.
class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string &what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what),
          code_(code) {}

    [[nodiscard]] Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

inline void require(bool cond, Errc code, const std::string &what) {
    if (!cond) {
        throw Error(code, what);
    }
}

} // namespace lhvlab
