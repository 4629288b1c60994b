// Copyright 2026 The graphdyn Authors
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

#ifndef GRAPHDYN_ERRORS_HPP
#define GRAPHDYN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace graphdyn {

enum class ErrorCode {
    MalformedInput,        // unparsable file / key / universe
    InconsistentOperands,  // union of graphs that disagree
    InconsistentSupport,   // tensor of states with a conflicting support pair
    BasisMismatch,         // operands built over different sector bases
    CapExceeded,           // enumeration larger than the configured cap
    NonUnitaryParameter,   // gate constructor given a non-unitary matrix
    StabilityViolation,    // marked extension left the embedded subspace
    OutsideBasis,          // produced a graph the sector basis does not contain
};

inline const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedInput:
            return "malformed-input";
        case ErrorCode::InconsistentOperands:
            return "inconsistent-operands";
        case ErrorCode::InconsistentSupport:
            return "inconsistent-support";
        case ErrorCode::BasisMismatch:
            return "basis-mismatch";
        case ErrorCode::CapExceeded:
            return "cap-exceeded";
        case ErrorCode::NonUnitaryParameter:
            return "non-unitary-parameter";
        case ErrorCode::StabilityViolation:
            return "stability-violation";
        case ErrorCode::OutsideBasis:
            return "outside-basis";
    }
    return "unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const {
        return code_;
    }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &message) {
    throw Error(code, message);
}

}  // namespace graphdyn

#endif
