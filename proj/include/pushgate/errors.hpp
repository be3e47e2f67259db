// Copyright 2026 The pushgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace pushgate {

// Every error carries the name of the module that raised it so the CLI can
// print module-tagged diagnostics.
class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& what)
        : std::runtime_error(module + ": " + what), module_(std::move(module))
    {
    }

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

// Non-physical or out-of-range parameter (negative mass, |r| >= d, ...).
class ParameterError : public Error {
    using Error::Error;
};

// Root bracket failure, step-size underflow, non-convergence.
class NumericalError : public Error {
    using Error::Error;
};

// Ion crossing or other breakdown of the classical trajectory.
class DynamicsError : public Error {
    using Error::Error;
};

// Mismatched or malformed inputs to an operation.
class InputError : public Error {
    using Error::Error;
};

// Phase tables that cannot be turned into the requested gate.
class SynthesisError : public Error {
    using Error::Error;
};

// Leakage out of the decoherence-free subspace.
class EncodingError : public Error {
    using Error::Error;
};

// A design target that cannot be met under the adiabatic constraint.
class DesignError : public Error {
    using Error::Error;
};

// Schema or usage problems in the run configuration.
class ConfigError : public Error {
    using Error::Error;
};

}  // namespace pushgate
