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

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace pushgate {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double measured = 0.0;   // headline number
    double tolerance = 0.0;  // as applied
    std::string detail;
    double runtime = 0.0;    // s
};

enum class VerifySuite { fast, full };

std::string to_string(VerifySuite s);
VerifySuite verify_suite_from_string(const std::string& s);

struct VerifyOptions {
    std::uint64_t seed = 42;
    int samples = 2000;  // Monte Carlo ensemble size (criterion 7)
    int zeta_pairs = 400;  // antithetic sample pairs per temperature (criterion 8)
    int threads = 0;
    // Keyed "c1".."c11"; replaces the criterion's headline tolerance.
    std::map<std::string, double> tolerances;
};

using CriterionFn = CriterionResult (*)(const VerifyOptions&);

// Criterion ids 1..11 in order; fast-suite members are closed-form or algebraic.
std::vector<int> suite_members(VerifySuite suite);
CriterionResult run_criterion(int id, const VerifyOptions& opt);
std::vector<CriterionResult> run_suite(VerifySuite suite, const VerifyOptions& opt,
                                       const std::function<void(const CriterionResult&)>& on_result = {});

// "PASS c1  <name>  measured=... tol=...  (detail)", then " [t s]" on request.
std::string format_result(const CriterionResult& r, bool with_runtime = false);
std::string results_json(const std::vector<CriterionResult>& rs, const VerifyOptions& opt);

}  // namespace pushgate
