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


// Runs every acceptance criterion once with the default seed and sample
// counts and prints one PASS/FAIL line each.

#include <iostream>

#include "pushgate/verification.hpp"

int main()
{
    using namespace pushgate;
    const VerifyOptions opt;
    int failed = 0;
    run_suite(VerifySuite::full, opt, [&](const CriterionResult& r) {
        std::cout << format_result(r, true) << std::endl;
        failed += r.passed ? 0 : 1;
    });
    std::cout << (11 - failed) << "/11 criteria passed" << std::endl;
    return failed ? 1 : 0;
}
