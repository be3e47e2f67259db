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


#include <doctest.h>

#include <json.hpp>

#include "pushgate/errors.hpp"
#include "pushgate/verification.hpp"

using namespace pushgate;

TEST_CASE("suite membership")
{
    CHECK(suite_members(VerifySuite::fast) == std::vector<int>{3, 5, 9, 11});
    CHECK(suite_members(VerifySuite::full).size() == 11);
    CHECK(verify_suite_from_string("fast") == VerifySuite::fast);
    CHECK(to_string(VerifySuite::full) == "full");
    CHECK_THROWS(verify_suite_from_string("medium"));
}

TEST_CASE("fast suite passes and is reproducible")
{
    VerifyOptions opt;
    std::vector<int> seen;
    const auto a = run_suite(VerifySuite::fast, opt, [&](const CriterionResult& r) { seen.push_back(r.id); });
    CHECK(seen == suite_members(VerifySuite::fast));
    for (const auto& r : a) {
        INFO(format_result(r));
        CHECK(r.passed);
    }
    const auto b = run_suite(VerifySuite::fast, opt);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(format_result(a[i]) == format_result(b[i]));
}

TEST_CASE("closed-form criteria outside the fast suite")
{
    const VerifyOptions opt;
    CHECK(run_criterion(2, opt).passed);
    CHECK(run_criterion(10, opt).passed);
}

TEST_CASE("tolerance overrides are applied")
{
    VerifyOptions opt;
    opt.tolerances["c3"] = 1e-20;
    opt.tolerances["c9"] = 1e-12;
    const CriterionResult r3 = run_criterion(3, opt);
    CHECK(r3.tolerance == 1e-20);
    CHECK(!r3.passed);
    CHECK(!run_criterion(9, opt).passed);
    opt.tolerances.clear();
    opt.tolerances["c1"] = 0.02;
    const CriterionResult r1 = run_criterion(1, opt);
    CHECK(r1.passed);
    CHECK(r1.measured == doctest::Approx(0.985).epsilon(1e-3));
}

TEST_CASE("unknown criterion")
{
    CHECK_THROWS(run_criterion(12, {}));
    CHECK_THROWS(run_criterion(0, {}));
}

TEST_CASE("result formatting")
{
    CriterionResult r;
    r.id = 4;
    r.name = "x";
    r.passed = false;
    r.measured = 0.5;
    r.tolerance = 0.02;
    r.detail = "d";
    r.runtime = 1.5;
    CHECK(format_result(r) == "FAIL c4  x  measured=0.5 tol=0.02  (d)");
    CHECK(format_result(r, true) == "FAIL c4  x  measured=0.5 tol=0.02  (d) [1.5 s]");
    r.id = 10;
    r.passed = true;
    CHECK(format_result(r).starts_with("PASS c10 x"));

    VerifyOptions opt;
    opt.tolerances["c3"] = 0.1;
    const auto j = nlohmann::json::parse(results_json({r, r}, opt));
    CHECK(j["failed"] == 0);
    CHECK(j["criteria"].size() == 2);
    CHECK(j["criteria"][0]["id"] == 10);
    CHECK(j["tolerances"]["c3"] == 0.1);
    CHECK(j["seed"] == 42);
}
