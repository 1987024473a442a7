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

#include <json.hpp>
#include <string>
#include <vector>

namespace td {

struct CheckLine {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckLine> lines;

    bool all_pass() const;
    std::string to_text() const;
    nlohmann::json to_json() const;
};

const std::vector<std::string>& suite_names();

/// Runs one invariant suite (algebra, derivative, conservation, liouville,
/// ensemble, gravastar) with tolerances pinned in code.
SuiteReport run_suite(const std::string& suite, int threads = 1);

}  // namespace td
