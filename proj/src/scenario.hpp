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
#include <optional>
#include <string>
#include <vector>

namespace td {

struct RunContext {
    std::string out_dir = ".";
    int threads = 1;
    std::optional<std::uint64_t> seed_override;
};

struct RunOutcome {
    bool passed = true;  // false when a check-kind scenario failed its suite
    nlohmann::json summary;
    std::vector<std::string> files_written;  // absolute or out_dir-relative

    std::string to_text() const;
};

/// Loads, schema-validates and executes one scenario. All declared outputs
/// are buffered and written only after the run succeeds (a failing run
/// leaves no partial outputs). Unknown keys anywhere are rejected.
RunOutcome run_scenario_file(const std::string& path, const RunContext& ctx);
RunOutcome run_scenario_json(const nlohmann::json& scenario,
                             const RunContext& ctx);

}  // namespace td
