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

#include "operator_matrix.hpp"

namespace td {

/// Matrix dump format: array of rows, each entry a [re, im] pair.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// Rejects objects with keys outside `allowed`; `where` names the object in
/// diagnostics.
void check_keys(const nlohmann::json& obj,
                std::initializer_list<const char*> allowed,
                const std::string& where);

/// "%.17g" — round-trip-exact, deterministic CSV cell.
std::string fmt_double(double v);

}  // namespace td
