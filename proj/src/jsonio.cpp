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
#include "jsonio.hpp"

#include <cstdio>

#include "errors.hpp"

namespace td {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty())
        throw_config("matrix JSON must be a nonempty array of rows");
    const auto n = j.size();
    ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = j[i];
        if (!row.is_array() || row.size() != n)
            throw_config("matrix JSON must be square (row " +
                         std::to_string(i) + ")");
        for (std::size_t k = 0; k < n; ++k) {
            const auto& cell = row[k];
            if (!cell.is_array() || cell.size() != 2 ||
                !cell[0].is_number() || !cell[1].is_number())
                throw_config("matrix entries must be [re, im] pairs");
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                Complex(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    return m;
}

void check_keys(const nlohmann::json& obj,
                std::initializer_list<const char*> allowed,
                const std::string& where) {
    if (!obj.is_object()) throw_config(where + " must be a JSON object");
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) {
                ok = true;
                break;
            }
        if (!ok) throw_config("unknown key '" + key + "' in " + where);
    }
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace td
