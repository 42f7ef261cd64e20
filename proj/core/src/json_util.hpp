// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "ctcsim/linalg.hpp"

namespace ctcsim::detail {

// Complex matrices serialize as nested arrays of [re, im] pairs, row-major.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& rows, const std::string& where);

nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& entries,
                        const std::string& where);

}  // namespace ctcsim::detail
