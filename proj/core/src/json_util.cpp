// SPDX-License-Identifier: Apache-2.0
#include "json_util.hpp"

#include "ctcsim/error.hpp"

namespace ctcsim::detail {

using nlohmann::json;

namespace {

Complex entry_from_json(const json& entry, const std::string& where) {
  if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
      !entry[1].is_number()) {
    throw ParseError(where + ": complex entries must be [re, im] pairs");
  }
  return Complex(entry[0].get<double>(), entry[1].get<double>());
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& rows, const std::string& where) {
  if (!rows.is_array() || rows.empty()) {
    throw ParseError(where + ": matrix must be a non-empty array of rows");
  }
  const size_t ncols = rows[0].is_array() ? rows[0].size() : 0;
  if (ncols == 0) {
    throw ParseError(where + ": matrix rows must be non-empty arrays");
  }
  Matrix m(rows.size(), ncols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != ncols) {
      throw ParseError(where + ": ragged matrix rows");
    }
    for (size_t j = 0; j < ncols; ++j) {
      m(i, j) = entry_from_json(rows[i][j], where);
    }
  }
  return m;
}

json vector_to_json(const Vector& v) {
  json entries = json::array();
  for (Index i = 0; i < v.size(); ++i) {
    entries.push_back({v(i).real(), v(i).imag()});
  }
  return entries;
}

Vector vector_from_json(const json& entries, const std::string& where) {
  if (!entries.is_array() || entries.empty()) {
    throw ParseError(where + ": vector must be a non-empty array");
  }
  Vector v(entries.size());
  for (size_t i = 0; i < entries.size(); ++i) {
    v(i) = entry_from_json(entries[i], where);
  }
  return v;
}

}  // namespace ctcsim::detail
