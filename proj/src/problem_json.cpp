#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "aladin/problem.hpp"

namespace aladin {

namespace {

using nlohmann::json;

Eigen::MatrixXd read_matrix(const json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw ProblemFormatError{std::string{"missing key '"} + key + "'"};
  }
  const json& rows = doc.at(key);
  if (!rows.is_array() || rows.empty()) {
    throw ProblemFormatError{std::string{"'"} + key +
                             "' must be a non-empty array of rows"};
  }
  const auto n_rows = static_cast<Eigen::Index>(rows.size());
  const auto n_cols = static_cast<Eigen::Index>(
      rows.front().is_array() ? rows.front().size() : 0);
  if (n_cols == 0) {
    throw ProblemFormatError{std::string{"'"} + key + "' rows must be arrays"};
  }
  Eigen::MatrixXd A(n_rows, n_cols);
  for (Eigen::Index i = 0; i < n_rows; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n_cols) {
      throw ProblemFormatError{std::string{"'"} + key + "' row " +
                               std::to_string(i) + " has wrong length"};
    }
    for (Eigen::Index j = 0; j < n_cols; ++j) {
      if (!row[j].is_number()) {
        throw ProblemFormatError{std::string{"'"} + key + "' entry (" +
                                 std::to_string(i) + "," + std::to_string(j) +
                                 ") is not a number"};
      }
      A(i, j) = row[j].get<double>();
    }
  }
  return A;
}

Eigen::VectorXd read_vector(const json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw ProblemFormatError{std::string{"missing key '"} + key + "'"};
  }
  const json& v = doc.at(key);
  if (!v.is_array() || v.empty()) {
    throw ProblemFormatError{std::string{"'"} + key +
                             "' must be a non-empty array"};
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw ProblemFormatError{std::string{"'"} + key + "' entry " +
                               std::to_string(i) + " is not a number"};
    }
    out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
  }
  return out;
}

}  // namespace

QpccProblem load_qpcc_json(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ProblemFormatError{std::string{"JSON parse error at byte "} +
                             std::to_string(e.byte) + ": " + e.what()};
  }
  if (!doc.is_object()) {
    throw ProblemFormatError{"problem document must be a JSON object"};
  }

  ComplementarityMode mode = ComplementarityMode::Aggregate;
  if (doc.contains("mode")) {
    const auto& m = doc.at("mode");
    if (m == "aggregate") {
      mode = ComplementarityMode::Aggregate;
    } else if (m == "componentwise") {
      mode = ComplementarityMode::Componentwise;
    } else {
      throw ProblemFormatError{
          "'mode' must be \"aggregate\" or \"componentwise\""};
    }
  }

  Eigen::VectorXd c = read_vector(doc, "c");
  std::vector<BoundSign> bounds(static_cast<std::size_t>(c.size()),
                                BoundSign::Free);
  if (doc.contains("bounds")) {
    const auto& b = doc.at("bounds");
    if (!b.is_array() || b.size() != bounds.size()) {
      throw ProblemFormatError{"'bounds' must be an array of length n"};
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i] == "nonneg") {
        bounds[i] = BoundSign::NonNegative;
      } else if (b[i] == "nonpos") {
        bounds[i] = BoundSign::NonPositive;
      } else if (b[i] == "free") {
        bounds[i] = BoundSign::Free;
      } else {
        throw ProblemFormatError{"'bounds' entry " + std::to_string(i) +
                                 " must be \"nonneg\", \"nonpos\" or \"free\""};
      }
    }
  }

  double c0 = 0.0;
  if (doc.contains("c0")) {
    if (!doc.at("c0").is_number()) {
      throw ProblemFormatError{"'c0' must be a number"};
    }
    c0 = doc.at("c0").get<double>();
  }

  try {
    return QpccProblem{read_matrix(doc, "Q"), std::move(c),
                       read_matrix(doc, "E"), read_vector(doc, "e0"),
                       read_matrix(doc, "F"), read_vector(doc, "f0"),
                       mode,                  std::move(bounds),
                       c0};
  } catch (const std::invalid_argument& e) {
    throw ProblemFormatError{e.what()};
  }
}

QpccProblem load_qpcc_json_file(const std::string& path) {
  std::ifstream in{path};
  if (!in) {
    throw ProblemFormatError{"cannot open problem file '" + path + "'"};
  }
  return load_qpcc_json(in);
}

}  // namespace aladin
