#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <string>

#include "cbhd/series.hpp"

namespace cbhd {

using nlohmann::json;

/// Rounds to 15 significant digits so emitted numbers are stable.
double round15(double v);

/// round15(v), with non-finite values spelled "inf", "-inf" or "nan".
json json_number(double v);

/// {"n": int, "data": [[...], ...]}, row-major.
json matrix_to_json(const Eigen::MatrixXd& m);
/// Throws Parse on a malformed document.
Eigen::MatrixXd matrix_from_json(const json& j);

struct MatrixPair {
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;
};

/// {"a": <matrix>, "b": <matrix>}, both of the same size.
MatrixPair pair_from_json(const json& j);
json pair_to_json(const MatrixPair& p);

/// Reads a file and parses it as JSON; Parse on failure.
json read_json_file(const std::string& path);

json certificate_to_json(const ConvergenceCertificate& c);

json error_to_json(const Error& e);

}  // namespace cbhd
