#include "cbhd/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cbhd {

double round15(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::strtod(buf, nullptr);
}

json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return round15(v);
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(json_number(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"n", m.rows()}, {"data", std::move(rows)}};
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("n") || !j.contains("data")) {
      throw Error(ErrorCode::Parse, "matrix: expected {\"n\": int, \"data\": [[...]]}");
    }
    const auto n = j.at("n").get<long>();
    const auto& data = j.at("data");
    if (n <= 0 || !data.is_array() || static_cast<long>(data.size()) != n) {
      throw Error(ErrorCode::Parse, "matrix: data must have n rows");
    }
    Eigen::MatrixXd m(n, n);
    for (long r = 0; r < n; ++r) {
      const auto& row = data.at(static_cast<std::size_t>(r));
      if (!row.is_array() || static_cast<long>(row.size()) != n) {
        throw Error(ErrorCode::Parse, "matrix: every row must have n entries");
      }
      for (long c = 0; c < n; ++c) m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("matrix: ") + e.what());
  }
}

MatrixPair pair_from_json(const json& j) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b")) {
    throw Error(ErrorCode::Parse, "pair: expected {\"a\": <matrix>, \"b\": <matrix>}");
  }
  MatrixPair p{matrix_from_json(j.at("a")), matrix_from_json(j.at("b"))};
  if (p.a.rows() != p.b.rows()) throw Error(ErrorCode::Parse, "pair: a and b differ in size");
  return p;
}

json pair_to_json(const MatrixPair& p) { return {{"a", matrix_to_json(p.a)}, {"b", matrix_to_json(p.b)}}; }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, path + ": " + e.what());
  }
}

json certificate_to_json(const ConvergenceCertificate& c) {
  json columns = json::array();
  for (double v : c.column_sums) columns.push_back(json_number(v));
  return {
      {"query", {{"norm_a", json_number(c.query.norm_a)}, {"norm_b", json_number(c.query.norm_b)}}},
      {"in_gamma", c.in_gamma},
      {"psi_at_1", json_number(c.psi_at_1)},
      {"partial_norm_sum", json_number(c.partial_norm_sum)},
      {"tail_bound", json_number(c.tail_bound)},
      {"orders", {{"I", c.I}, {"J", c.J}}},
      {"pass", c.pass},
      {"diagnostics",
       {{"beta_tilde", json_number(c.beta_tilde)},
        {"psi_series", json_number(c.psi_series)},
        {"psi_series_ok", c.psi_series_ok},
        {"psi_rk", json_number(c.psi_rk)},
        {"psi_agreement", json_number(c.psi_agreement)},
        {"last_column_sum", json_number(c.last_column_sum)},
        {"column_sums", std::move(columns)},
        {"notes", c.diagnostics}}},
  };
}

json error_to_json(const Error& e) {
  return {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
}

}  // namespace cbhd
