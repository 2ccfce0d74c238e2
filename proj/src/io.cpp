// SPDX-License-Identifier: Apache-2.0
#include "rss/io.hpp"

#include <filesystem>
#include <fstream>

namespace rss {

using nlohmann::json;

nlohmann::json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty())
    throw ParseError(field, field + ": expected a non-empty array of rows");
  const size_t rows = j.size();
  size_t cols = 0;
  Matrix m;
  for (size_t i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array()) throw ParseError(field, field + ": row is not an array");
    if (i == 0) {
      cols = row.size();
      if (cols == 0) throw ParseError(field, field + ": empty row");
      m.resize(static_cast<long>(rows), static_cast<long>(cols));
    }
    if (row.size() != cols) throw ParseError(field, field + ": ragged rows");
    for (size_t k = 0; k < cols; ++k) {
      const json& e = row[k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ParseError(field, field + ": entries must be [re, im] pairs");
      m(static_cast<long>(i), static_cast<long>(k)) =
          cxd(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("file", "file: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError("file", std::string("file: invalid JSON (") + e.what() + ")");
  }
  return j;
}

int get_positive_int(const json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_number_integer() || j[field].get<int>() < 1)
    throw ParseError(field, field + ": expected a positive integer");
  return j[field].get<int>();
}

}  // namespace

Channel load_channel_file(const std::string& path) {
  json j = read_json_file(path);
  const int din = get_positive_int(j, "dim_in");
  const int dout = get_positive_int(j, "dim_out");
  if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty())
    throw ParseError("kraus", "kraus: expected a non-empty array of matrices");
  std::vector<Matrix> ks;
  for (const auto& km : j["kraus"]) {
    Matrix k = matrix_from_json(km, "kraus");
    if (k.rows() != dout || k.cols() != din)
      throw ParseError("kraus", "kraus: operator shape does not match dim_out x dim_in");
    ks.push_back(std::move(k));
  }
  return Channel::unchecked(din, dout, std::move(ks),
                            std::filesystem::path(path).filename().string());
}

void save_channel_file(const std::string& path, const Channel& ch) {
  json j;
  j["dim_in"] = ch.dim_in;
  j["dim_out"] = ch.dim_out;
  json ks = json::array();
  for (const auto& k : ch.kraus) ks.push_back(matrix_to_json(k));
  j["kraus"] = std::move(ks);
  std::ofstream out(path);
  if (!out) throw ParseError("file", "file: cannot write " + path);
  out << j.dump(2) << "\n";
}

DensityOperator load_state_file(const std::string& path) {
  json j = read_json_file(path);
  if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].empty())
    throw ParseError("dims", "dims: expected a non-empty array of positive integers");
  std::vector<int> dims;
  for (const auto& d : j["dims"]) {
    if (!d.is_number_integer() || d.get<int>() < 1)
      throw ParseError("dims", "dims: entries must be positive integers");
    dims.push_back(d.get<int>());
  }
  if (!j.contains("matrix")) throw ParseError("matrix", "matrix: missing");
  Matrix m = matrix_from_json(j["matrix"], "matrix");
  if (m.rows() != m.cols()) throw ParseError("matrix", "matrix: not square");
  try {
    return DensityOperator::make(m, dims);
  } catch (const std::exception& e) {
    throw ParseError("matrix", std::string("matrix: ") + e.what());
  }
}

void save_state_file(const std::string& path, const DensityOperator& rho) {
  json j;
  j["dims"] = rho.dims();
  j["matrix"] = matrix_to_json(rho.matrix());
  std::ofstream out(path);
  if (!out) throw ParseError("file", "file: cannot write " + path);
  out << j.dump(2) << "\n";
}

Channel resolve_channel(const std::string& token,
                        const std::map<std::string, double>& params) {
  if (std::filesystem::exists(token)) return load_channel_file(token);

  std::string name = token;
  std::map<std::string, double> p = params;
  // Trailing digits select the dimension: identity2, depolarizing3, ...
  size_t cut = name.size();
  while (cut > 0 && std::isdigit(static_cast<unsigned char>(name[cut - 1]))) --cut;
  if (cut < name.size() && cut > 0) {
    p.insert_or_assign("d", static_cast<double>(std::stoi(name.substr(cut))));
    name = name.substr(0, cut);
  }
  try {
    return canonical_channel(name, p);
  } catch (const std::invalid_argument& e) {
    throw ParseError("channel", std::string("channel: ") + e.what());
  }
}

void apply_config_file(RunConfig& config, const std::string& path) {
  json j = read_json_file(path);
  if (!j.is_object()) throw ParseError("config", "config: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "inner_tol")
      config.solver.inner_tol = value.get<double>();
    else if (key == "outer_tol")
      config.solver.outer_tol = value.get<double>();
    else if (key == "max_iter")
      config.solver.max_iter = value.get<int>();
    else if (key == "multistarts")
      config.solver.multistarts = value.get<int>();
    else if (key == "seed")
      config.solver.seed = value.get<std::uint64_t>();
    else if (key == "alpha_ladder_cap")
      config.solver.alpha_ladder_cap = value.get<double>();
    else if (key == "out")
      config.out = value.get<std::string>();
    else if (key == "format")
      config.format = value.get<std::string>();
    else if (key == "precision")
      config.precision = value.get<int>();
    else
      throw ParseError(key, "config: unknown key \"" + key + "\"");
  }
  if (config.format != "csv" && config.format != "json")
    throw ParseError("format", "format: must be csv or json");
  try {
    config.solver.check();
  } catch (const std::exception& e) {
    throw ParseError("config", std::string("config: ") + e.what());
  }
}

}  // namespace rss
