// SPDX-License-Identifier: Apache-2.0
#ifndef RSS_IO_HPP
#define RSS_IO_HPP

#include <map>
#include <string>

#include <json.hpp>

#include "rss/channels.hpp"
#include "rss/linalg.hpp"
#include "rss/settings.hpp"

namespace rss {

// File/flag problems carry the offending field for one-line diagnostics.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string field, const std::string& message)
      : std::runtime_error(message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Complex matrices are stored as rows of [re, im] pairs.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, const std::string& field);

// {"dim_in": d, "dim_out": d', "kraus": [matrix, ...]}
// Validation is report-only here; callers decide how strict to be.
Channel load_channel_file(const std::string& path);
void save_channel_file(const std::string& path, const Channel& ch);

// {"dims": [...], "matrix": [[...,[re,im],...], ...]}
DensityOperator load_state_file(const std::string& path);
void save_state_file(const std::string& path, const DensityOperator& rho);

// Resolves a --channel token: an existing file path, or a canonical name with
// optional trailing dimension digits ("identity2"); params supplies the
// family parameters (p, gamma, d, px, py, pz).
Channel resolve_channel(const std::string& token,
                        const std::map<std::string, double>& params = {});

struct RunConfig {
  SolverSettings solver;
  std::string out;
  std::string format = "csv";  // csv | json
  int precision = 12;
};

// JSON config with solver overrides; unknown keys are rejected by name.
void apply_config_file(RunConfig& config, const std::string& path);

}  // namespace rss

#endif
