#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace fournls {

using Json = nlohmann::ordered_json;

struct PowerLawFit {
  double rate = 0.0;       // sigma_hat = -slope of log y against log x
  double intercept = 0.0;  // log y at log x = 0
  double residual = 0.0;   // RMS of the log-space residuals
};

/// Least squares on (log x, log y). Needs >= 3 rows with x, y > 0.
PowerLawFit fit_decay_rate(const std::vector<double>& x, const std::vector<double>& y);

struct ExperimentReport {
  std::string kind;
  Json params = Json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<double>> table;
  std::optional<PowerLawFit> fitted;
  Json summary = Json::object();
  std::vector<std::string> artifacts;

  /// Column by name; throws std::out_of_range when absent.
  std::vector<double> column(const std::string& name) const;

  /// With deterministic set the timestamp is written as 0 so identical runs
  /// produce identical bytes.
  Json to_json(bool deterministic = false) const;
  std::string to_csv() const;
};

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace fournls
