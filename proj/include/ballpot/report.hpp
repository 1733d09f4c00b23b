#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ballpot {

/// One verified inequality instance: left side, right side, parameters and
/// outcome.  pass holds exactly when margin() >= -tol.
struct EstimateReport {
  std::string name;
  int n = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double tol = 1e-6;
  bool pass = false;
  std::vector<std::pair<std::string, double>> params;
  std::string note;

  double margin() const { return rhs - lhs; }

  EstimateReport& with(const std::string& key, double value) {
    params.emplace_back(key, value);
    return *this;
  }

  double param(const std::string& key, double fallback = 0.0) const;

  /// Sets pass from the margin rule and returns *this.
  EstimateReport& finalize() {
    pass = margin() >= -tol;
    return *this;
  }
};

/// CSV layout: name,n,params,lhs,rhs,margin,pass,note with params encoded
/// as semicolon-separated key=value pairs (17 significant digits, stable
/// order, no locale dependence).
std::string report_csv_header();
std::string report_csv_row(const EstimateReport& r);
std::string reports_to_csv(const std::vector<EstimateReport>& rows);

/// JSON summary: counts, worst margin, first failing row.
std::string reports_summary_json(const std::vector<EstimateReport>& rows);

bool all_pass(const std::vector<EstimateReport>& rows);

}  // namespace ballpot
