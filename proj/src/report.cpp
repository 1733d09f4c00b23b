#include "ballpot/report.hpp"

#include <algorithm>
#include <cstdio>

#include <nlohmann/json.hpp>

namespace ballpot {

namespace {
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

double EstimateReport::param(const std::string& key, double fallback) const {
  for (const auto& [k, v] : params)
    if (k == key) return v;
  return fallback;
}

std::string report_csv_header() { return "name,n,params,lhs,rhs,margin,pass,note\n"; }

std::string report_csv_row(const EstimateReport& r) {
  std::string p;
  for (size_t i = 0; i < r.params.size(); ++i) {
    if (i) p += ';';
    p += r.params[i].first;
    p += '=';
    p += fmt(r.params[i].second);
  }
  std::string row;
  row += r.name;
  row += ',';
  row += std::to_string(r.n);
  row += ',';
  row += p;
  row += ',';
  row += fmt(r.lhs);
  row += ',';
  row += fmt(r.rhs);
  row += ',';
  row += fmt(r.margin());
  row += ',';
  row += r.pass ? "1" : "0";
  row += ',';
  row += r.note;
  row += '\n';
  return row;
}

std::string reports_to_csv(const std::vector<EstimateReport>& rows) {
  std::string out = report_csv_header();
  for (const auto& r : rows) out += report_csv_row(r);
  return out;
}

std::string reports_summary_json(const std::vector<EstimateReport>& rows) {
  nlohmann::json j;
  j["total"] = rows.size();
  size_t passed = 0;
  double worst = std::numeric_limits<double>::infinity();
  std::string worst_name;
  std::string first_fail;
  for (const auto& r : rows) {
    if (r.pass) ++passed;
    else if (first_fail.empty()) first_fail = r.name;
    if (r.margin() < worst) {
      worst = r.margin();
      worst_name = r.name;
    }
  }
  j["passed"] = passed;
  j["failed"] = rows.size() - passed;
  if (!rows.empty()) {
    j["worst_margin"] = worst;
    j["worst_margin_name"] = worst_name;
  }
  if (!first_fail.empty()) j["first_failure"] = first_fail;
  return j.dump(2) + "\n";
}

bool all_pass(const std::vector<EstimateReport>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const EstimateReport& r) { return r.pass; });
}

}  // namespace ballpot
