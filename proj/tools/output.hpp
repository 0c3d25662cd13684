#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "eigencurve/tolerances.hpp"
#include "eigencurve/tracking.hpp"

namespace eigencurve::cli {

/// 17 significant digits: enough for doubles to round-trip exactly.
std::string fmt17(double v);

/// One pass/fail entry of the post-run invariant report.
struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

class RunOutput {
 public:
  RunOutput(std::string command, std::filesystem::path out_dir);

  nlohmann::ordered_json& report() { return report_; }

  void add_check(const std::string& name, double value, double threshold);
  void add_check_at_least(const std::string& name, double value, double bound);
  bool all_passed() const { return all_passed_; }

  void write_curves_csv(const std::string& filename, const tracking::CurveBundle& bundle);
  void write_frames_csv(const std::string& filename, const tracking::CurveBundle& bundle);
  void write_events_log(const std::string& filename,
                        const std::vector<tracking::Event>& events);
  /// Arbitrary rectangular table with a header row.
  void write_table_csv(const std::string& filename,
                       const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows);

  void echo_tolerances(const Tolerances& tol);
  /// Writes report.json and returns the suggested exit code (0 or 4).
  int finalize();

 private:
  std::filesystem::path dir_;
  nlohmann::ordered_json report_;
  nlohmann::ordered_json checks_ = nlohmann::ordered_json::array();
  std::vector<std::string> files_;
  bool all_passed_ = true;
};

}  // namespace eigencurve::cli
