#include "output.hpp"

#include <cstdio>
#include <fstream>

#include "family_spec.hpp"

namespace eigencurve::cli {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

RunOutput::RunOutput(std::string command, std::filesystem::path out_dir)
    : dir_(std::move(out_dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw SpecError("cannot create output directory " + dir_.string());
  report_["command"] = std::move(command);
}

void RunOutput::add_check(const std::string& name, double value, double threshold) {
  const bool pass = value <= threshold;
  checks_.push_back({{"name", name},
                     {"value", value},
                     {"threshold", threshold},
                     {"pass", pass}});
  all_passed_ = all_passed_ && pass;
}

void RunOutput::add_check_at_least(const std::string& name, double value, double bound) {
  const bool pass = value >= bound;
  checks_.push_back(
      {{"name", name}, {"value", value}, {"bound", bound}, {"pass", pass}});
  all_passed_ = all_passed_ && pass;
}

void RunOutput::write_curves_csv(const std::string& filename,
                                 const tracking::CurveBundle& bundle) {
  std::ofstream os(dir_ / filename, std::ios::binary);
  os << "t";
  for (int i = 0; i < bundle.curve_count(); ++i)
    os << ",re_lambda_" << i << ",im_lambda_" << i;
  os << "\n";
  for (int k = 0; k < bundle.point_count(); ++k) {
    os << fmt17(bundle.grid[k]);
    for (int i = 0; i < bundle.curve_count(); ++i)
      os << "," << fmt17(bundle.curves[i][k].real()) << ","
         << fmt17(bundle.curves[i][k].imag());
    os << "\n";
  }
  files_.push_back(filename);
}

void RunOutput::write_frames_csv(const std::string& filename,
                                 const tracking::CurveBundle& bundle) {
  if (bundle.frames.empty()) return;
  std::ofstream os(dir_ / filename, std::ios::binary);
  const int n = bundle.frames.front().rows();
  os << "t";
  for (int i = 0; i < bundle.curve_count(); ++i)
    for (int r = 0; r < n; ++r) os << ",re_u" << i << "_" << r << ",im_u" << i << "_" << r;
  os << "\n";
  for (int k = 0; k < bundle.point_count(); ++k) {
    os << fmt17(bundle.grid[k]);
    for (int i = 0; i < bundle.curve_count(); ++i)
      for (int r = 0; r < n; ++r)
        os << "," << fmt17(bundle.frames[k](r, i).real()) << ","
           << fmt17(bundle.frames[k](r, i).imag());
    os << "\n";
  }
  files_.push_back(filename);
}

void RunOutput::write_events_log(const std::string& filename,
                                 const std::vector<tracking::Event>& events) {
  std::ofstream os(dir_ / filename, std::ios::binary);
  for (const auto& e : events) {
    os << "event=" << e.kind << " t_lo=" << fmt17(e.t_lo) << " t_hi=" << fmt17(e.t_hi);
    if (!e.detail.empty()) os << " detail=\"" << e.detail << "\"";
    os << "\n";
  }
  files_.push_back(filename);
}

void RunOutput::write_table_csv(const std::string& filename,
                                const std::vector<std::string>& header,
                                const std::vector<std::vector<std::string>>& rows) {
  std::ofstream os(dir_ / filename, std::ios::binary);
  for (size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << header[c];
  os << "\n";
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
    os << "\n";
  }
  files_.push_back(filename);
}

void RunOutput::echo_tolerances(const Tolerances& tol) {
  nlohmann::ordered_json t;
  for (const auto& [key, value] : tol.entries()) t[key] = value;
  report_["tolerances"] = std::move(t);
}

int RunOutput::finalize() {
  report_["checks"] = checks_;
  report_["all_checks_passed"] = all_passed_;
  report_["outputs"] = files_;
  std::ofstream os(dir_ / "report.json", std::ios::binary);
  os << report_.dump(2) << "\n";
  return all_passed_ ? 0 : 4;
}

}  // namespace eigencurve::cli
