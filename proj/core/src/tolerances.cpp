#include "eigencurve/tolerances.hpp"

namespace eigencurve {

namespace {

struct DoubleEntry {
  const char* key;
  double Tolerances::* member;
};

struct IntEntry {
  const char* key;
  int Tolerances::* member;
};

constexpr DoubleEntry kDoubleEntries[] = {
    {"hermitian_check", &Tolerances::hermitian_check},
    {"normality_check", &Tolerances::normality_check},
    {"eigen_residual", &Tolerances::eigen_residual},
    {"orthonormality", &Tolerances::orthonormality},
    {"cluster_gap", &Tolerances::cluster_gap},
    {"gs_independence", &Tolerances::gs_independence},
    {"gs_orthonormality", &Tolerances::gs_orthonormality},
    {"lu_pivot", &Tolerances::lu_pivot},
    {"opnorm_rel", &Tolerances::opnorm_rel},
    {"family_structure", &Tolerances::family_structure},
    {"resolvent_margin", &Tolerances::resolvent_margin},
    {"contour_margin", &Tolerances::contour_margin},
    {"quad_delta", &Tolerances::quad_delta},
    {"projector_idem", &Tolerances::projector_idem},
    {"projector_herm", &Tolerances::projector_herm},
    {"projector_commute", &Tolerances::projector_commute},
    {"trace_rank", &Tolerances::trace_rank},
    {"frame_restart", &Tolerances::frame_restart},
    {"invariance", &Tolerances::invariance},
    {"bundle_fidelity", &Tolerances::bundle_fidelity},
    {"refine_gap_factor", &Tolerances::refine_gap_factor},
    {"degenerate_gap", &Tolerances::degenerate_gap},
    {"crossing_threshold", &Tolerances::crossing_threshold},
    {"crossing_flat_gap", &Tolerances::crossing_flat_gap},
    {"holder_step_factor", &Tolerances::holder_step_factor},
    {"exponent_residual", &Tolerances::exponent_residual},
    {"root_cluster", &Tolerances::root_cluster},
};

constexpr IntEntry kIntEntries[] = {
    {"jacobi_sweep_cap", &Tolerances::jacobi_sweep_cap},
    {"quad_node_cap", &Tolerances::quad_node_cap},
    {"matching_cap", &Tolerances::matching_cap},
    {"refine_depth", &Tolerances::refine_depth},
    {"crossing_kmax", &Tolerances::crossing_kmax},
    {"exponent_kmax", &Tolerances::exponent_kmax},
};

}  // namespace

bool Tolerances::set(const std::string& key, double value) {
  for (const auto& e : kDoubleEntries) {
    if (key == e.key) {
      this->*e.member = value;
      return true;
    }
  }
  for (const auto& e : kIntEntries) {
    if (key == e.key) {
      this->*e.member = static_cast<int>(value);
      return true;
    }
  }
  return false;
}

std::vector<std::pair<std::string, double>> Tolerances::entries() const {
  std::vector<std::pair<std::string, double>> out;
  out.reserve(std::size(kDoubleEntries) + std::size(kIntEntries));
  for (const auto& e : kDoubleEntries) out.emplace_back(e.key, this->*e.member);
  for (const auto& e : kIntEntries)
    out.emplace_back(e.key, static_cast<double>(this->*e.member));
  return out;
}

}  // namespace eigencurve
