#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace eigencurve {

/// Base class for all numerical failures raised by the library. `code()` is a
/// stable machine-readable name; `what()` carries the human-readable context.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

struct NonFinite : Error {
  explicit NonFinite(const std::string& m) : Error("NonFinite", m) {}
};

struct NotHermitian : Error {
  explicit NotHermitian(const std::string& m) : Error("NotHermitian", m) {}
};

struct NotNormal : Error {
  explicit NotNormal(const std::string& m) : Error("NotNormal", m) {}
};

struct NoConvergence : Error {
  explicit NoConvergence(const std::string& m) : Error("NoConvergence", m) {}
};

struct RankDeficient : Error {
  RankDeficient(int first_dependent, const std::string& m)
      : Error("RankDeficient", m), first_dependent_index(first_dependent) {}
  int first_dependent_index;
};

struct Singular : Error {
  explicit Singular(const std::string& m) : Error("Singular", m) {}
};

struct SpectrumHit : Error {
  SpectrumHit(std::complex<double> z, const std::string& m)
      : Error("SpectrumHit", m), z(z) {}
  std::complex<double> z;
};

struct EigenvalueOnContour : Error {
  EigenvalueOnContour(double t, const std::string& m)
      : Error("EigenvalueOnContour", m), t(t) {}
  double t;
};

struct QuadratureStall : Error {
  explicit QuadratureStall(const std::string& m) : Error("QuadratureStall", m) {}
};

struct ContourBreach : Error {
  ContourBreach(double t_lo, double t_hi, const std::string& m)
      : Error("ContourBreach", m), t_lo(t_lo), t_hi(t_hi) {}
  double t_lo;
  double t_hi;
};

struct NotInvariant : Error {
  explicit NotInvariant(const std::string& m) : Error("NotInvariant", m) {}
};

struct LengthMismatch : Error {
  explicit LengthMismatch(const std::string& m) : Error("LengthMismatch", m) {}
};

struct BoundViolated : Error {
  explicit BoundViolated(const std::string& m) : Error("BoundViolated", m) {}
};

struct OverlappingSegments : Error {
  explicit OverlappingSegments(const std::string& m)
      : Error("OverlappingSegments", m) {}
};

struct StructureViolation : Error {
  StructureViolation(double t, const std::string& m)
      : Error("StructureViolation", m), t(t) {}
  double t;
};

struct ClusterMismatch : Error {
  ClusterMismatch(double t, const std::string& m)
      : Error("ClusterMismatch", m), t(t) {}
  double t;
};

struct NotHyperbolic : Error {
  NotHyperbolic(double t, const std::string& m)
      : Error("NotHyperbolic", m), t(t) {}
  double t;
};

struct ExponentUnresolved : Error {
  explicit ExponentUnresolved(const std::string& m)
      : Error("ExponentUnresolved", m) {}
};

}  // namespace eigencurve
