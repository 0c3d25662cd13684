#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "eigencurve/family.hpp"
#include "eigencurve/polyroots.hpp"
#include "eigencurve/riesz.hpp"

namespace eigencurve::cli {

/// Configuration-level failure: unreadable file, malformed JSON, schema
/// violation. Mapped to exit code 2.
struct SpecError : std::runtime_error {
  explicit SpecError(const std::string& m) : std::runtime_error(m) {}
};

/// A family spec file holds either a matrix family or a polynomial family,
/// depending on its generator, plus an optional default contour.
struct LoadedFamily {
  std::optional<family::MatrixFamily> matrix;
  std::optional<polyroots::PolynomialFamily> poly;
  std::optional<riesz::Contour> contour;
  std::string generator;
};

/// Parses a family spec file. The schema is documented in
/// docs/family_spec.md; unknown fields are rejected with the offending key.
LoadedFamily load_family_spec(const std::string& path);

}  // namespace eigencurve::cli
