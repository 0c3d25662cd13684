#include "family_spec.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "eigencurve/errors.hpp"

namespace eigencurve::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw SpecError(path + ": " + what);
}

void require_keys(const std::string& path, const json& obj,
                  const std::set<std::string>& required,
                  const std::set<std::string>& optional) {
  for (const auto& [key, value] : obj.items()) {
    if (!required.count(key) && !optional.count(key))
      fail(path, "unknown field '" + key + "'");
  }
  for (const auto& key : required)
    if (!obj.contains(key)) fail(path, "missing field '" + key + "'");
}

Complex parse_complex(const std::string& path, const json& j, const char* where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(path, std::string(where) + ": complex values are [re, im] number pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Poly parse_poly(const std::string& path, const json& j, const char* where) {
  if (!j.is_array()) fail(path, std::string(where) + ": expected an array of [re, im]");
  Vector coeffs;
  coeffs.reserve(j.size());
  for (const auto& c : j) coeffs.push_back(parse_complex(path, c, where));
  return Poly(std::move(coeffs));
}

Matrix parse_matrix(const std::string& path, const json& j, int n, const char* where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    fail(path, std::string(where) + ": expected " + std::to_string(n) + " rows");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      fail(path, std::string(where) + ": expected " + std::to_string(n) + " columns");
    for (int c = 0; c < n; ++c) m(i, c) = parse_complex(path, row[c], where);
  }
  return m;
}

family::Interval parse_interval(const std::string& path, const json& j, const char* where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(path, std::string(where) + ": expected [lo, hi]");
  family::Interval iv{j[0].get<double>(), j[1].get<double>()};
  if (!(iv.lo < iv.hi)) fail(path, std::string(where) + ": lo must be < hi");
  return iv;
}

std::function<double(double)> shape_function(const std::string& path,
                                             const std::string& shape) {
  if (shape == "one") return [](double) { return 1.0; };
  if (shape == "x") return [](double x) { return x; };
  if (shape == "x2") return [](double x) { return x * x; };
  if (shape == "sin") return [](double x) { return std::sin(x); };
  if (shape == "cos") return [](double x) { return std::cos(x); };
  fail(path, "unknown potential shape '" + shape + "' (one|x|x2|sin|cos)");
}

}  // namespace

LoadedFamily load_family_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open file");
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(path, std::string("JSON parse error: ") + e.what());
  }
  if (!root.is_object()) fail(path, "top level must be an object");
  if (!root.contains("generator") || !root["generator"].is_string())
    fail(path, "missing string field 'generator'");
  const std::string generator = root["generator"].get<std::string>();

  LoadedFamily out;
  out.generator = generator;

  const auto get_int = [&](const char* key) {
    if (!root[key].is_number_integer()) fail(path, std::string(key) + " must be an integer");
    return root[key].get<int>();
  };
  const auto get_structure = [&]() {
    if (!root["structure"].is_string()) fail(path, "structure must be a string");
    const auto s = family::structure_from_string(root["structure"].get<std::string>());
    if (!s) fail(path, "structure must be hermitian|normal|general");
    return *s;
  };
  const auto apply_claimed_class = [&](family::MatrixFamily& fam) {
    if (!root.contains("claimed_class")) return;
    const std::string c = root["claimed_class"].get<std::string>();
    double alpha = 0.0;
    family::SmoothnessClass sc;
    if (c == "analytic") sc = family::SmoothnessClass::analytic;
    else if (c == "quasianalytic") sc = family::SmoothnessClass::quasianalytic;
    else if (c == "denjoy_carleman") sc = family::SmoothnessClass::denjoy_carleman;
    else if (c == "smooth") sc = family::SmoothnessClass::smooth;
    else if (c == "hoelder") {
      sc = family::SmoothnessClass::hoelder;
      if (!root.contains("hoelder_alpha") || !root["hoelder_alpha"].is_number())
        fail(path, "claimed_class hoelder requires numeric hoelder_alpha");
      alpha = root["hoelder_alpha"].get<double>();
    } else {
      fail(path, "unknown claimed_class '" + c + "'");
    }
    fam.set_claimed_class(sc, alpha);
  };

  try {
    if (generator == "cascade") {
      require_keys(path, root, {"generator", "n_max"},
                   {"claimed_class", "hoelder_alpha", "contour"});
      auto fam = family::cascade_family(get_int("n_max"));
      apply_claimed_class(fam);
      out.matrix = std::move(fam);
    } else if (generator == "schrodinger") {
      require_keys(path, root,
                   {"generator", "grid_points", "interval", "domain", "potential_terms"},
                   {"structure", "claimed_class", "hoelder_alpha", "contour"});
      const int m = get_int("grid_points");
      const auto space = parse_interval(path, root["interval"], "interval");
      const auto domain = parse_interval(path, root["domain"], "domain");
      if (!root["potential_terms"].is_array())
        fail(path, "potential_terms must be an array");
      std::vector<std::pair<Poly, std::function<double(double)>>> terms;
      for (const auto& term : root["potential_terms"]) {
        if (!term.is_object()) fail(path, "potential term must be an object");
        require_keys(path, term, {"shape", "coeff"}, {});
        terms.emplace_back(parse_poly(path, term["coeff"], "potential coeff"),
                           shape_function(path, term["shape"].get<std::string>()));
      }
      auto potential = [terms](double t, double x) {
        double v = 0.0;
        for (const auto& [coeff, shape] : terms) v += coeff(t).real() * shape(x);
        return v;
      };
      auto fam = family::schrodinger_family(potential, m, space, domain);
      apply_claimed_class(fam);
      out.matrix = std::move(fam);
    } else if (generator == "polynomial_entries") {
      require_keys(path, root, {"generator", "size", "domain", "structure", "entries"},
                   {"claimed_class", "hoelder_alpha", "contour"});
      const int n = get_int("size");
      if (n <= 0) fail(path, "size must be positive");
      const auto domain = parse_interval(path, root["domain"], "domain");
      if (!root["entries"].is_array() || static_cast<int>(root["entries"].size()) != n)
        fail(path, "entries must be a size x size array of polynomials");
      std::vector<std::vector<Poly>> entries(n, std::vector<Poly>(n));
      for (int i = 0; i < n; ++i) {
        const auto& row = root["entries"][i];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
          fail(path, "entries must be a size x size array of polynomials");
        for (int j = 0; j < n; ++j) entries[i][j] = parse_poly(path, row[j], "entries");
      }
      auto fam = family::polynomial_entry_family(std::move(entries), get_structure(), domain);
      apply_claimed_class(fam);
      out.matrix = std::move(fam);
    } else if (generator == "glued") {
      require_keys(path, root, {"generator", "size", "domain", "structure", "segments"},
                   {"blend_margin", "claimed_class", "hoelder_alpha", "contour"});
      const int n = get_int("size");
      const auto domain = parse_interval(path, root["domain"], "domain");
      (void)domain;  // the glued domain is derived from the segments
      double margin = 0.0;
      if (root.contains("blend_margin")) {
        if (!root["blend_margin"].is_number()) fail(path, "blend_margin must be a number");
        margin = root["blend_margin"].get<double>();
      }
      if (!root["segments"].is_array() || root["segments"].empty())
        fail(path, "segments must be a nonempty array");
      std::vector<family::SegmentSpec> segments;
      int index = 1;
      for (const auto& seg : root["segments"]) {
        if (!seg.is_object()) fail(path, "segment must be an object");
        require_keys(path, seg, {"anchor", "half_width", "a", "b"}, {});
        family::SegmentSpec s;
        s.index = index++;
        if (!seg["anchor"].is_number() || !seg["half_width"].is_number())
          fail(path, "segment anchor and half_width must be numbers");
        s.anchor = seg["anchor"].get<double>();
        s.half_width = seg["half_width"].get<double>();
        s.a = parse_matrix(path, seg["a"], n, "segment a");
        s.b = parse_matrix(path, seg["b"], n, "segment b");
        segments.push_back(std::move(s));
      }
      auto fam = family::glued_family(std::move(segments), margin, get_structure());
      apply_claimed_class(fam);
      out.matrix = std::move(fam);
    } else if (generator == "polynomial") {
      require_keys(path, root, {"generator", "degree", "domain", "coefficients"}, {});
      const int degree = get_int("degree");
      if (degree <= 0) fail(path, "degree must be positive");
      const auto domain = parse_interval(path, root["domain"], "domain");
      if (!root["coefficients"].is_array() ||
          static_cast<int>(root["coefficients"].size()) != degree)
        fail(path, "coefficients must hold exactly 'degree' polynomials");
      std::vector<Poly> coeffs;
      for (const auto& c : root["coefficients"])
        coeffs.push_back(parse_poly(path, c, "coefficients"));
      out.poly = polyroots::PolynomialFamily::from_polys(std::move(coeffs), domain);
    } else {
      fail(path, "unknown generator '" + generator +
                     "' (cascade|schrodinger|polynomial_entries|glued|polynomial)");
    }
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  } catch (const OverlappingSegments& e) {
    fail(path, e.what());
  }
  if (root.contains("contour")) {
    const auto& j = root["contour"];
    if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() ||
        !j[2].is_number())
      fail(path, "contour must be [center_re, center_im, radius]");
    try {
      out.contour = riesz::Contour::circle(
          Complex(j[0].get<double>(), j[1].get<double>()), j[2].get<double>());
    } catch (const std::invalid_argument& e) {
      fail(path, std::string("contour: ") + e.what());
    }
  }
  return out;
}

}  // namespace eigencurve::cli
