#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "eigencurve/errors.hpp"
#include "eigencurve/family.hpp"
#include "eigencurve/linalg.hpp"
#include "eigencurve/matching.hpp"
#include "eigencurve/polyroots.hpp"
#include "eigencurve/riesz.hpp"
#include "eigencurve/tracking.hpp"
#include "family_spec.hpp"
#include "output.hpp"

namespace ec = eigencurve;
using ec::cli::fmt17;
using ec::cli::LoadedFamily;
using ec::cli::RunOutput;
using ec::cli::SpecError;

namespace {

struct CommonOpts {
  std::string family_path;
  std::string grid_spec;
  std::string contour_spec;
  std::string out_dir = "out";
  std::vector<std::string> tol_overrides;
  bool refine = true;
  bool frames = false;
};

ec::Tolerances parse_tolerances(const std::vector<std::string>& overrides) {
  ec::Tolerances tol;
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw SpecError("--tol expects key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    double value = 0.0;
    try {
      value = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw SpecError("--tol " + key + ": value is not a number");
    }
    if (!tol.set(key, value)) throw SpecError("--tol: unknown key '" + key + "'");
  }
  return tol;
}

std::vector<double> parse_grid(const std::string& spec) {
  double lo = 0.0, hi = 0.0;
  int points = 0;
  char c1 = 0, c2 = 0;
  std::istringstream is(spec);
  if (!(is >> lo >> c1 >> hi >> c2 >> points) || c1 != ':' || c2 != ':' || !is.eof())
    throw SpecError("--grid expects lo:hi:points, got '" + spec + "'");
  if (points < 2) throw SpecError("--grid needs at least 2 points");
  if (!(lo < hi)) throw SpecError("--grid needs lo < hi");
  std::vector<double> grid(points);
  for (int k = 0; k < points; ++k) grid[k] = lo + (hi - lo) * k / (points - 1);
  return grid;
}

ec::riesz::Contour parse_contour(const std::string& spec) {
  double re = 0.0, im = 0.0, radius = 0.0;
  char c1 = 0, c2 = 0;
  std::istringstream is(spec);
  if (!(is >> re >> c1 >> im >> c2 >> radius) || c1 != ',' || c2 != ',' || !is.eof())
    throw SpecError("--contour expects center_re,center_im,radius, got '" + spec + "'");
  try {
    return ec::riesz::Contour::circle(ec::Complex(re, im), radius);
  } catch (const std::invalid_argument& e) {
    throw SpecError(std::string("--contour: ") + e.what());
  }
}

std::vector<double> parse_alpha_list(const std::string& spec) {
  std::vector<double> alphas;
  std::istringstream is(spec);
  std::string token;
  while (std::getline(is, token, ',')) {
    try {
      alphas.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw SpecError("--alpha: '" + token + "' is not a number");
    }
  }
  if (alphas.empty()) throw SpecError("--alpha: empty list");
  return alphas;
}

const ec::family::MatrixFamily& require_matrix_family(const LoadedFamily& loaded) {
  if (!loaded.matrix)
    throw SpecError("this command needs a matrix family, but the spec file has generator '" +
                    loaded.generator + "'");
  return *loaded.matrix;
}

void add_bundle_checks(RunOutput& out, const ec::family::MatrixFamily& fam,
                       const ec::tracking::CurveBundle& bundle, const ec::Tolerances& tol) {
  const double scale = std::max(bundle.scale, 1e-300);
  // multiset fidelity against fresh decompositions on up to 16 sample points
  const int kpts = bundle.point_count();
  const int step = std::max(1, kpts / 16);
  double worst = 0.0;
  for (int k = 0; k < kpts; k += step) {
    const ec::Vector fresh =
        ec::tracking::structured_eigenvalues(fam(bundle.grid[k]), fam.structure(), tol);
    ec::Vector tracked(bundle.curve_count());
    for (int i = 0; i < bundle.curve_count(); ++i) tracked[i] = bundle.curves[i][k];
    // assignment distance; for real spectra the monotone pairing is the exact
    // bottleneck optimum at any size
    worst = std::max(worst,
                     ec::tracking::continuation_assignment(tracked, fresh, tol).distance);
  }
  out.add_check("multiset_fidelity", worst, tol.bundle_fidelity * scale);

  if (fam.structure() == ec::family::Structure::hermitian) {
    double maxim = 0.0;
    for (const auto& curve : bundle.curves)
      for (const auto& v : curve) maxim = std::max(maxim, std::fabs(v.imag()));
    out.add_check("hermitian_real_curves", maxim, 1e-10 * scale);
  }
  if (!bundle.frames.empty()) {
    double worst_res = 0.0;
    for (int k = 0; k < kpts; k += step) {
      const ec::Matrix a = fam(bundle.grid[k]);
      for (int i = 0; i < bundle.curve_count(); ++i) {
        const ec::Vector u = bundle.frames[k].col(i);
        ec::Vector au = a * u;
        for (size_t r = 0; r < au.size(); ++r) au[r] -= bundle.curves[i][k] * u[r];
        worst_res = std::max(worst_res, ec::norm(au));
      }
    }
    out.add_check("frame_residual", worst_res, 1e-8 * scale);
  }
}

int run_track(const CommonOpts& opts) {
  const auto tol = parse_tolerances(opts.tol_overrides);
  const auto loaded = ec::cli::load_family_spec(opts.family_path);
  const auto& fam = require_matrix_family(loaded);
  const auto grid = parse_grid(opts.grid_spec);

  RunOutput out("track", opts.out_dir);
  out.report()["family"] = opts.family_path;
  out.report()["generator"] = loaded.generator;
  out.report()["grid"] = opts.grid_spec;
  out.report()["refine"] = opts.refine;

  auto bundle = ec::tracking::track_eigenvalues(fam, grid, opts.refine, tol);
  if (opts.frames) bundle = ec::tracking::track_eigenvectors(fam, std::move(bundle), tol);

  out.write_curves_csv("curves.csv", bundle);
  if (opts.frames) out.write_frames_csv("frames.csv", bundle);
  out.write_events_log("events.log", bundle.events);
  out.report()["points"] = bundle.point_count();
  out.report()["curves"] = bundle.curve_count();
  out.report()["events"] = bundle.events.size();
  out.report()["scale"] = bundle.scale;
  add_bundle_checks(out, fam, bundle, tol);
  out.echo_tolerances(tol);
  return out.finalize();
}

int run_riesz(const CommonOpts& opts) {
  const auto tol = parse_tolerances(opts.tol_overrides);
  const auto loaded = ec::cli::load_family_spec(opts.family_path);
  const auto& fam = require_matrix_family(loaded);
  const auto grid = parse_grid(opts.grid_spec);
  if (opts.contour_spec.empty()) throw SpecError("riesz requires --contour");
  const auto contour = parse_contour(opts.contour_spec);

  RunOutput out("riesz", opts.out_dir);
  out.report()["family"] = opts.family_path;
  out.report()["grid"] = opts.grid_spec;
  out.report()["contour"] = opts.contour_spec;

  const auto scan = ec::riesz::rank_constancy_scan(fam, grid, contour, tol);

  std::vector<std::vector<std::string>> rows;
  double worst_idem = 0.0, worst_herm = 0.0, worst_commute = 0.0, worst_trace = 0.0;
  for (size_t k = 0; k < scan.grid.size(); ++k) {
    const auto& p = scan.projectors[k];
    const ec::Matrix a = fam(scan.grid[k]);
    const double commute = (a * p.p - p.p * a).frobenius_norm();
    const double norm_a = a.frobenius_norm();
    worst_idem = std::max(worst_idem, p.idempotency_defect);
    worst_herm = std::max(worst_herm, p.hermitian_defect);
    worst_commute = std::max(worst_commute, commute / std::max(norm_a, 1e-300));
    worst_trace = std::max(worst_trace, std::abs(p.p.trace() - ec::Complex(p.rank, 0.0)));
    rows.push_back({fmt17(scan.grid[k]), std::to_string(p.rank),
                    fmt17(p.idempotency_defect), fmt17(p.hermitian_defect), fmt17(commute),
                    fmt17(p.p.trace().real()), fmt17(p.p.trace().imag()),
                    std::to_string(p.nodes_used), fmt17(p.last_delta), fmt17(p.prev_delta)});
  }
  out.write_table_csv("projectors.csv",
                      {"t", "rank", "idempotency_defect", "hermitian_defect",
                       "commutation_defect", "trace_re", "trace_im", "nodes",
                       "last_delta", "prev_delta"},
                      rows);
  out.report()["rank"] = scan.ranks.front();
  out.add_check("projector_idempotency", worst_idem, tol.projector_idem);
  if (fam.structure() != ec::family::Structure::general)
    out.add_check("projector_hermitian", worst_herm, tol.projector_herm);
  out.add_check("projector_commutation_rel", worst_commute, tol.projector_commute);
  out.add_check("trace_vs_rank", worst_trace, tol.trace_rank);
  out.echo_tolerances(tol);
  return out.finalize();
}

std::vector<std::vector<double>> read_numeric_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path + ": cannot open file");
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream is(line);
    std::string token;
    while (std::getline(is, token, ',')) {
      try {
        row.push_back(std::stod(token));
      } catch (const std::exception&) {
        throw SpecError(path + ":" + std::to_string(lineno) + ": '" + token +
                        "' is not a number");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw SpecError(path + ": empty file");
  const size_t cols = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) throw SpecError(path + ": ragged rows");
  return rows;
}

int run_match(const std::string& path_a, const std::string& path_b,
              const std::string& mode, const std::string& out_dir,
              const std::vector<std::string>& tol_overrides) {
  const auto tol = parse_tolerances(tol_overrides);
  const auto rows_a = read_numeric_csv(path_a);
  const auto rows_b = read_numeric_csv(path_b);

  bool matrices;
  if (mode == "matrices") {
    matrices = true;
  } else if (mode == "spectra") {
    matrices = false;
  } else {
    // auto: n rows x 2n columns reads as a matrix, otherwise rows of re,im
    matrices = rows_a.front().size() == 2 * rows_a.size() && rows_a.size() >= 2;
  }

  double d = 0.0, opnorm = 0.0, ratio = 0.0;
  bool bound_violated = false;
  if (matrices) {
    auto to_matrix = [](const std::vector<std::vector<double>>& rows,
                        const std::string& path) {
      const int n = static_cast<int>(rows.size());
      for (const auto& r : rows)
        if (static_cast<int>(r.size()) != 2 * n)
          throw SpecError(path + ": a matrix file needs n rows with 2n entries (re,im)");
      ec::Matrix m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          m(i, j) = ec::Complex(rows[i][2 * j], rows[i][2 * j + 1]);
      return m;
    };
    const ec::Matrix a = to_matrix(rows_a, path_a);
    const ec::Matrix b = to_matrix(rows_b, path_b);
    try {
      const auto r = ec::matching::check_normal_bound(a, b, tol);
      d = r.d;
      opnorm = r.norm;
      ratio = r.ratio;
    } catch (const ec::BoundViolated&) {
      bound_violated = true;
      const auto da = ec::normal_eigen(a, tol);
      const auto db = ec::normal_eigen(b, tol);
      d = ec::matching::matching_distance(da.values, db.values, tol);
      opnorm = ec::operator_norm(a - b, tol);
      ratio = opnorm > 0.0 ? d / opnorm : 0.0;
    }
    std::printf("d = %.6g\nnorm = %.6g\nratio = %.6g\n", d, opnorm, ratio);
  } else {
    auto to_spectrum = [](const std::vector<std::vector<double>>& rows,
                          const std::string& path) {
      ec::Vector v;
      for (const auto& r : rows) {
        if (r.size() != 2)
          throw SpecError(path + ": a spectrum file needs rows of re,im");
        v.push_back(ec::Complex(r[0], r[1]));
      }
      return v;
    };
    d = ec::matching::matching_distance(to_spectrum(rows_a, path_a),
                                        to_spectrum(rows_b, path_b), tol);
    std::printf("d = %.6g\n", d);
  }

  if (!out_dir.empty()) {
    RunOutput out("match", out_dir);
    out.report()["a"] = path_a;
    out.report()["b"] = path_b;
    out.report()["mode"] = matrices ? "matrices" : "spectra";
    out.report()["d"] = d;
    if (matrices) {
      out.report()["norm"] = opnorm;
      out.report()["ratio"] = ratio;
      out.add_check("normal_bound_ratio", ratio, 3.0);
    }
    out.echo_tolerances(tol);
    const int code = out.finalize();
    if (code != 0) return code;
  }
  return bound_violated ? 4 : 0;
}

int run_polyroots(const CommonOpts& opts, bool real_rooted,
                  const std::string& substitute_spec,
                  std::optional<double> estimate_at) {
  const auto tol = parse_tolerances(opts.tol_overrides);
  const auto loaded = ec::cli::load_family_spec(opts.family_path);
  if (!loaded.poly)
    throw SpecError("polyroots needs a 'polynomial' generator spec file");
  ec::polyroots::PolynomialFamily family = *loaded.poly;

  RunOutput out("polyroots", opts.out_dir);
  out.report()["family"] = opts.family_path;
  out.report()["degree"] = family.degree();

  if (estimate_at) {
    ec::polyroots::OrderDiagnostics diag;
    const auto sub = ec::polyroots::estimate_substitution_order(
        family, *estimate_at, tol.exponent_kmax, &diag, tol);
    out.report()["estimate_t0"] = *estimate_at;
    out.report()["estimated_order"] = sub.order;
    auto branch_json = [](const std::vector<ec::polyroots::BranchDiagnostics>& branches) {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& b : branches)
        arr.push_back({{"branching", b.branching},
                       {"slope", b.slope},
                       {"numerator", b.numerator},
                       {"denominator", b.denominator},
                       {"residual", b.residual}});
      return arr;
    };
    out.report()["plus_branch"] = branch_json(diag.plus);
    out.report()["minus_branch"] = branch_json(diag.minus);
    std::printf("estimated substitution order N = %d at t0 = %s\n", sub.order,
                fmt17(*estimate_at).c_str());
  }

  if (!substitute_spec.empty()) {
    double t0 = 0.0;
    int order = 0, eps = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(substitute_spec);
    if (!(is >> t0 >> c1 >> order >> c2 >> eps) || c1 != ',' || c2 != ',' || !is.eof() ||
        order < 1 || (eps != 0 && eps != 1))
      throw SpecError("--substitute expects t0,N,eps with N >= 1 and eps in {0,1}");
    family = ec::polyroots::substitute_power(family, {t0, order, eps});
    out.report()["substitution"] = {{"t0", t0}, {"order", order}, {"sign_branch", eps}};
    out.report()["s_domain"] = {family.domain().lo, family.domain().hi};
  }

  if (!opts.grid_spec.empty()) {
    const auto grid = parse_grid(opts.grid_spec);
    const auto bundle = ec::polyroots::track_roots(family, grid, real_rooted, tol);
    out.write_curves_csv("roots.csv", bundle);
    out.report()["grid"] = opts.grid_spec;
    out.report()["points"] = bundle.point_count();
    if (real_rooted) {
      double maxim = 0.0;
      for (const auto& curve : bundle.curves)
        for (const auto& v : curve) maxim = std::max(maxim, std::fabs(v.imag()));
      out.add_check("real_root_curves", maxim, 1e-10 * std::max(bundle.scale, 1e-300));
    }
  }
  out.echo_tolerances(tol);
  return out.finalize();
}

int run_example(int n_max, const std::string& alpha_spec, const std::string& out_dir,
                const std::vector<std::string>& tol_overrides) {
  const auto tol = parse_tolerances(tol_overrides);
  if (n_max < 1 || n_max > 30) throw SpecError("--n-max must be in [1, 30]");
  const auto alphas = parse_alpha_list(alpha_spec);
  const auto fam = ec::family::cascade_family(n_max);

  RunOutput out("example", out_dir);
  out.report()["n_max"] = n_max;
  out.report()["alpha"] = alphas;

  std::vector<std::vector<std::string>> rows;
  std::printf("%4s %8s %22s %22s\n", "n", "alpha", "s_n", "quotient");
  for (int n = 1; n <= n_max; ++n) {
    const double anchor = ec::family::cascade_anchor(n);
    const double sn = ec::family::cascade_scale(n);
    for (double alpha : alphas) {
      const double q = ec::tracking::hoelder_quotient(fam, 1, anchor, sn, alpha, tol);
      rows.push_back({std::to_string(n), fmt17(alpha), fmt17(sn), fmt17(q)});
      std::printf("%4d %8g %22.15g %22.15g\n", n, alpha, sn, q);
    }
  }
  out.write_table_csv("quotients.csv", {"n", "alpha", "s_n", "quotient"}, rows);
  out.echo_tolerances(tol);
  return out.finalize();
}

int run_diagnose(const CommonOpts& opts, double gap_tol, const std::string& alpha_spec) {
  const auto tol = parse_tolerances(opts.tol_overrides);
  const auto loaded = ec::cli::load_family_spec(opts.family_path);
  const auto& fam = require_matrix_family(loaded);
  const auto grid = parse_grid(opts.grid_spec);
  const auto alphas = parse_alpha_list(alpha_spec);

  RunOutput out("diagnose", opts.out_dir);
  out.report()["family"] = opts.family_path;
  out.report()["generator"] = loaded.generator;
  out.report()["grid"] = opts.grid_spec;
  out.report()["gap_tol"] = gap_tol;

  const auto bundle = ec::tracking::track_eigenvalues(fam, grid, opts.refine, tol);
  out.write_curves_csv("curves.csv", bundle);
  out.write_events_log("events.log", bundle.events);
  add_bundle_checks(out, fam, bundle, tol);

  const auto crossings = ec::tracking::crossing_detect(fam, bundle, gap_tol, tol);
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : crossings)
    rows.push_back({fmt17(c.t_star), std::to_string(c.i), std::to_string(c.j),
                    fmt17(c.gap_min), std::to_string(c.order_estimate),
                    c.infinite_order_suspect ? "1" : "0", fmt17(c.t_lo), fmt17(c.t_hi)});
  out.write_table_csv(
      "crossings.csv",
      {"t_star", "i", "j", "gap_min", "order_estimate", "infinite_order_suspect",
       "t_lo", "t_hi"},
      rows);
  out.report()["crossings"] = crossings.size();

  // Hoelder sweep: segment families probe their anchors at the inner scale,
  // generic families probe each crossing bracket.
  std::vector<std::vector<std::string>> quotient_rows;
  if (const auto* segments = fam.segments()) {
    for (const auto& seg : *segments) {
      if (seg.anchor < grid.front() || seg.anchor > grid.back()) continue;
      const double sn =
          loaded.generator == "cascade" ? ec::family::cascade_scale(seg.index)
                                        : 0.25 * seg.half_width;
      for (double alpha : alphas) {
        const double q = ec::tracking::hoelder_quotient(fam, fam.size() - 1, seg.anchor,
                                                        sn, alpha, tol);
        quotient_rows.push_back(
            {std::to_string(seg.index), fmt17(seg.anchor), fmt17(sn), fmt17(alpha), fmt17(q)});
      }
    }
    out.write_table_csv("quotients.csv", {"segment", "t", "s", "alpha", "quotient"},
                        quotient_rows);
  } else if (!crossings.empty()) {
    int index = 0;
    for (const auto& c : crossings) {
      const double s = 0.25 * (c.t_hi - c.t_lo);
      if (s <= 0.0) continue;
      for (double alpha : alphas) {
        const double q =
            ec::tracking::hoelder_quotient(fam, c.i, c.t_star, s, alpha, tol);
        quotient_rows.push_back(
            {std::to_string(index), fmt17(c.t_star), fmt17(s), fmt17(alpha), fmt17(q)});
      }
      ++index;
    }
    out.write_table_csv("quotients.csv", {"crossing", "t", "s", "alpha", "quotient"},
                        quotient_rows);
  }
  out.echo_tolerances(tol);
  return out.finalize();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical toolkit for eigenvalue curves of one-parameter matrix families"};
  app.require_subcommand(1);

  CommonOpts opts;
  bool real_rooted = false;
  std::string substitute_spec;
  std::optional<double> estimate_at;
  std::string match_a, match_b, match_mode = "auto", match_out;
  std::vector<std::string> match_tols;
  int n_max = 8;
  std::string alpha_spec = "0.25,0.5,1";
  std::string example_out = "out";
  std::vector<std::string> example_tols;
  double gap_tol = 0.1;

  const auto add_common = [&](CLI::App* cmd, bool needs_grid) {
    cmd->add_option("--family", opts.family_path, "family spec file (JSON)")->required();
    auto* g = cmd->add_option("--grid", opts.grid_spec, "evaluation grid lo:hi:points");
    if (needs_grid) g->required();
    cmd->add_option("--out", opts.out_dir, "output directory (default: out)");
    cmd->add_option("--tol", opts.tol_overrides, "tolerance override key=value (repeatable)");
    cmd->add_flag("--refine,!--no-refine", opts.refine,
                  "bisect steps with ambiguous labels (default: on)");
  };

  auto* track = app.add_subcommand("track", "track eigenvalue curves over a grid");
  add_common(track, true);
  track->add_flag("--frames", opts.frames, "also write gauge-fixed eigenvector frames");

  auto* riesz = app.add_subcommand("riesz", "spectral projectors along a grid");
  add_common(riesz, true);
  riesz->add_option("--contour", opts.contour_spec, "circle center_re,center_im,radius")
      ->required();

  auto* match = app.add_subcommand("match", "matching distance of two spectra or matrices");
  match->add_option("a", match_a, "first CSV file")->required();
  match->add_option("b", match_b, "second CSV file")->required();
  match->add_option("--mode", match_mode, "auto|spectra|matrices (default auto)")
      ->check(CLI::IsMember({"auto", "spectra", "matrices"}));
  match->add_option("--out", match_out, "output directory for report.json");
  match->add_option("--tol", match_tols, "tolerance override key=value (repeatable)");

  auto* poly = app.add_subcommand("polyroots", "root curves of a polynomial family");
  add_common(poly, false);
  poly->add_flag("--real-rooted", real_rooted, "use the Sturm bisection real-root path");
  poly->add_option("--substitute", substitute_spec,
                   "power substitution t0,N,eps before tracking");
  poly->add_option("--estimate-order", estimate_at,
                   "estimate the substitution order at this t0");

  auto* example = app.add_subcommand(
      "example", "divergent derivative quotients of the cascade family");
  example->add_option("--n-max", n_max, "largest segment index (default 8)");
  example->add_option("--alpha", alpha_spec, "comma-separated exponents (default 0.25,0.5,1)");
  example->add_option("--out", example_out, "output directory (default: out)");
  example->add_option("--tol", example_tols, "tolerance override key=value (repeatable)");

  auto* diagnose = app.add_subcommand(
      "diagnose", "crossing orders and derivative quotients of a family");
  add_common(diagnose, true);
  diagnose->add_option("--gap-tol", gap_tol, "crossing gap threshold, times scale (default 0.1)");
  diagnose->add_option("--alpha", alpha_spec, "comma-separated exponents (default 0.25,0.5,1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(track)) return run_track(opts);
    if (app.got_subcommand(riesz)) return run_riesz(opts);
    if (app.got_subcommand(match))
      return run_match(match_a, match_b, match_mode, match_out, match_tols);
    if (app.got_subcommand(poly))
      return run_polyroots(opts, real_rooted, substitute_spec, estimate_at);
    if (app.got_subcommand(example))
      return run_example(n_max, alpha_spec, example_out, example_tols);
    if (app.got_subcommand(diagnose)) return run_diagnose(opts, gap_tol, alpha_spec);
  } catch (const SpecError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const ec::BoundViolated& e) {
    std::fprintf(stderr, "invariant violation: BoundViolated: %s\n", e.what());
    return 4;
  } catch (const ec::Error& e) {
    std::fprintf(stderr, "error: %s: %s\n", e.code().c_str(), e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }
  return 0;
}
