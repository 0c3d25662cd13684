#include <doctest.h>

#include <cmath>
#include <vector>

#include "eigencurve/errors.hpp"
#include "eigencurve/family.hpp"
#include "eigencurve/linalg.hpp"
#include "eigencurve/matching.hpp"
#include "eigencurve/tracking.hpp"
#include "test_helpers.hpp"

using namespace eigencurve;
using namespace eigencurve::tracking;
using eigencurve::family::MatrixFamily;
using eigencurve::family::Structure;

namespace {

MatrixFamily diag_family(std::function<double(double)> f1, std::function<double(double)> f2) {
  return MatrixFamily(2, {-2.0, 2.0}, Structure::hermitian, [f1, f2](double t) {
    return Matrix{{f1(t), 0.0}, {0.0, f2(t)}};
  });
}

MatrixFamily tilt_family() {
  return MatrixFamily(2, {-10.0, 10.0}, Structure::hermitian, [](double t) {
    return Matrix{{t, 1.0}, {1.0, -t}};
  });
}

std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> g(points);
  for (int k = 0; k < points; ++k)
    g[k] = lo + (hi - lo) * k / (points - 1);
  return g;
}

}  // namespace

TEST_CASE("tracking keeps the smooth labeling through a linear crossing") {
  const auto fam = diag_family([](double t) { return t; }, [](double t) { return -t; });
  const auto b = track_eigenvalues(fam, linspace(-1.0, 1.0, 41));
  REQUIRE(b.curve_count() == 2);
  // one curve is t, the other -t; identify by the left endpoint
  const int up = b.curves[0][0].real() < 0.0 ? 0 : 1;
  for (int k = 0; k < b.point_count(); ++k) {
    CHECK(std::fabs(b.curves[up][k].real() - b.grid[k]) < 1e-12);
    CHECK(std::fabs(b.curves[1 - up][k].real() + b.grid[k]) < 1e-12);
  }
}

TEST_CASE("avoided crossing tracks the closed form") {
  const auto fam = tilt_family();
  const auto b = track_eigenvalues(fam, linspace(-1.0, 1.0, 41));
  const int up = b.curves[0][0].real() > 0.0 ? 0 : 1;
  for (int k = 0; k < b.point_count(); ++k) {
    const double expected = std::sqrt(1.0 + b.grid[k] * b.grid[k]);
    CHECK(b.curves[up][k].real() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(b.curves[1 - up][k].real() == doctest::Approx(-expected).epsilon(1e-12));
  }
  const auto crossings = crossing_detect(fam, b, 0.5);
  CHECK(crossings.empty());  // gap never dips below 2 while scale ~ 2
}

TEST_CASE("cascade segment curves match the closed form to 1e-12") {
  const auto fam = family::cascade_family(4);
  const int n = 3;
  const double anchor = family::cascade_anchor(n);
  const double w = 1.0 / 9.0;
  const double sn = family::cascade_scale(n);
  const double an = std::ldexp(1.0, -n * n);
  const auto b = track_eigenvalues(fam, linspace(anchor - w, anchor + w, 101));
  const int up = b.curves[0][0].real() > 0.0 ? 0 : 1;
  for (int k = 0; k < b.point_count(); ++k) {
    const double local = b.grid[k] - anchor;
    const double expected = an * std::sqrt(1.0 + (local / sn) * (local / sn));
    CHECK(std::fabs(b.curves[up][k].real() - expected) <= 1e-12 * expected);
    CHECK(std::fabs(b.curves[1 - up][k].real() + expected) <= 1e-12 * expected);
  }
}

TEST_CASE("multiset fidelity at every grid point") {
  const auto fam = tilt_family();
  const auto b = track_eigenvalues(fam, linspace(-1.0, 1.0, 21));
  for (int k = 0; k < b.point_count(); ++k) {
    const Vector fresh = structured_eigenvalues(fam(b.grid[k]), Structure::hermitian);
    Vector tracked(b.curve_count());
    for (int i = 0; i < b.curve_count(); ++i) tracked[i] = b.curves[i][k];
    CHECK(matching::matching_distance(tracked, fresh) <= 1e-9 * b.scale);
  }
}

TEST_CASE("hermitian families yield real curves") {
  std::mt19937_64 rng(51);
  const Matrix a0 = testutil::random_hermitian(rng, 5);
  const Matrix a1 = testutil::random_hermitian(rng, 5);
  const auto fam = MatrixFamily(5, {-1.0, 1.0}, Structure::hermitian, [a0, a1](double t) {
    return a0 + t * a1;
  });
  const auto b = track_eigenvalues(fam, linspace(-1.0, 1.0, 21));
  for (const auto& curve : b.curves)
    for (const auto& v : curve) CHECK(std::fabs(v.imag()) <= 1e-10 * b.scale);
}

TEST_CASE("relabeling is stable under grid refinement") {
  const auto fam = diag_family([](double t) { return t; }, [](double t) { return -t; });
  const auto coarse = track_eigenvalues(fam, linspace(-1.0, 1.0, 21));
  const auto fine = track_eigenvalues(fam, linspace(-1.0, 1.0, 41));
  // shared points are every second point of the fine run; labels may differ by
  // one global permutation, detected at the first shared point
  std::vector<int> label(2);
  for (int i = 0; i < 2; ++i)
    label[i] =
        std::abs(fine.curves[0][0] - coarse.curves[i][0]) < 1e-12 ? 0 : 1;
  for (int k = 0; k < coarse.point_count(); ++k) {
    for (int i = 0; i < 2; ++i) {
      const Complex c = coarse.curves[i][k];
      const Complex f = fine.curves[label[i] == 0 ? 0 : 1][2 * k];
      CHECK(std::abs(c - f) <= 1e-8);
    }
  }
}

TEST_CASE("eigenvector tracking") {
  SUBCASE("constant family keeps constant frames") {
    std::mt19937_64 rng(53);
    const Matrix a = testutil::random_hermitian(rng, 4);
    const auto fam = MatrixFamily(4, {-1.0, 1.0}, Structure::hermitian,
                                  [a](double) { return a; });
    auto b = track_eigenvalues(fam, linspace(-1.0, 1.0, 11));
    b = track_eigenvectors(fam, std::move(b));
    REQUIRE(b.frames.size() == static_cast<size_t>(b.point_count()));
    for (size_t k = 1; k < b.frames.size(); ++k)
      CHECK((b.frames[k] - b.frames[0]).frobenius_norm() < 1e-9);
  }
  SUBCASE("tilt family frame follows the closed-form angle continuously") {
    const auto fam = tilt_family();
    auto b = track_eigenvalues(fam, linspace(-1.5, 1.5, 61));
    b = track_eigenvectors(fam, std::move(b));
    const int up = b.curves[0][0].real() > 0.0 ? 0 : 1;
    for (int k = 0; k < b.point_count(); ++k) {
      const double t = b.grid[k];
      const double theta = 0.5 * std::atan2(1.0, t);
      const Vector v{std::cos(theta), std::sin(theta)};
      const Complex overlap = dot(b.frames[k].col(up), v);
      CHECK(std::abs(overlap) > 1.0 - 1e-8);  // same line
    }
    // continuity: consecutive frames stay close
    for (int k = 1; k < b.point_count(); ++k)
      CHECK((b.frames[k].col(up) != b.frames[k - 1].col(up) ? norm(b.frames[k].col(up) - b.frames[k - 1].col(up)) : 0.0) < 0.2);
  }
  SUBCASE("frame residuals stay below the gate") {
    const auto fam = tilt_family();
    auto b = track_eigenvalues(fam, linspace(-1.0, 1.0, 21));
    b = track_eigenvectors(fam, std::move(b));
    for (int k = 0; k < b.point_count(); ++k) {
      const Matrix a = fam(b.grid[k]);
      for (int i = 0; i < b.curve_count(); ++i) {
        const Vector u = b.frames[k].col(i);
        const Vector au = a * u;
        Vector lu = u;
        for (auto& z : lu) z *= b.curves[i][k];
        CHECK(norm(au - lu) <= 1e-8 * a.frobenius_norm());
      }
    }
  }
  SUBCASE("rotation between the two cascade eigenvector lines is pi/8") {
    const auto fam = family::cascade_family(3);
    for (int n = 1; n <= 3; ++n) {
      const double anchor = family::cascade_anchor(n);
      const double sn = family::cascade_scale(n);
      const auto d0 = hermitian_eigen(fam.at_offset(anchor, 0.0));
      const auto d1 = hermitian_eigen(fam.at_offset(anchor, sn));
      const Complex overlap = dot(d0.vectors.col(1), d1.vectors.col(1));
      const double angle = std::acos(std::clamp(std::abs(overlap), 0.0, 1.0));
      CHECK(angle == doctest::Approx(M_PI / 8.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("crossing detection and contact order") {
  SUBCASE("linear crossing has order 1") {
    const auto fam = diag_family([](double t) { return t; }, [](double t) { return -t; });
    const auto b = track_eigenvalues(fam, linspace(-1.0, 1.0, 41));
    const auto reports = crossing_detect(fam, b, 0.25);
    REQUIRE(reports.size() == 1);
    CHECK(std::fabs(reports[0].t_star) < 1e-6);
    CHECK(reports[0].order_estimate == 1);
    CHECK_FALSE(reports[0].infinite_order_suspect);
  }
  SUBCASE("quadratic contact has order 2") {
    const auto fam =
        diag_family([](double t) { return t * t; }, [](double t) { return -t * t; });
    const auto b = track_eigenvalues(fam, linspace(-1.0, 1.0, 41));
    const auto reports = crossing_detect(fam, b, 0.25);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].order_estimate == 2);
  }
  SUBCASE("a numerically flat gap is flagged as infinite-order suspect") {
    const auto fam = diag_family(
        [](double t) { return t == 0.0 ? 0.0 : std::exp(-1.0 / (t * t)); },
        [](double) { return 0.0; });
    const auto b = track_eigenvalues(fam, linspace(-1.0, 1.0, 41), false);
    const auto reports = crossing_detect(fam, b, 0.5);
    REQUIRE(!reports.empty());
    CHECK(reports[0].order_estimate == 0);
    CHECK(reports[0].infinite_order_suspect);
  }
}

TEST_CASE("hoelder quotients") {
  SUBCASE("cascade values at alpha = 1 and alpha = 1/2") {
    const auto fam = family::cascade_family(5);
    // |lambda'(t_n + s_n) - lambda'(t_n)| / s_n^alpha = 2^(n(alpha(n-1)-1))/sqrt 2
    {
      const int n = 3;
      const double q =
          hoelder_quotient(fam, 1, family::cascade_anchor(n), family::cascade_scale(n), 1.0);
      CHECK(q == doctest::Approx(8.0 / std::sqrt(2.0)).epsilon(0.01));
    }
    {
      const int n = 4;
      const double q = hoelder_quotient(fam, 1, family::cascade_anchor(n),
                                        family::cascade_scale(n), 0.5);
      CHECK(q == doctest::Approx(4.0 / std::sqrt(2.0)).epsilon(0.01));
    }
  }
  SUBCASE("a C^(1,1) curve has vanishing quotient as s shrinks") {
    const auto fam =
        diag_family([](double t) { return t * t; }, [](double t) { return -1.0 + 0.0 * t; });
    for (double s : {0.1, 0.01}) {
      const double q = hoelder_quotient(fam, 1, 0.0, s, 0.5);
      CHECK(q == doctest::Approx(2.0 * std::pow(s, 0.5)).epsilon(0.01));
    }
  }
}

TEST_CASE("sorted versus tracked labelings") {
  SUBCASE("linear crossing: sorted kinks, tracked does not") {
    const auto fam = diag_family([](double t) { return t; }, [](double t) { return -t; });
    const auto b = track_eigenvalues(fam, linspace(-1.0, 1.0, 41));
    const auto cmp = sorted_vs_smooth(b);
    // t = 0 sits at index 20
    double tracked_jump = 0.0, sorted_jump = 0.0;
    for (int i = 0; i < 2; ++i) {
      tracked_jump = std::max(tracked_jump, cmp.tracked_jumps[20][i]);
      sorted_jump = std::max(sorted_jump, cmp.sorted_jumps[20][i]);
    }
    CHECK(tracked_jump <= 1e-8);
    CHECK(sorted_jump == doctest::Approx(2.0).epsilon(1e-8));
  }
  SUBCASE("no crossing: identical outputs") {
    const auto fam = tilt_family();
    const auto b = track_eigenvalues(fam, linspace(-1.0, 1.0, 21));
    const auto cmp = sorted_vs_smooth(b);
    for (int k = 0; k < b.point_count(); ++k) {
      Vector tracked{b.curves[0][k], b.curves[1][k]};
      std::sort(tracked.begin(), tracked.end(),
                [](const Complex& x, const Complex& y) { return x.real() < y.real(); });
      CHECK(std::abs(tracked[0] - cmp.sorted_curves[0][k]) == 0.0);
      CHECK(std::abs(tracked[1] - cmp.sorted_curves[1][k]) == 0.0);
    }
  }
  SUBCASE("even contact: sorted equals tracked on one branch side") {
    const auto fam =
        diag_family([](double t) { return t * t; }, [](double t) { return -t * t; });
    const auto b = track_eigenvalues(fam, linspace(-1.0, 1.0, 41));
    const auto cmp = sorted_vs_smooth(b);
    const int last = b.point_count() - 1;
    const int up = b.curves[0][last].real() >= b.curves[1][last].real() ? 0 : 1;
    for (int k = 0; k < b.point_count(); ++k)
      CHECK(std::abs(b.curves[up][k] - cmp.sorted_curves[1][k]) <= 1e-12);
  }
}

TEST_CASE("piecewise-linear hermitian families obey the Lipschitz matching bound") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix a0 = testutil::random_hermitian(rng, 5);
    const Matrix a1 = testutil::random_hermitian(rng, 5);
    const auto fam = MatrixFamily(5, {0.0, 1.0}, Structure::hermitian, [a0, a1](double t) {
      return a0 + t * a1;
    });
    const double lip = operator_norm(a1);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int pair = 0; pair < 10; ++pair) {
      const double t1 = uni(rng), t2 = uni(rng);
      const Vector v1 = structured_eigenvalues(fam(t1), Structure::hermitian);
      const Vector v2 = structured_eigenvalues(fam(t2), Structure::hermitian);
      const double d = matching::matching_distance(v1, v2);
      CHECK(d <= 3.0 * lip * std::fabs(t1 - t2) + 1e-12);
    }
  }
}

TEST_CASE("general structure is rejected") {
  const auto fam = MatrixFamily(2, {-1.0, 1.0}, Structure::general,
                                [](double t) { return Matrix{{0.0, 1.0}, {t, 0.0}}; });
  CHECK_THROWS_AS(track_eigenvalues(fam, linspace(-1.0, 1.0, 5)), StructureViolation);
}

TEST_CASE("declared structure is validated pointwise") {
  // declared hermitian but asymmetric away from zero
  const auto fam = MatrixFamily(2, {-1.0, 1.0}, Structure::hermitian,
                                [](double t) { return Matrix{{0.0, 1.0}, {1.0 + t, 0.0}}; });
  CHECK_THROWS_AS(track_eigenvalues(fam, linspace(0.5, 1.0, 3)), StructureViolation);
}
