#include <cmath>
#include <numbers>

#include "angularft/verify.hpp"
#include "doctest.h"

using namespace angularft;

namespace {

constexpr double pi = std::numbers::pi;
constexpr Side pos = Side::position;

SpaceTerm term(ExactScalar c, int power, Singularity s, TensorExpr t) { return {c, power, s, std::move(t)}; }

BallConfig fast_config() {
  BallConfig cfg;
  cfg.angular_rule = {24, 48};
  return cfg;
}

// Midpoint rule on a Cartesian grid; cell centers never hit the origin.
double cartesian_grid_pairing(const std::function<double(double, double, double)>& integrand, double half, int n) {
  const double h = 2.0 * half / n;
  double total = 0.0;
  for (int a = 0; a < n; ++a) {
    const double x = -half + (a + 0.5) * h;
    for (int b = 0; b < n; ++b) {
      const double y = -half + (b + 0.5) * h;
      for (int c = 0; c < n; ++c) total += integrand(x, y, -half + (c + 0.5) * h);
    }
  }
  return total * h * h * h;
}

}  // namespace

TEST_CASE("test function derivatives") {
  const TestFunction f({0.3, -0.2, 0.5}, 0.9, {{{0, 0, 0}, 1.0}, {{1, 1, 0}, 0.5}, {{0, 0, 2}, -0.25}});
  const Vec3 p{0.1, 0.4, -0.3};
  const double h = 1e-4;
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 up = p;
    Vec3 dn = p;
    up[axis] += h;
    dn[axis] -= h;
    CHECK(f.derivative(axis)(p) == doctest::Approx((f(up) - f(dn)) / (2 * h)).epsilon(1e-7));
  }
  double lap_fd = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 up = p;
    Vec3 dn = p;
    up[axis] += 1e-3;
    dn[axis] -= 1e-3;
    lap_fd += (f(up) - 2 * f(p) + f(dn)) / 1e-6;
  }
  CHECK(f.laplacian()(p) == doctest::Approx(lap_fd).epsilon(1e-5));
  CHECK_THROWS_AS(f.derivative(3), ArgumentError);
  CHECK_THROWS_AS(TestFunction({0, 0, 0}, 0.0), ArgumentError);
}

TEST_CASE("regular pairings") {
  SUBCASE("1/(4 pi r) against exp(-r^2) is 1/2") {
    const TestFunction f({0, 0, 0}, 1.0);
    const auto t = term(ExactScalar(BigRational(1, 4), 0, -1), -1, Singularity::none, TensorExpr::one(pos));
    CHECK(pair_regular(t, f, {}) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("l = 2 against a spherically symmetric function vanishes") {
    const TestFunction f({0, 0, 0}, 0.8);
    const auto l2 = decompose({"i", "j"}, pos).at(2);
    for (const auto& a : all_assignments({"i", "j"})) {
      CHECK(std::abs(pair_regular(term(ExactScalar(3), -3, Singularity::none, l2), f, a)) <= 1e-12);
    }
  }
  SUBCASE("(3/r^3)(xhat_i xhat_j - delta_ij/3) against x1 x2 exp(-r^2)") {
    const TestFunction f({0, 0, 0}, 1.0, {{{1, 1, 0}, 1.0}});
    const auto l2 = decompose({"i", "j"}, pos).at(2);
    const double got = pair_regular(term(ExactScalar(3), -3, Singularity::none, l2), f, {{"i", 1}, {"j", 2}});
    // 3 int r e^{-r^2} dr * int dOmega x1^2 x2^2 = 3 (1/2)(4 pi / 15)
    CHECK(got == doctest::Approx(2 * pi / 5).epsilon(1e-12));
    const double grid = cartesian_grid_pairing(
        [](double x, double y, double z) {
          const double r2 = x * x + y * y + z * z;
          return 3.0 * x * y / (r2 * r2 * std::sqrt(r2)) * x * y * std::exp(-r2);
        },
        5.0, 160);
    CHECK(got == doctest::Approx(grid).epsilon(5e-3));
  }
  SUBCASE("non-integrable combinations are rejected") {
    const TestFunction f({0, 0, 0}, 1.0);
    CHECK_THROWS_AS(pair_regular(term(ExactScalar(1), -3, Singularity::none, TensorExpr::one(pos)), f, {}),
                    DomainError);
    CHECK_THROWS_AS(pair_regular(term(ExactScalar(1), -3, Singularity::delta3, TensorExpr::one(pos)), f, {}),
                    ArgumentError);
    CHECK_THROWS_AS(pair_regular(term(ExactScalar::i_power(1), -1, Singularity::none, TensorExpr::one(pos)), f, {}),
                    DomainError);
  }
}

TEST_CASE("pure angular momentum terms are blind to lower Taylor content") {
  // Angular content of (1 + y1 + y1 y2) g(r) stops at l = 2.
  const TestFunction f({0, 0, 0}, 0.8, {{{0, 0, 0}, 1.0}, {{1, 0, 0}, 1.0}, {{1, 1, 0}, 1.0}});
  for (int l = 3; l <= 4; ++l) {
    const IndexList idx = identity_indices(l);
    const auto top = decompose(idx, pos).at(l);
    for (const auto& a : all_assignments(idx)) {
      CHECK(std::abs(pair_regular(term(ExactScalar(1), -2, Singularity::none, top), f, a, fast_config())) <= 1e-12);
    }
  }
}

TEST_CASE("delta pairings") {
  const Vec3 c{0.3, -0.2, 0.5};
  const double s = 0.9;
  const TestFunction f(c, s);
  const double f0 = std::exp(-(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]) / (s * s));
  // Closed-form derivatives at the origin, y = -c.
  auto grad = [&](int i) { return 2.0 * c[i] / (s * s) * f0; };
  auto hess = [&](int i, int j) { return (4.0 * c[i] * c[j] / (s * s * s * s) - (i == j ? 2.0 / (s * s) : 0.0)) * f0; };

  CHECK(pair_delta(term(ExactScalar(1), 0, Singularity::delta3, TensorExpr::one(pos)), f, {}) ==
        doctest::Approx(f0).epsilon(1e-15));

  const auto d_i = term(ExactScalar(-3), -1, Singularity::delta3, TensorExpr::monomial({"i"}, pos));
  for (int i = 1; i <= 3; ++i) CHECK(pair_delta(d_i, f, {{"i", i}}) == doctest::Approx(-grad(i - 1)).epsilon(1e-14));

  const auto l2 = term(ExactScalar(15), -2, Singularity::delta3, decompose({"i", "j"}, pos).at(2));
  const double trace = hess(0, 0) + hess(1, 1) + hess(2, 2);
  for (const auto& a : all_assignments({"i", "j"})) {
    const int i = a.at("i") - 1;
    const int j = a.at("j") - 1;
    CHECK(pair_delta(l2, f, a) == doctest::Approx(hess(i, j) - (i == j ? trace / 3 : 0.0)).epsilon(1e-13));
  }

  SUBCASE("radial delta") {
    const auto radial = term(ExactScalar(BigRational(1, 4), 0, -1), -2, Singularity::delta_r, TensorExpr::one(pos));
    CHECK(pair_delta(radial, f, {}) == doctest::Approx(f0).epsilon(1e-13));
  }
  SUBCASE("unpaired deltas are rejected") {
    CHECK_THROWS_AS(pair_delta(term(ExactScalar(1), -1, Singularity::delta3, TensorExpr::one(pos)), f, {}),
                    UnpairedDelta);
    CHECK_THROWS_AS(
        pair_delta(term(ExactScalar(1), 0, Singularity::delta3, TensorExpr::monomial({"i"}, pos)), f, {{"i", 1}}),
        UnpairedDelta);
    CHECK_THROWS_AS(pair_delta(term(ExactScalar(1), -3, Singularity::delta_r, TensorExpr::one(pos)), f, {}),
                    UnpairedDelta);
    CHECK_THROWS_AS(pair_delta(term(ExactScalar(1), 0, Singularity::none, TensorExpr::one(pos)), f, {}),
                    ArgumentError);
  }
}

TEST_CASE("pairing is linear over terms") {
  const auto rec = full_derivative_inv_r(3);
  const Pairer p(standard_family()[4], fast_config());
  for (const auto& a : all_assignments(rec.indices)) {
    double sum = 0.0;
    for (const auto& t : rec.rhs.terms()) sum += p.term(t, a);
    CHECK(std::abs(p.expr(rec.rhs, a) - sum) <= 1e-12);
  }
}

TEST_CASE("standard family") {
  const auto family = standard_family();
  REQUIRE(family.size() == 5);
  int off_center = 0;
  int weighted = 0;
  for (const auto& f : family) {
    if (f.center() != Vec3{0, 0, 0}) ++off_center;
    if (f.poly().size() > 1) ++weighted;
  }
  CHECK(off_center >= 1);
  CHECK(weighted >= 1);
}

TEST_CASE("generated identities verify") {
  const auto family = standard_family();
  std::vector<IdentityRecord> ids;
  for (int k = 0; k <= 3; ++k) {
    ids.push_back(derivative_identity(BaseFunction::inv_r, k));
    ids.push_back(derivative_identity(BaseFunction::inv_r2, k));
    ids.push_back(derivative_identity(BaseFunction::delta3, k));
  }
  for (int k = 1; k <= 3; ++k) ids.push_back(full_derivative_inv_r(k));
  const auto dipole = dipole_fields();
  ids.push_back(dipole.E);
  ids.push_back(dipole.B);
  ids.push_back(delta_radial_identity());
  for (const auto& id : ids) {
    const auto report = verify_identity(id, family, 1e-6, fast_config());
    CAPTURE(report.identity);
    CAPTURE(report.max_rel_diff());
    CHECK(report.pass);
    CHECK(report.rows.size() == family.size() * static_cast<std::size_t>(std::pow(3, id.indices.size())));
  }
}

TEST_CASE("a wrong identity fails verification") {
  auto frahm = full_derivative_inv_r(2);
  std::vector<SpaceTerm> regular_only;
  for (const auto& t : frahm.rhs.terms()) {
    if (t.singularity == Singularity::none) regular_only.push_back(t);
  }
  frahm.rhs = PositionExpr(pos, regular_only);
  const auto report = verify_identity(frahm, standard_family(), 1e-6, fast_config());
  CHECK_FALSE(report.pass);
  CHECK(report.max_rel_diff() > 0.1);
  CHECK_THROWS_AS(verify_identity(frahm, {}, 1e-6), ArgumentError);
}

TEST_CASE("divergence form near the origin") {
  const TestFunction f({0.3, -0.2, 0.5}, 0.9);
  SUBCASE("(dd)_2 (1/r^2): surface and ball terms vanish as O(R)") {
    const auto rec = derivative_identity(BaseFunction::inv_r2, 2);
    const auto rows = ball_surface_check(rec, f, {{"i", 1}, {"j", 2}}, fast_config());
    std::vector<double> R, surface, ball;
    for (const auto& row : rows) {
      R.push_back(row.R);
      surface.push_back(row.surface);
      ball.push_back(row.ball);
      CHECK(row.surface + row.ball == doctest::Approx(row.rhs).epsilon(1e-8));
    }
    CHECK(log_log_slope(R, surface) == doctest::Approx(1.0).epsilon(0.1));
    CHECK(log_log_slope(R, ball) == doctest::Approx(1.0).epsilon(0.1));
    for (std::size_t a = 0; a + 1 < rows.size(); ++a) {
      CHECK(surface[a] / surface[a + 1] == doctest::Approx(2.0).epsilon(0.1));
      CHECK(ball[a] / ball[a + 1] == doctest::Approx(2.0).epsilon(0.1));
    }
  }
  SUBCASE("Frahm: the surface term tends to the delta contribution") {
    const auto rec = full_derivative_inv_r(2);
    const auto rows = ball_surface_check(rec, f, {{"i", 3}, {"j", 3}}, fast_config());
    const double limit = -4.0 * pi / 3.0 * f({0, 0, 0});
    for (const auto& row : rows) CHECK(row.surface + row.ball == doctest::Approx(row.rhs).epsilon(1e-8));
    CHECK(rows.back().surface == doctest::Approx(limit).epsilon(0.05));
    CHECK(std::abs(rows.back().ball) < 0.05 * std::abs(limit));
  }
  CHECK_THROWS_AS(ball_surface_check(derivative_identity(BaseFunction::delta3, 1), f, {{"i", 1}}), DomainError);
  CHECK_THROWS_AS(ball_surface_check(delta_radial_identity(), f, {}), DomainError);
}
