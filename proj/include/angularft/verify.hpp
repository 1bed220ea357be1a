#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "angularft/quadrature.hpp"
#include "angularft/transform.hpp"

namespace angularft {

/// A delta term whose pairing is undefined (power does not match the angular momentum).
class UnpairedDelta : public DomainError {
 public:
  using DomainError::DomainError;
};

using Vec3 = std::array<double, 3>;
using MultiIndex = std::array<int, 3>;

/// F(r) = poly(r - center) * exp(-|r - center|^2 / width^2).
class TestFunction {
 public:
  TestFunction(Vec3 center, double width, std::map<MultiIndex, double> poly = {{{0, 0, 0}, 1.0}});

  const Vec3& center() const { return center_; }
  double width() const { return width_; }
  const std::map<MultiIndex, double>& poly() const { return poly_; }

  double operator()(const Vec3& r) const;

  /// Partial derivative along axis 0..2, in closed form.
  TestFunction derivative(int axis) const;
  TestFunction laplacian() const;
  /// Partial derivative along each listed axis (0..2) in turn, evaluated at `point`.
  double derivative_at(const std::vector<int>& axes, const Vec3& point) const;

  TestFunction& operator+=(const TestFunction& rhs);
  TestFunction& operator*=(double c);

  /// Radius beyond which |F| is negligible (center distance + 8 widths).
  double support_radius() const;
  std::string str() const;

 private:
  Vec3 center_;
  double width_;
  std::map<MultiIndex, double> poly_;
};

/// The operator applied to F at one assignment of its free indices (values 1..3).
TestFunction apply_operator(const DerivativeOperator& op, const IndexAssignment& assignment, const TestFunction& f);

/// Two centers, two widths, plus one quadratic polynomial weight.
std::vector<TestFunction> standard_family();

struct BallConfig {
  double R = 0.5;
  /// Gauss-Legendre nodes per radial panel.
  int radial_rule = 24;
  /// Gauss-Legendre order in cos(theta), trapezoid points in phi.
  std::array<int, 2> angular_rule{40, 80};
  std::vector<double> R_sequence{0.2, 0.1, 0.05, 0.025};
};

/// Pairings of position-space terms with one test function. The sampled values of
/// F on the quadrature grid are computed once and shared between terms.
class Pairer {
 public:
  Pairer(TestFunction f, BallConfig cfg = {});

  const TestFunction& function() const { return f_; }

  /// Integral of F times a term without delta factors over all space.
  double regular(const SpaceTerm& term, const IndexAssignment& assignment) const;
  /// Same over the ball of radius `radius` only.
  double regular_ball(const SpaceTerm& term, const IndexAssignment& assignment, double radius) const;
  /// Exact pairing of a delta3 or delta_r term.
  double singular(const SpaceTerm& term, const IndexAssignment& assignment) const;
  double term(const SpaceTerm& term, const IndexAssignment& assignment) const;
  double expr(const PositionExpr& expr, const IndexAssignment& assignment) const;

 private:
  struct Grid;
  std::shared_ptr<const Grid> grid() const;

  TestFunction f_;
  BallConfig cfg_;
  quad::SphereRule sphere_;
  mutable std::shared_ptr<const Grid> grid_;
};

double pair_regular(const SpaceTerm& term, const TestFunction& f, const IndexAssignment& assignment,
                    const BallConfig& cfg = {});
double pair_delta(const SpaceTerm& term, const TestFunction& f, const IndexAssignment& assignment);

struct VerificationRow {
  std::size_t function_index = 0;
  IndexAssignment assignment;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_diff = 0.0;
  double rel_diff = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string identity;
  double tolerance = 0.0;
  std::vector<VerificationRow> rows;
  std::vector<std::string> diagnostics;
  bool pass = false;

  double max_rel_diff() const;
};

/// Both sides paired with every test function at every index assignment. The
/// left side moves the derivatives onto F, (-1)^order * int (op F) * base. A row
/// passes when |lhs - rhs| <= tol * max(1, |rhs|).
VerificationReport verify_identity(const IdentityRecord& id, const std::vector<TestFunction>& family, double tol,
                                   const BallConfig& cfg = {});

struct BallSurfaceRow {
  double R = 0.0;
  /// sum_k of the surface integral of R^2 xhat_k F Lambda_k over S(R)
  double surface = 0.0;
  /// -sum_k of the ball integral of (d_k F) Lambda_k over B(R)
  double ball = 0.0;
  /// ball integral of F times the right-hand side
  double rhs = 0.0;
};

/// Writes op = d_k op_k, sets Lambda_k = op_k(base) through forward(), and
/// evaluates both pieces of the divergence form over cfg.R_sequence.
std::vector<BallSurfaceRow> ball_surface_check(const IdentityRecord& id, const TestFunction& f,
                                               const IndexAssignment& assignment, const BallConfig& cfg = {});

/// Least-squares slope of log|y| against log R.
double log_log_slope(const std::vector<double>& R, const std::vector<double>& y);

}  // namespace angularft
