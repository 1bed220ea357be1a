#pragma once

#include <array>
#include <functional>
#include <vector>

namespace angularft::quad {

/// Nodes and weights on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule; exact for polynomials of degree 2n-1. Cached per n.
const Rule& gauss_legendre(int n);

/// Integral of f over [a, b] with a single n-point Gauss-Legendre panel.
double integrate_panel(const std::function<double(double)>& f, double a, double b, int n);

/// Integral over [a, b] split into `panels` equal Gauss-Legendre panels.
double integrate_composite(const std::function<double(double)>& f, double a, double b,
                           int panels, int n);

/// Product rule on the unit sphere: Gauss-Legendre in cos(theta) times the
/// trapezoid rule in phi. Weights sum to 4*pi.
struct SphereRule {
  std::vector<std::array<double, 3>> directions;
  std::vector<double> weights;

  SphereRule(int cos_order, int phi_points);
  std::size_t size() const { return weights.size(); }
};

/// Orthonormal real spherical harmonic. m > 0 uses cos(m phi), m < 0 sin(|m| phi).
double real_ylm(int l, int m, const std::array<double, 3>& unit);

}  // namespace angularft::quad
