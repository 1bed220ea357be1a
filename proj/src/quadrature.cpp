#include "angularft/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace angularft::quad {

namespace {

// n >= 2
Rule build_gauss_legendre(int n) {
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi's initial guess, refined by Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  static std::mutex mutex;
  static std::map<int, Rule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    if (n == 1) {
      it = cache.emplace(n, Rule{{0.0}, {2.0}}).first;
    } else {
      it = cache.emplace(n, build_gauss_legendre(n)).first;
    }
  }
  return it->second;
}

double integrate_panel(const std::function<double(double)>& f, double a, double b, int n) {
  const Rule& rule = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

double integrate_composite(const std::function<double(double)>& f, double a, double b,
                           int panels, int n) {
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) sum += integrate_panel(f, a + p * h, a + (p + 1) * h, n);
  return sum;
}

SphereRule::SphereRule(int cos_order, int phi_points) {
  if (cos_order < 1 || phi_points < 1) {
    throw std::invalid_argument("SphereRule: orders must be positive");
  }
  const Rule& gl = gauss_legendre(cos_order);
  const double dphi = 2.0 * std::numbers::pi / phi_points;
  directions.reserve(static_cast<std::size_t>(cos_order) * phi_points);
  weights.reserve(directions.capacity());
  for (int i = 0; i < cos_order; ++i) {
    const double c = gl.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int j = 0; j < phi_points; ++j) {
      const double phi = (j + 0.5) * dphi;
      directions.push_back({s * std::cos(phi), s * std::sin(phi), c});
      weights.push_back(gl.weights[i] * dphi);
    }
  }
}

double real_ylm(int l, int m, const std::array<double, 3>& unit) {
  const int am = std::abs(m);
  if (l < 0 || am > l) throw std::invalid_argument("real_ylm: need 0 <= |m| <= l");
  const double c = std::clamp(unit[2], -1.0, 1.0);
  const double phi = std::atan2(unit[1], unit[0]);
  double norm = (2.0 * l + 1.0) / (4.0 * std::numbers::pi);
  for (int k = l - am + 1; k <= l + am; ++k) norm /= k;
  norm = std::sqrt(norm);
  const double plm = std::assoc_legendre(static_cast<unsigned>(l), static_cast<unsigned>(am), c);
  if (m == 0) return norm * plm;
  const double azimuth = m > 0 ? std::cos(am * phi) : std::sin(am * phi);
  return std::numbers::sqrt2 * norm * plm * azimuth;
}

}  // namespace angularft::quad
