#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace angularft {

/// Raised when a numeric integral misses its tolerance within the allowed budget.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate, double error_estimate)
      : std::runtime_error(what), estimate_(estimate), error_estimate_(error_estimate) {}

  double estimate() const { return estimate_; }
  double error_estimate() const { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

/// Integral of exp(-lambda p) p^(n+2) j_l(p r) over p in [0, inf).
struct RadialSpec {
  int n = 0;
  int l = 0;
  double r = 1.0;
  double lambda = 1e-3;
};

struct QuadratureConfig {
  double abs_tol = 1e-13;
  double rel_tol = 1e-11;
  /// Half-period subintervals allowed past the initial direct range.
  int max_oscillations = 4000;
  /// Levels of repeated averaging applied to the alternating partial sums.
  int acceleration_terms = 24;
};

/// Spherical Bessel function j_l(x) for l >= 0, x >= 0.
double sph_bessel(int l, double x);

double regulated_radial(const RadialSpec& spec, const QuadratureConfig& cfg = {});

/// R_l(lambda; r) = 2 Gamma(l+2) / (sqrt(pi) Gamma(l+3/2)) * lambda r^(2l+2) / (r^2+lambda^2)^(l+2).
/// Unit normalized on [0, inf) for every l > -3/2.
double delta_rep(double l, double lambda, double r);

/// Position of the maximum of R_l(lambda; r) in r: lambda * sqrt(l + 1).
double delta_rep_peak(double l, double lambda);

/// Integral of f(r) R_l(lambda; r) over [0, inf). f = 1 gives the normalization.
double sift(double l, double lambda, const std::function<double(double)>& f);

/// (1/p) * integral of exp(-lambda r) sin(p r) over [0, inf) by oscillatory
/// quadrature (first), and the closed form 1/(p^2 + lambda^2) (second).
std::pair<double, double> yukawa_check(double p, double lambda, const QuadratureConfig& cfg = {});

}  // namespace angularft
