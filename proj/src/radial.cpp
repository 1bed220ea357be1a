#include "angularft/radial.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "angularft/exact.hpp"
#include "angularft/quadrature.hpp"

namespace angularft {

namespace {

constexpr int panel_order = 20;

double bessel_series(int l, double x) {
  double lead = 1.0;
  for (int k = 1; k <= l; ++k) lead *= x / (2.0 * k + 1.0);
  const double y = -0.5 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= y / (k * (2.0 * l + 2.0 * k + 1.0));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return lead * sum;
}

// sin(x - l pi/2) and cos(x - l pi/2) without forming the shifted argument.
std::pair<double, double> shifted_trig(int l, double x) {
  const double s = std::sin(x);
  const double c = std::cos(x);
  switch (l % 4) {
    case 0: return {s, c};
    case 1: return {-c, s};
    case 2: return {-s, -c};
    default: return {c, -s};
  }
}

// Finite closed form; stable when the coefficients a_k / x^k decrease (x >= l^2).
double bessel_trig(int l, double x) {
  const auto [s, c] = shifted_trig(l, x);
  double even = 0.0;
  double odd = 0.0;
  double a = 1.0;  // (l+k)! / (2^k k! (l-k)!) / x^k
  for (int k = 0; k <= l; ++k) {
    if (k > 0) a *= (static_cast<double>(l) + k) * (static_cast<double>(l) - k + 1) / (2.0 * k * x);
    const double signed_a = ((k / 2) % 2 == 0) ? a : -a;
    if (k % 2 == 0) {
      even += signed_a;
    } else {
      odd += signed_a;
    }
  }
  return (s * even + c * odd) / x;
}

double bessel_miller(int l, double x) {
  const double scale = std::max(static_cast<double>(l), x);
  const int start = static_cast<int>(scale) + static_cast<int>(std::ceil(std::sqrt(40.0 * scale))) + 20;
  double upper = 0.0;
  double current = 1e-300;
  double saved = 0.0;
  for (int k = start; k > 0; --k) {
    const double lower = (2.0 * k + 1.0) / x * current - upper;
    upper = current;
    current = lower;
    if (k - 1 == l) saved = current;
    if (std::abs(current) > 1e250) {
      current *= 1e-250;
      upper *= 1e-250;
      saved *= 1e-250;
    }
  }
  // current ~ j0, upper ~ j1 up to a common factor
  const double exact0 = std::sin(x) / x;
  const double exact1 = (std::sin(x) / x - std::cos(x)) / x;
  if (std::abs(exact0) >= std::abs(exact1)) return saved * (exact0 / current);
  return saved * (exact1 / upper);
}

void check_config(const QuadratureConfig& cfg) {
  if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0)) throw DomainError("quadrature tolerances must be positive");
  if (cfg.max_oscillations < 8) throw DomainError("max_oscillations must be at least 8");
  if (cfg.acceleration_terms < 1) throw DomainError("acceleration_terms must be positive");
}

// Repeated averaging of the last `levels + 1` partial sums.
double averaged_limit(const std::vector<double>& sums, int levels) {
  const int m = std::min<int>(levels, static_cast<int>(sums.size()) - 1);
  std::vector<double> row(sums.end() - (m + 1), sums.end());
  for (int level = 0; level < m; ++level) {
    for (std::size_t i = 0; i + 1 < row.size() - level; ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
  }
  return row.front();
}

// Integral of g over [0, inf) where g(x) ~ sin(x - phase) * smooth for large x.
// Direct panels up to `direct_end`, then half-period subintervals starting on the
// grid phase + k pi, accelerated by repeated averaging.
double oscillatory_integral(const std::function<double(double)>& g, double phase, double direct_end,
                            const QuadratureConfig& cfg, const std::string& label) {
  double edge = phase;
  while (edge <= 0.0) edge += std::numbers::pi;
  while (edge < direct_end) edge += std::numbers::pi;

  const int direct_panels = static_cast<int>(std::ceil(edge / std::numbers::pi));
  const double direct = quad::integrate_composite(g, 0.0, edge, direct_panels, panel_order);

  std::vector<double> sums{direct};
  std::vector<double> estimates;
  const int min_terms = std::max(8, cfg.acceleration_terms + 1);
  double sum = direct;
  double magnitude = std::abs(direct);
  double last_change = std::numeric_limits<double>::infinity();
  for (int k = 0; k < cfg.max_oscillations; ++k) {
    const double lo = edge + k * std::numbers::pi;
    sum += quad::integrate_panel(g, lo, lo + std::numbers::pi, panel_order);
    sums.push_back(sum);
    magnitude = std::max(magnitude, std::abs(sum));
    estimates.push_back(averaged_limit(sums, cfg.acceleration_terms));
    const std::size_t e = estimates.size();
    if (static_cast<int>(sums.size()) > min_terms && e >= 3) {
      const double roundoff = 256.0 * std::numeric_limits<double>::epsilon() * magnitude;
      const double tol = std::max({cfg.abs_tol, cfg.rel_tol * std::abs(estimates[e - 1]), roundoff});
      last_change = std::max(std::abs(estimates[e - 1] - estimates[e - 2]),
                             std::abs(estimates[e - 2] - estimates[e - 3]));
      if (last_change <= tol) return estimates[e - 1];
    }
  }
  const double partial = estimates.empty() ? direct : estimates.back();
  throw QuadratureError(label + ": no convergence within max_oscillations", partial, last_change);
}

}  // namespace

double sph_bessel(int l, double x) {
  if (l < 0) throw DomainError("sph_bessel: l must be >= 0");
  if (!(x >= 0.0)) throw DomainError("sph_bessel: x must be >= 0");
  if (x == 0.0) return l == 0 ? 1.0 : 0.0;
  if (l == 0) return std::sin(x) / x;
  if (x < l + 2.0) return bessel_series(l, x);
  if (x >= std::max(50.0, static_cast<double>(l) * l)) return bessel_trig(l, x);
  return bessel_miller(l, x);
}

double regulated_radial(const RadialSpec& spec, const QuadratureConfig& cfg) {
  if (spec.l < 0) throw DomainError("regulated_radial: l must be >= 0");
  if (!(spec.r > 0.0) || !(spec.lambda > 0.0)) throw DomainError("regulated_radial: r and lambda must be positive");
  if (spec.n <= -(spec.l + 3)) {
    throw DomainError("regulated_radial: integrand not integrable at the origin (n <= -(l+3))");
  }
  check_config(cfg);
  // p = x / r turns the integral into r^-(n+3) * int exp(-mu x) x^(n+2) j_l(x) dx.
  const double mu = spec.lambda / spec.r;
  const int power = spec.n + 2;
  const int l = spec.l;
  auto g = [mu, power, l](double x) { return std::exp(-mu * x) * std::pow(x, power) * sph_bessel(l, x); };
  const double value = oscillatory_integral(g, 0.5 * l * std::numbers::pi, std::max(l + 10.0, 10.0), cfg,
                                            "regulated_radial");
  return value * std::pow(spec.r, -(spec.n + 3));
}

double delta_rep(double l, double lambda, double r) {
  if (!(l > -1.5)) throw DomainError("delta_rep: l must exceed -3/2");
  if (!(lambda > 0.0)) throw DomainError("delta_rep: lambda must be positive");
  if (!(r >= 0.0)) throw DomainError("delta_rep: r must be >= 0");
  if (r == 0.0) return 0.0;
  const double log_prefactor = std::log(2.0) + std::lgamma(l + 2.0) - 0.5 * std::log(std::numbers::pi) -
                               std::lgamma(l + 1.5);
  const double s = r * r + lambda * lambda;
  const double shape = std::exp((l + 1.0) * std::log(r * r / s)) / s;
  return std::exp(log_prefactor) * lambda * shape;
}

double delta_rep_peak(double l, double lambda) { return lambda * std::sqrt(l + 1.0); }

double sift(double l, double lambda, const std::function<double(double)>& f) {
  using boost::math::quadrature::gauss_kronrod;
  const double s = lambda * std::max(1.0, std::sqrt(l + 1.0));
  std::vector<double> cuts{0.0, s, 20.0 * s, 1.0, 10.0};
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  auto integrand = [&](double r) { return f(r) * delta_rep(l, lambda, r); };
  double total = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double e = 0.0;
    total += gauss_kronrod<double, 61>::integrate(integrand, cuts[i], cuts[i + 1], 15, 1e-14, &e);
    error += e;
  }
  double e = 0.0;
  total += gauss_kronrod<double, 61>::integrate(integrand, cuts.back(), std::numeric_limits<double>::infinity(),
                                                15, 1e-14, &e);
  error += e;
  if (!(error <= 1e-9 * std::max(1.0, std::abs(total)))) {
    throw QuadratureError("sift: adaptive quadrature did not reach tolerance", total, error);
  }
  return total;
}

std::pair<double, double> yukawa_check(double p, double lambda, const QuadratureConfig& cfg) {
  if (!(p > 0.0) || !(lambda > 0.0)) throw DomainError("yukawa_check: p and lambda must be positive");
  check_config(cfg);
  // x = p r
  const double mu = lambda / p;
  auto g = [mu](double x) { return std::exp(-mu * x) * std::sin(x); };
  const double lhs = oscillatory_integral(g, 0.0, 10.0, cfg, "yukawa_check") / (p * p);
  return {lhs, 1.0 / (p * p + lambda * lambda)};
}

}  // namespace angularft
