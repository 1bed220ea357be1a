#include "angularft/exact.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace angularft {

BigInt factorial(int k) {
  if (k < 0) throw DomainError("factorial: negative argument " + std::to_string(k));
  BigInt out = 1;
  for (int j = 2; j <= k; ++j) out *= j;
  return out;
}

BigInt double_factorial(int k) {
  if (k < -1) throw DomainError("double_factorial: argument " + std::to_string(k) + " < -1");
  BigInt out = 1;
  for (int j = k; j > 1; j -= 2) out *= j;
  return out;
}

std::string to_string(const BigRational& q) { return q.str(); }

double to_double(const BigRational& q) { return q.convert_to<double>(); }

ExactScalar::ExactScalar(BigRational q, int i_pow, int pi_pow)
    : q_(std::move(q)), i_pow_(i_pow), pi_pow_(pi_pow) {
  canonicalize();
}

void ExactScalar::canonicalize() {
  int k = ((i_pow_ % 4) + 4) % 4;
  if (k >= 2) {
    q_ = -q_;
    k -= 2;
  }
  i_pow_ = k;
  if (q_ == 0) {
    i_pow_ = 0;
    pi_pow_ = 0;
  }
}

ExactScalar ExactScalar::i_power(int k) { return ExactScalar(BigRational(1), k, 0); }

ExactScalar ExactScalar::pi_power(int k) { return ExactScalar(BigRational(1), 0, k); }

ExactScalar ExactScalar::operator-() const {
  ExactScalar out = *this;
  out.q_ = -out.q_;
  return out;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& rhs) {
  q_ *= rhs.q_;
  i_pow_ += rhs.i_pow_;
  pi_pow_ += rhs.pi_pow_;
  canonicalize();
  return *this;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) {
    *this = rhs;
    return *this;
  }
  if (!same_unit(rhs)) {
    throw NotRepresentable("sum " + str() + " + " + rhs.str() + " is not representable in ring");
  }
  q_ += rhs.q_;
  canonicalize();
  return *this;
}

double ExactScalar::to_double() const {
  if (i_pow_ != 0) throw DomainError("imaginary scalar " + str() + " has no real value");
  return angularft::to_double(q_) * std::pow(std::numbers::pi, pi_pow_);
}

std::string ExactScalar::str() const {
  std::ostringstream os;
  os << q_.str();
  if (i_pow_ == 1) os << "*i";
  if (pi_pow_ == 1) {
    os << "*pi";
  } else if (pi_pow_ != 0) {
    os << "*pi^" << pi_pow_;
  }
  return os.str();
}

ExactScalar scalar_arith(const ExactScalar& a, const ExactScalar& b, ScalarOp op) {
  switch (op) {
    case ScalarOp::mul: return a * b;
    case ScalarOp::add: return a + b;
    case ScalarOp::neg: return -a;
  }
  throw std::invalid_argument("scalar_arith: unknown op");
}

HalfIntegerGamma gamma_half(int a) {
  if (a <= 0) throw DomainError("gamma_half: non-positive argument " + std::to_string(a) + "/2");
  if (a % 2 == 0) return {BigRational(factorial(a / 2 - 1)), false};
  // Gamma(k + 1/2) = (2k)! sqrt(pi) / (4^k k!)
  const int k = (a - 1) / 2;
  BigInt four_k = BigInt(1) << (2 * k);
  return {BigRational(factorial(2 * k), four_k * factorial(k)), true};
}

namespace {

BigRational power_of_two(int e) {
  if (e >= 0) return BigRational(BigInt(1) << e);
  return BigRational(BigInt(1), BigInt(1) << (-e));
}

void check_chi_domain(int n, int l) {
  if (l < 0 || n <= -(l + 3) || n > l) {
    throw DomainError("chi(" + std::to_string(n) + ", " + std::to_string(l) +
                      "): outside definable region -(l+3) < n <= l, l >= 0");
  }
}

}  // namespace

ExactScalar chi(int n, int l) {
  check_chi_domain(n, l);
  if (n == l) return ExactScalar{};
  const auto num = gamma_half(l + 3 + n);
  const auto den = gamma_half(l - n);
  // One sqrt(pi) from the prefactor; exactly one gamma argument is a half-integer.
  const int sqrt_pi_count = 1 + (num.sqrt_pi ? 1 : 0) - (den.sqrt_pi ? 1 : 0);
  return ExactScalar(power_of_two(n + 1) * num.value / den.value, 0, sqrt_pi_count / 2);
}

double chi_float(double n, double l) {
  if (!(n > -(l + 3)) || !(n < l)) {
    std::ostringstream os;
    os << "chi_float(" << n << ", " << l << "): requires -(l+3) < n < l";
    throw DomainError(os.str());
  }
  const double log_value = (n + 1) * std::numbers::ln2 + 0.5 * std::log(std::numbers::pi) +
                           std::lgamma(0.5 * (l + 3 + n)) - std::lgamma(0.5 * (l - n));
  return std::exp(log_value);
}

}  // namespace angularft
