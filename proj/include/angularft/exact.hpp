#pragma once

#include <compare>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace angularft {

using BigInt = boost::multiprecision::cpp_int;
/// Always stored in lowest terms with a positive denominator.
using BigRational = boost::multiprecision::cpp_rational;

/// Raised when an argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised by ExactScalar addition when the sum leaves the coefficient ring.
class NotRepresentable : public DomainError {
 public:
  using DomainError::DomainError;
};

BigInt factorial(int k);
/// k!! with (-1)!! = 0!! = 1.
BigInt double_factorial(int k);

std::string to_string(const BigRational& q);
double to_double(const BigRational& q);

/// q * i^i_pow * pi^pi_pow with i_pow in {0,1}. Zero is always (0, 0, 0).
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(BigRational q, int i_pow = 0, int pi_pow = 0);
  ExactScalar(long long n) : ExactScalar(BigRational(n)) {}  // NOLINT

  const BigRational& rational() const { return q_; }
  int i_pow() const { return i_pow_; }
  int pi_pow() const { return pi_pow_; }
  bool is_zero() const { return q_ == 0; }
  bool is_real() const { return i_pow_ == 0; }

  /// Powers of i reduced mod 4.
  static ExactScalar i_power(int k);
  static ExactScalar pi_power(int k);

  ExactScalar operator-() const;
  ExactScalar& operator*=(const ExactScalar& rhs);
  /// Throws NotRepresentable unless both operands share (i_pow, pi_pow) or one is zero.
  ExactScalar& operator+=(const ExactScalar& rhs);
  ExactScalar& operator-=(const ExactScalar& rhs) { return *this += -rhs; }

  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.q_ == b.q_ && a.i_pow_ == b.i_pow_ && a.pi_pow_ == b.pi_pow_;
  }

  /// Same (i_pow, pi_pow) unit, so the two can be added.
  bool same_unit(const ExactScalar& other) const {
    return i_pow_ == other.i_pow_ && pi_pow_ == other.pi_pow_;
  }

  /// Real value; throws DomainError if the scalar is imaginary.
  double to_double() const;
  /// Renders as `q[*i][*pi^k]`, e.g. `-3/4*pi^-1`, `1/2*pi`, `3*i`.
  std::string str() const;

 private:
  void canonicalize();

  BigRational q_{0};
  int i_pow_ = 0;
  int pi_pow_ = 0;
};

enum class ScalarOp { mul, add, neg };

/// Dispatching form of the ring operations (`b` is ignored for neg).
ExactScalar scalar_arith(const ExactScalar& a, const ExactScalar& b, ScalarOp op);

/// Gamma(a/2) for a positive integer a, returned as (rational, has_sqrt_pi).
struct HalfIntegerGamma {
  BigRational value;
  bool sqrt_pi = false;
};
HalfIntegerGamma gamma_half(int a);

/// Closed-form value of the integral of x^(n+2) j_l(x) over [0, inf), extended to
/// -(l+3) < n <= l. Zero on the n = l line. Throws DomainError elsewhere.
ExactScalar chi(int n, int l);

/// Floating-point chi for real parameters, -(l+3) < n < l.
double chi_float(double n, double l);

}  // namespace angularft
