#include <cmath>
#include <numbers>

#include "angularft/exact.hpp"
#include "doctest.h"

using namespace angularft;

namespace {

ExactScalar rational_pi(long long num, long long den, int pi_pow) {
  return ExactScalar(BigRational(num, den), 0, pi_pow);
}

}  // namespace

TEST_CASE("double factorial") {
  CHECK(double_factorial(-1) == 1);
  CHECK(double_factorial(0) == 1);
  CHECK(double_factorial(5) == 15);
  CHECK(double_factorial(8) == 384);
  CHECK_THROWS_AS(double_factorial(-2), DomainError);
}

TEST_CASE("scalar ring arithmetic") {
  const ExactScalar i = ExactScalar::i_power(1);
  CHECK(i * i == ExactScalar(BigRational(-1)));
  CHECK((i * i).i_pow() == 0);
  CHECK(ExactScalar::i_power(3) == -i);
  CHECK(ExactScalar::i_power(-1) == -i);

  const auto a = rational_pi(1, 2, 1);
  const auto b = rational_pi(3, 1, -2);
  CHECK(a * b == rational_pi(3, 2, -1));
  CHECK(scalar_arith(a, b, ScalarOp::mul) == rational_pi(3, 2, -1));
  CHECK(scalar_arith(a, b, ScalarOp::neg) == rational_pi(-1, 2, 1));

  CHECK_THROWS_AS(a + ExactScalar(1), NotRepresentable);
  CHECK_THROWS_AS(scalar_arith(a, ExactScalar(1), ScalarOp::add), NotRepresentable);
  CHECK(a + rational_pi(1, 3, 1) == rational_pi(5, 6, 1));
  CHECK(a + ExactScalar{} == a);
  CHECK(ExactScalar{} + b == b);

  SUBCASE("zero is canonical") {
    const ExactScalar z = a - a;
    CHECK(z.is_zero());
    CHECK(z.pi_pow() == 0);
    CHECK(z.i_pow() == 0);
    CHECK(ExactScalar(BigRational(0), 1, 5) == ExactScalar{});
  }
}

TEST_CASE("scalar rendering") {
  CHECK(rational_pi(1, 2, 1).str() == "1/2*pi");
  CHECK(rational_pi(-3, 4, -1).str() == "-3/4*pi^-1");
  CHECK(ExactScalar(BigRational(3), 1, 0).str() == "3*i");
  CHECK(ExactScalar{}.str() == "0");
  CHECK(rational_pi(1, 2, 1).to_double() == doctest::Approx(std::numbers::pi / 2));
  CHECK_THROWS_AS(ExactScalar::i_power(1).to_double(), DomainError);
}

TEST_CASE("chi closed form against paper values") {
  CHECK(chi(-2, 0) == rational_pi(1, 2, 1));
  CHECK(chi(0, 2) == rational_pi(3, 2, 1));
  CHECK(chi(2, 3) == ExactScalar(48));
  CHECK(chi(2, 2).is_zero());
  // 2^-2 sqrt(pi) Gamma(1/2) / Gamma(2), by hand.
  CHECK(chi(-3, 1) == rational_pi(1, 4, 1));
  // Gamma(1)/Gamma(1/2) * sqrt(pi) = 1.
  CHECK(chi(-1, 0) == ExactScalar(1));

  for (int k = 0; k <= 6; ++k) {
    CAPTURE(k);
    CHECK(chi(k - 1, k) == ExactScalar(BigRational(factorial(k) << k)));
    CHECK(chi(k - 2, k) == ExactScalar(BigRational(double_factorial(2 * k - 1), 2), 0, 1));
    CHECK(chi(k, k).is_zero());
  }
}

TEST_CASE("chi domain") {
  CHECK_THROWS_AS(chi(-3, 0), DomainError);
  CHECK_THROWS_AS(chi(1, 0), DomainError);
  CHECK_THROWS_AS(chi(0, -1), DomainError);
  CHECK_NOTHROW(chi(-2, 0));
  CHECK_NOTHROW(chi(-(6 + 2), 6));
}

TEST_CASE("chi reciprocity and ring shape") {
  const ExactScalar half_pi = rational_pi(1, 2, 1);
  int checked = 0;
  for (int l = 0; l <= 6; ++l) {
    for (int n = -(l + 2); n < l; ++n) {
      const ExactScalar c = chi(n, l);
      CHECK(c.i_pow() == 0);
      CHECK((c.pi_pow() == 0 || c.pi_pow() == 1));
      const int dual = -(n + 3);
      if (dual > -(l + 3) && dual < l) {
        CAPTURE(n);
        CAPTURE(l);
        CHECK(c * chi(dual, l) == half_pi);
        ++checked;
      }
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("chi_float") {
  CHECK(chi_float(-2, 0) == doctest::Approx(1.5707963267948966).epsilon(1e-14));
  CHECK(chi_float(-1.5, 0) == doctest::Approx(std::sqrt(std::numbers::pi / 2)).epsilon(1e-13));
  CHECK_THROWS_AS(chi_float(0, 0), DomainError);
  CHECK_THROWS_AS(chi_float(-3, 0), DomainError);
  for (int l = 0; l <= 10; ++l) {
    for (int n = -(l + 2); n < l; ++n) {
      const double exact = chi(n, l).to_double();
      CAPTURE(n);
      CAPTURE(l);
      CHECK(std::abs(chi_float(n, l) / exact - 1.0) <= 1e-12);
    }
  }
}
