#include "qdutch/exchangeable/pi_scaled.hpp"

#include <numbers>

#include "qdutch/errors.hpp"

namespace qdutch::exchangeable {

PiScaledRational::PiScaledRational(Rational coeff, int pi_power) : coeff_(std::move(coeff)), pi_power_(pi_power) {
  if (pi_power_ < 0 || pi_power_ > 1) throw InputError("pi power must be 0 or 1");
  coeff_.canonicalize();
}

const Rational& PiScaledRational::rational() const {
  if (pi_power_ != 0) throw InputError("value still carries a factor of pi");
  return coeff_;
}

PiScaledRational PiScaledRational::divided_by_pi() const {
  if (pi_power_ != 1) throw InputError("no factor of pi to divide out");
  return PiScaledRational(coeff_, 0);
}

double PiScaledRational::to_double() const {
  return coeff_.get_d() * (pi_power_ == 1 ? std::numbers::pi : 1.0);
}

PiScaledRational operator+(const PiScaledRational& a, const PiScaledRational& b) {
  // Zero is neutral whatever its pi power.
  if (a.coeff_ == 0) return b;
  if (b.coeff_ == 0) return a;
  if (a.pi_power_ != b.pi_power_) throw InputError("cannot add values with different powers of pi");
  return PiScaledRational(a.coeff_ + b.coeff_, a.pi_power_);
}

PiScaledRational operator*(const PiScaledRational& a, const PiScaledRational& b) {
  return PiScaledRational(a.coeff_ * b.coeff_, a.pi_power_ + b.pi_power_);
}

std::string PiScaledRational::to_string() const {
  return format_rational(coeff_) + (pi_power_ == 1 ? "*pi" : "");
}

namespace {

BigInt factorial(unsigned long n) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

}  // namespace

PiScaledRational beta_int(long a, long b) {
  if (a < 1 || b < 1) throw InputError("beta_int needs positive integer arguments");
  const auto ua = static_cast<unsigned long>(a);
  const auto ub = static_cast<unsigned long>(b);
  return PiScaledRational(Rational(factorial(ua - 1) * factorial(ub - 1), factorial(ua + ub - 1)));
}

PiScaledRational beta_half(long a2, long b2) {
  if (a2 < 1 || b2 < 1 || a2 % 2 == 0 || b2 % 2 == 0) {
    throw InputError("beta_half needs odd positive doubled arguments");
  }
  // Gamma(m + 1/2) = (2m)! sqrt(pi) / (4^m m!), and the arguments sum to an
  // integer m1 + m2 + 1, so B = (2m1)!(2m2)! pi / (4^(m1+m2) m1! m2! (m1+m2)!).
  const auto m1 = static_cast<unsigned long>((a2 - 1) / 2);
  const auto m2 = static_cast<unsigned long>((b2 - 1) / 2);
  BigInt num = factorial(2 * m1) * factorial(2 * m2);
  BigInt den = factorial(m1) * factorial(m2) * factorial(m1 + m2);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), 2 * (m1 + m2));
  return PiScaledRational(Rational(num, den), 1);
}

}  // namespace qdutch::exchangeable
