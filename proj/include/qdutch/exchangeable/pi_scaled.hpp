#pragma once

#include <string>

#include "qdutch/rational.hpp"

namespace qdutch::exchangeable {

/// Exact value coeff * pi^pi_power with pi_power in {0, 1}. Half-integer
/// Beta values carry one factor of pi; the 2/pi Bures prefactor removes it.
class PiScaledRational {
 public:
  PiScaledRational() = default;
  PiScaledRational(Rational coeff, int pi_power = 0);

  const Rational& coeff() const noexcept { return coeff_; }
  int pi_power() const noexcept { return pi_power_; }

  /// The rational value; throws unless pi_power == 0.
  const Rational& rational() const;

  /// Divides by pi; requires pi_power == 1.
  PiScaledRational divided_by_pi() const;

  double to_double() const;

  friend PiScaledRational operator+(const PiScaledRational& a, const PiScaledRational& b);
  friend PiScaledRational operator*(const PiScaledRational& a, const PiScaledRational& b);
  friend bool operator==(const PiScaledRational& a, const PiScaledRational& b) {
    return a.pi_power_ == b.pi_power_ && a.coeff_ == b.coeff_;
  }

  std::string to_string() const;

 private:
  Rational coeff_ = 0;
  int pi_power_ = 0;
};

/// B(a, b) for positive integers: (a-1)!(b-1)!/(a+b-1)!.
PiScaledRational beta_int(long a, long b);

/// B(a2/2, b2/2) for odd positive a2, b2; the result carries one factor of pi.
PiScaledRational beta_half(long a2, long b2);

}  // namespace qdutch::exchangeable
