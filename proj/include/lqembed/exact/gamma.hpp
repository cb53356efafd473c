#pragma once

#include <string>

#include "lqembed/exact/rational.hpp"

namespace lqembed::exact {

/// Gamma function at a positive rational, double precision.
/// Throws DomainError for x <= 0.
double gamma_float(const Rational& x);

/// scalar * pi^pi_power * Gamma(gamma_num) / Gamma(gamma_den), with both
/// Gamma arguments positive. Always strictly positive when scalar > 0.
class GammaRatioConstant {
 public:
  GammaRatioConstant(Rational scalar, Rational gamma_num, Rational gamma_den, Rational pi_power);

  const Rational& scalar() const { return scalar_; }
  const Rational& gamma_num() const { return gamma_num_; }
  const Rational& gamma_den() const { return gamma_den_; }
  const Rational& pi_power() const { return pi_power_; }

  double value() const;

  /// Multiplies the scalar by a rational factor.
  GammaRatioConstant scaled(const Rational& factor) const;

  /// Shifts both Gamma arguments into (0, 1] with Gamma(x+1) = x Gamma(x),
  /// cancels equal arguments, and folds Gamma(1/2) = pi^(1/2). The result
  /// has no Gamma factor exactly when the value is rational * pi^c.
  GammaRatioConstant normalized() const;

  /// True when no Gamma factor remains (num == den).
  bool gamma_free() const { return gamma_num_ == gamma_den_; }

  /// e.g. "1/2 * pi^(-1) * Gamma(7/4)/Gamma(3/4)"
  std::string str() const;

  friend bool operator==(const GammaRatioConstant&, const GammaRatioConstant&) = default;

 private:
  Rational scalar_;
  Rational gamma_num_;
  Rational gamma_den_;
  Rational pi_power_;
};

/// Requires gamma_num - gamma_den to be a non-negative integer and returns
/// the value-equal constant with both arguments set to 1.
/// Throws UnreducibleGammaRatio otherwise.
GammaRatioConstant gamma_ratio_reduce(const GammaRatioConstant& c);

}  // namespace lqembed::exact
