#include "lqembed/exact/gamma.hpp"

#include <cmath>
#include <numbers>

#include "lqembed/errors.hpp"

namespace lqembed::exact {

double gamma_float(const Rational& x) {
  if (x.sign() <= 0) throw DomainError("Gamma evaluated at non-positive argument " + x.str());
  return std::tgamma(x.to_double());
}

GammaRatioConstant::GammaRatioConstant(Rational scalar, Rational gamma_num, Rational gamma_den, Rational pi_power)
    : scalar_(std::move(scalar)),
      gamma_num_(std::move(gamma_num)),
      gamma_den_(std::move(gamma_den)),
      pi_power_(std::move(pi_power)) {
  if (gamma_num_.sign() <= 0 || gamma_den_.sign() <= 0) {
    throw DomainError("Gamma ratio arguments must be positive");
  }
  if (!(pi_power_ * Rational(2)).is_integer()) throw DomainError("pi exponent must be a half-integer");
}

double GammaRatioConstant::value() const {
  const double pi_factor = std::pow(std::numbers::pi, pi_power_.to_double());
  if (gamma_num_ < Rational(170) && gamma_den_ < Rational(170)) {
    return scalar_.to_double() * pi_factor * (gamma_float(gamma_num_) / gamma_float(gamma_den_));
  }
  const double log_ratio = std::lgamma(gamma_num_.to_double()) - std::lgamma(gamma_den_.to_double());
  return scalar_.to_double() * pi_factor * std::exp(log_ratio);
}

GammaRatioConstant GammaRatioConstant::scaled(const Rational& factor) const {
  return {scalar_ * factor, gamma_num_, gamma_den_, pi_power_};
}

GammaRatioConstant GammaRatioConstant::normalized() const {
  Rational scalar = scalar_;
  Rational num = gamma_num_;
  Rational den = gamma_den_;
  Rational pi = pi_power_;
  const Rational one(1);
  while (num > one) {
    num -= one;
    scalar *= num;
  }
  while (den > one) {
    den -= one;
    scalar /= den;
  }
  const Rational half(1, 2);
  if (num == half) {
    pi += half;
    num = one;
  }
  if (den == half) {
    pi -= half;
    den = one;
  }
  if (num == den) num = den = one;
  return {scalar, num, den, pi};
}

std::string GammaRatioConstant::str() const {
  std::string out = scalar_.str();
  if (!pi_power_.is_zero()) out += " * pi^(" + pi_power_.str() + ")";
  if (!gamma_free()) out += " * Gamma(" + gamma_num_.str() + ")/Gamma(" + gamma_den_.str() + ")";
  return out;
}

GammaRatioConstant gamma_ratio_reduce(const GammaRatioConstant& c) {
  const Rational diff = c.gamma_num() - c.gamma_den();
  if (!diff.is_integer() || diff.sign() < 0) {
    throw UnreducibleGammaRatio("Gamma(" + c.gamma_num().str() + ")/Gamma(" + c.gamma_den().str() +
                                ") has no rational reduction");
  }
  Rational scalar = c.scalar();
  for (Rational x = c.gamma_den(); x < c.gamma_num(); x += Rational(1)) scalar *= x;
  return {scalar, Rational(1), Rational(1), c.pi_power()};
}

}  // namespace lqembed::exact
