#pragma once

#include <random>
#include <vector>

#include "lqembed/exact/rational.hpp"
#include "lqembed/exact/unipoly.hpp"

namespace testsupport {

using lqembed::exact::Rational;
using lqembed::exact::UniPoly;

inline Rational random_rational(std::mt19937_64& rng, long lo, long hi, long max_den = 12) {
  std::uniform_int_distribution<long> den(1, max_den);
  const long d = den(rng);
  std::uniform_int_distribution<long> num(lo * d, hi * d);
  return Rational(num(rng), d);
}

inline UniPoly random_poly(std::mt19937_64& rng, int max_degree, long bound) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<long> coeff(-bound, bound);
  std::vector<Rational> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : c) x = Rational(coeff(rng));
  return UniPoly(std::move(c));
}

}  // namespace testsupport
