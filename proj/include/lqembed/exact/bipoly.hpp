#pragma once

#include <map>
#include <string>
#include <utility>

#include "lqembed/exact/rational.hpp"
#include "lqembed/exact/unipoly.hpp"

namespace lqembed::exact {

/// Sparse polynomial in two variables (u, lambda) with rational
/// coefficients. Keys are (degree in u, degree in lambda).
class BivariatePoly {
 public:
  using Key = std::pair<int, int>;

  BivariatePoly() = default;

  static BivariatePoly constant(const Rational& c);
  static BivariatePoly in_u(const UniPoly& p);
  static BivariatePoly in_lambda(const UniPoly& p);
  /// Sum over i of coefficient_i(lambda) * u^i.
  static BivariatePoly from_u_coefficients(const std::vector<UniPoly>& coefficients);

  void add_term(int u_degree, int lambda_degree, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  int degree_u() const;
  int degree_lambda() const;
  const std::map<Key, Rational>& terms() const { return terms_; }

  Rational operator()(const Rational& u, const Rational& lambda) const;
  /// Polynomial in u obtained by fixing lambda.
  UniPoly at_lambda(const Rational& lambda) const;
  /// Polynomial in lambda obtained by fixing u.
  UniPoly at_u(const Rational& u) const;
  /// Coefficient of u^i as a polynomial in lambda.
  UniPoly coefficient_in_u(int i) const;
  BivariatePoly derivative_u() const;

  BivariatePoly& operator+=(const BivariatePoly& rhs);
  BivariatePoly& operator*=(const BivariatePoly& rhs);
  BivariatePoly& operator*=(const Rational& c);
  friend BivariatePoly operator+(BivariatePoly a, const BivariatePoly& b) { return a += b; }
  friend BivariatePoly operator*(BivariatePoly a, const BivariatePoly& b) { return a *= b; }
  friend BivariatePoly operator*(BivariatePoly a, const Rational& c) { return a *= c; }
  friend bool operator==(const BivariatePoly& a, const BivariatePoly& b) { return a.terms_ == b.terms_; }

  BivariatePoly pow(unsigned exponent) const;

  std::string str(const std::string& u = "u", const std::string& lambda = "lambda") const;

 private:
  std::map<Key, Rational> terms_;
};

/// Resultant of a and b with respect to u, as a polynomial in lambda.
/// Computed from the Sylvester matrix by exact evaluation at integer
/// points followed by Newton interpolation.
UniPoly resultant_in_u(const BivariatePoly& a, const BivariatePoly& b);

/// Determinant of a square rational matrix (row-major), fraction-free in
/// spirit but carried out with exact rational pivots.
Rational determinant(std::vector<std::vector<Rational>> m);

}  // namespace lqembed::exact
