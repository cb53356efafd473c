#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "lqembed/exact/rational.hpp"

namespace lqembed::exact {

/// Dense univariate polynomial with rational coefficients, index = degree.
/// The coefficient vector never carries trailing zeros; the zero
/// polynomial has an empty vector and degree -1.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coefficients);
  UniPoly(std::initializer_list<Rational> coefficients);

  static UniPoly constant(const Rational& c);
  static UniPoly monomial(const Rational& c, int degree);
  /// x - r
  static UniPoly linear_root(const Rational& r);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }

  /// Coefficient of x^i; zero outside the stored range.
  Rational coeff(int i) const;
  const Rational& leading() const;
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  Rational operator()(const Rational& x) const;
  double eval(double x) const;
  std::vector<double> to_double() const;

  UniPoly derivative() const;
  /// this(inner(x))
  UniPoly compose(const UniPoly& inner) const;
  UniPoly monic() const;
  /// Integer coefficients with unit content, obtained by multiplying with a
  /// positive rational; signs are preserved.
  UniPoly primitive() const;

  UniPoly operator-() const;
  UniPoly& operator+=(const UniPoly& rhs);
  UniPoly& operator-=(const UniPoly& rhs);
  UniPoly& operator*=(const UniPoly& rhs);
  UniPoly& operator*=(const Rational& rhs);

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const UniPoly& b) { return a *= b; }
  friend UniPoly operator*(UniPoly a, const Rational& c) { return a *= c; }
  friend UniPoly operator*(const Rational& c, UniPoly a) { return a *= c; }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

  UniPoly pow(unsigned exponent) const;

  /// Human readable, highest degree first, e.g. "-11*x^2 - 10*x + 1".
  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Euclidean division: a = q*b + r with deg r < deg b.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
/// Monic greatest common divisor (zero if both are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);
/// p / gcd(p, p'), primitive with positive leading coefficient.
UniPoly squarefree_part(const UniPoly& p);

}  // namespace lqembed::exact
