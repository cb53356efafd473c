#pragma once

#include <optional>
#include <string>

#include "lqembed/exact/rational.hpp"
#include "lqembed/exact/sturm.hpp"
#include "lqembed/exact/unipoly.hpp"

namespace lqembed::exact {

/// a + b*sqrt(d) with d > 1 square-free (up to the trial-division bound).
struct QuadraticSurd {
  Rational a;
  Rational b;
  mpz_class d;

  double to_double() const;
  /// e.g. "(-4 + 3*sqrt(3))/22"
  std::string str() const;
  friend bool operator==(const QuadraticSurd&, const QuadraticSurd&) = default;
};

/// Sign of (s - r), exact.
int compare(const QuadraticSurd& s, const Rational& r);

/// Builds a + b*sqrt(radicand) with the square part of the radicand pulled out.
QuadraticSurd make_surd(const Rational& a, const Rational& b, const mpz_class& radicand);

/// Real algebraic number given by a square-free integer polynomial and an
/// isolating interval. Rational values are stored with a linear polynomial
/// and a degenerate interval. Immutable.
class AlgebraicNumber {
 public:
  AlgebraicNumber(const Rational& r);  // NOLINT(google-explicit-constructor)

  /// `poly` must have exactly one distinct root in [lo, hi]; throws
  /// otherwise. Rational roots are detected exactly and stored as rationals.
  static AlgebraicNumber from_isolating_interval(const UniPoly& poly, const Rational& lo, const Rational& hi);

  const UniPoly& defining_poly() const { return poly_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }

  bool is_rational() const { return lo_ == hi_; }
  std::optional<Rational> rational() const;

  /// Same number with isolating interval no wider than `width`.
  AlgebraicNumber refined(const Rational& width) const;

  double to_double() const;
  /// Closed form when the defining polynomial is quadratic.
  std::optional<QuadraticSurd> closed_form() const;

  /// Closed form, rational, or "root of p in [lo, hi]".
  std::string str() const;

 private:
  AlgebraicNumber(UniPoly poly, Rational lo, Rational hi);
  UniPoly poly_;
  Rational lo_;
  Rational hi_;
};

/// Exact three-way comparisons; return negative, zero or positive.
int compare(const AlgebraicNumber& x, const Rational& r);
int compare(const AlgebraicNumber& x, const AlgebraicNumber& y);

inline bool operator==(const AlgebraicNumber& x, const AlgebraicNumber& y) { return compare(x, y) == 0; }
inline bool operator<(const AlgebraicNumber& x, const AlgebraicNumber& y) { return compare(x, y) < 0; }
inline bool operator<=(const AlgebraicNumber& x, const AlgebraicNumber& y) { return compare(x, y) <= 0; }
inline bool operator>(const AlgebraicNumber& x, const AlgebraicNumber& y) { return compare(x, y) > 0; }

/// Sign of h(x), exact.
int sign_at(const UniPoly& h, const AlgebraicNumber& x);

/// All distinct real roots of p as algebraic numbers, ascending.
std::vector<AlgebraicNumber> real_roots(const UniPoly& p);

/// The surd as an algebraic number (rational when b = 0).
AlgebraicNumber to_algebraic(const QuadraticSurd& s);

/// Smallest positive real root of a polynomial of degree 1 or 2; a perfect
/// square discriminant yields a rational. Throws DomainError if there is none.
AlgebraicNumber solve_quadratic_positive_root(const UniPoly& p);

/// Decimal rendering with `significant` digits, round-half-even. Uses plain
/// notation for moderate exponents and d.ddd...e+NN otherwise.
std::string to_decimal(const Rational& r, int significant = 12);
std::string to_decimal(const AlgebraicNumber& x, int significant = 12);

}  // namespace lqembed::exact
