#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lqembed/exact/bipoly.hpp"
#include "lqembed/exact/parametric.hpp"
#include "lqembed/exact/rational.hpp"
#include "lqembed/exact/unipoly.hpp"

namespace lqembed::norms {

using exact::BivariatePoly;
using exact::Rational;
using exact::UniPoly;

/// N_lambda(x) = |x|_2 * (1 + lambda * f(x_n^2 / |x|_2^2))^s on R^n.
/// The default profile f(u) = 1 - 3u is (x_1^2+...+x_{n-1}^2 - 2x_n^2)/|x|^2.
struct PerturbedNormFamily {
  int n = 3;
  int s = 2;
  UniPoly profile{Rational(1), Rational(-3)};

  static PerturbedNormFamily standard(int n, int s);
  /// Throws InvalidInput unless n >= 2 and s >= 1.
  void validate() const;
  std::string describe() const;
};

/// (1 + lambda f(u))^s, exact.
Rational profile_power(const PerturbedNormFamily& family, const Rational& lambda, const Rational& u);

/// A member of the family at fixed lambda, checked once for a positive
/// profile on [0, 1] and then evaluated in double precision.
class PerturbedNorm {
 public:
  /// Throws InvalidInput if 1 + lambda f vanishes somewhere on [0, 1].
  PerturbedNorm(const PerturbedNormFamily& family, const Rational& lambda);

  double operator()(std::span<const double> x) const;
  int dimension() const { return n_; }
  const Rational& lambda() const { return lambda_; }

 private:
  int n_;
  int s_;
  Rational lambda_;
  std::vector<double> scaled_profile_;  // coefficients of 1 + lambda f(u)
};

double evaluate(const PerturbedNormFamily& family, const Rational& lambda, std::span<const double> x);

/// N_lambda^q on the unit sphere as a polynomial in (u, lambda).
/// Requires s*q to be a positive integer (UnsupportedExponent otherwise).
BivariatePoly expand_power(const PerturbedNormFamily& family, const Rational& q);

/// Polynomial in (x, y, lambda) with rational coefficients.
class PlanePoly {
 public:
  using Key = std::array<int, 3>;

  void add_term(int x, int y, int lambda, const Rational& c);
  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  PlanePoly& operator+=(const PlanePoly& rhs);
  friend PlanePoly operator+(PlanePoly a, const PlanePoly& b) { return a += b; }
  friend PlanePoly operator*(const PlanePoly& a, const PlanePoly& b);
  friend PlanePoly operator*(PlanePoly a, const Rational& c);
  friend bool operator==(const PlanePoly& a, const PlanePoly& b) { return a.terms_ == b.terms_; }

  Rational operator()(const Rational& x, const Rational& y, const Rational& lambda) const;

 private:
  std::map<Key, Rational> terms_;
};

/// Second derivatives of the planar reduction
///   g(x, y) = (x^2 + y^2)^{1/2} (1 + lambda f(y^2/(x^2+y^2)))^s,
/// each multiplied by (x^2+y^2)^{radial_power/2} so that they are
/// polynomials, and the factor P with
///   a^2 g_xx + 2ab g_xy + b^2 g_yy = (ay - bx)^2 P / (x^2+y^2)^{radial_power/2}.
struct TangentialHessian {
  int radial_power = 0;
  PlanePoly hxx;
  PlanePoly hxy;
  PlanePoly hyy;
  PlanePoly factor;
  /// coefficients[k](lambda) multiplies x^{2(d-k)} y^{2k}, d = coefficients.size() - 1.
  std::vector<UniPoly> coefficients;
  /// factor on the unit circle with x^2 = 1 - t, y^2 = t, as a polynomial in (t, lambda).
  BivariatePoly quadrant_poly;
};

/// Symbolic Hessian with the radial null direction factored out. Throws
/// ConsistencyError if the rank-one factorisation leaves a remainder.
TangentialHessian hessian_tangential_form(const PerturbedNormFamily& family);

/// Exact maximal lambda-interval around 0 on which the tangential form is
/// non-negative in every direction. Missing endpoints mean unbounded.
struct ConvexityCertificate {
  std::optional<exact::ParameterEndpoint> lower;
  std::optional<exact::ParameterEndpoint> upper;
  TangentialHessian hessian;
  std::string factored_note;
  std::string reduction_note;

  bool entire_line() const { return !lower && !upper; }
  /// Exact membership test for a rational lambda (closed interval).
  bool contains(const Rational& lambda) const;
};

ConvexityCertificate convexity_interval(const PerturbedNormFamily& family);
/// Memoised convexity_interval keyed by (s, profile); safe for concurrent use.
std::shared_ptr<const ConvexityCertificate> shared_convexity_interval(const PerturbedNormFamily& family);

struct NormDecision {
  bool is_norm = false;
  bool convex = false;
  bool profile_positive = false;
  /// t = y^2 on the unit circle where the tangential form is negative.
  std::optional<Rational> direction_witness;
  /// u in [0, 1] where 1 + lambda f(u) <= 0.
  std::optional<Rational> profile_witness;
};

NormDecision is_norm(const PerturbedNormFamily& family, const Rational& lambda);
NormDecision is_norm(const PerturbedNormFamily& family, const ConvexityCertificate& certificate,
                     const Rational& lambda);

/// u in [0, 1] with 1 + lambda f(u) <= 0, if any.
std::optional<Rational> profile_nonpositive_point(const PerturbedNormFamily& family, const Rational& lambda);

}  // namespace lqembed::norms
