#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "lqembed/exact/gamma.hpp"
#include "lqembed/exact/rational.hpp"
#include "lqembed/exact/unipoly.hpp"

namespace lqembed::moments {

using exact::GammaRatioConstant;
using exact::Rational;
using exact::UniPoly;

/// Highest derivative order handled by the identity engine.
inline constexpr int kMaxDerivativeOrder = 8;

/// m-th partial derivative of (x_1^2 + ... + x_n^2)^k with respect to x_n,
/// restricted to the unit sphere. For odd m the derivative is
/// x_n * restricted(v); for even m it is restricted(v); v = x_n^2.
struct SphereDerivative {
  int order = 0;
  Rational exponent;
  UniPoly restricted;
  bool odd_factor = false;
};

/// Differentiates in the unrestricted (x_n, r^2) representation and sets
/// r^2 = 1 only after the last step.
SphereDerivative sphere_power_derivative(const Rational& k, int m);

/// (2k)(2k-1)...(2k-m+1): the factor produced by differentiating
/// |(x, xi)|^{2k} m times in x_n (m even).
Rational abs_power_derivative_coefficient(const Rational& k, int m);

/// Normalising constant of the classical identity
///   |x|^{2k} = c(n, k) * integral over S^{n-1} of |(x, xi)|^{2k} d xi,
/// c(n, k) = Gamma((n+2k)/2) / (2 pi^{(n-1)/2} Gamma((2k+1)/2)).
GammaRatioConstant sphere_power_constant(int n, const Rational& k);

/// One row of a moment identity: on the unit sphere,
///   x_n^{2j} = prefactor * integral |(x, xi)|^q density(xi_n^2) d xi.
/// The raw relation records the differentiated identity the row was solved
/// from: raw_derivative(x_n^2) = raw_constant * integral |(x,xi)|^q xi_n^{2j}.
struct MomentRow {
  int power = 0;  // j
  GammaRatioConstant prefactor;
  UniPoly density;  // in u = xi_n^2, degree exactly j
  UniPoly raw_derivative;
  GammaRatioConstant raw_constant;
};

struct MomentIdentity {
  int n = 0;
  Rational q;
  int max_power = 0;
  std::vector<MomentRow> rows;  // rows[j] for j = 0..max_power/2
};

/// Derives x_n^{2j} for j <= max_power/2 by differentiating the classical
/// identity with k = q/2 + j, 2j times, and solving the resulting
/// triangular system exactly. Every row shares the prefactor c(n, q/2).
MomentIdentity derive_moment_identity(int n, const Rational& q, int max_power);

/// Comparison of a derived identity with a known closed form.
struct FormCheck {
  std::string form;
  std::string expected;
  std::string derived;
  bool matches = false;
};

/// Checks the derived rows against the closed forms that are known for
/// the x_n^2 row (any q), the x_n^4 row (q = 1) and the constant of the
/// quartic raw relation at q = 1 in the commonly displayed form
/// 4*Gamma((n+5)/2) with the pi power omitted. Mismatches are reported,
/// never corrected.
std::vector<FormCheck> reference_form_checks(const MomentIdentity& identity);

/// Thread-safe memo of derived identities keyed by (n, q, max_power).
class MomentIdentityCache {
 public:
  std::shared_ptr<const MomentIdentity> get(int n, const Rational& q, int max_power);
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const MomentIdentity>> entries_;
};

/// Process-wide cache used by the embeddability module.
MomentIdentityCache& shared_identity_cache();

}  // namespace lqembed::moments
