#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lqembed/exact/algebraic.hpp"
#include "lqembed/exact/bipoly.hpp"
#include "lqembed/exact/gamma.hpp"
#include "lqembed/moment_identities.hpp"
#include "lqembed/norm_family.hpp"

namespace lqembed::embed {

using exact::AlgebraicNumber;
using exact::BivariatePoly;
using exact::GammaRatioConstant;
using exact::Rational;
using exact::UniPoly;
using norms::PerturbedNormFamily;

/// N_lambda(x)^q = prefactor * integral over S^{n-1} of |(x, xi)|^q b(xi_n^2, lambda) d xi
/// for x on the unit sphere, with the unnormalised surface measure.
struct DensityRepresentation {
  PerturbedNormFamily family;
  Rational q;
  GammaRatioConstant prefactor;
  BivariatePoly b;  // in (u, lambda)
  std::shared_ptr<const moments::MomentIdentity> identity;

  int n() const { return family.n; }
  UniPoly at(const Rational& lambda) const { return b.at_lambda(lambda); }
};

/// Combines expand_power with the moment identity rows. Throws
/// UnsupportedExponent when s*q is not a positive integer and InvalidInput
/// when q is an even integer.
DensityRepresentation density(const PerturbedNormFamily& family, const Rational& q);

/// Minimum of a polynomial on [0, 1]: location exact, value exact when the
/// location is rational.
struct Minimum {
  AlgebraicNumber location{Rational(0)};
  std::optional<Rational> value;
  double approx = 0.0;
};

Minimum minimum_on_unit_interval(const UniPoly& p);

struct EmbeddingDecision {
  bool embeds = false;
  Rational q;
  Rational lambda;
  UniPoly density;  // b(., lambda)
  Minimum minimum;
  /// u with b(u, lambda) < 0 when embeds == false, and the exact value there.
  std::optional<Rational> witness;
  std::optional<Rational> witness_value;
};

/// Throws NotANorm if N_lambda is not a norm.
EmbeddingDecision embeds(const DensityRepresentation& rep, const Rational& lambda);
EmbeddingDecision embeds(const PerturbedNormFamily& family, const Rational& q, const Rational& lambda);

struct ThresholdChecks {
  bool zero_at_threshold = false;
  bool nonneg_interior = false;   // at 10 rationals in (0, threshold)
  bool negative_above = false;    // at threshold + 1/10^6
  bool positive_below = false;    // strictly positive minimum at threshold - 1/10^6
  bool all() const { return zero_at_threshold && nonneg_interior && negative_above && positive_below; }
};

/// sup of lambda-bar with b(., t) >= 0 on [0, 1] for every t in [0, lambda-bar].
struct ThresholdCertificate {
  Rational q;
  AlgebraicNumber threshold;
  /// Polynomial in lambda vanishing at the threshold.
  UniPoly condition;
  /// "b(1)=0", "b(0)=0", "interior minimum b=0", "leading coefficient",
  /// or "convexity-limited".
  std::vector<std::string> binding;
  bool convexity_limited = false;
  ThresholdChecks checks;
  std::string decimal;
};

ThresholdCertificate lambda_threshold(const PerturbedNormFamily& family, const Rational& q);

/// Window data for the s = 2 family in dimension n.
struct QuadraticWindow {
  int n = 0;
  ThresholdCertificate l1;       // q = 1, threshold alpha_n
  ThresholdCertificate l_half;   // q = 1/2, threshold 1/(6n-4)
  Rational one_over_6n_minus_2;
  Rational one_over_6n_minus_4;
  AlgebraicNumber convexity_upper;
  bool alpha_matches_closed_form = false;   // alpha_n vs ((18n^2-18n)^{1/2}-3n+1)/(9n^2-12n-1)
  bool half_matches_closed_form = false;    // l_half threshold == 1/(6n-4)
  bool alpha_below_6n_minus_2 = false;
  bool between_reciprocals = false;         // 1/(6n-2) < 1/(6n-4)
  bool below_convexity = false;             // 1/(6n-4) < convexity endpoint
  bool window_nonempty = false;             // alpha_n < 1/(6n-4)
  bool chain_holds() const {
    return alpha_matches_closed_form && half_matches_closed_form && alpha_below_6n_minus_2 && between_reciprocals &&
           below_convexity && window_nonempty;
  }
};

/// Computes the window without judging it; n = 2 yields an empty window.
QuadraticWindow quadratic_window_data(int n);
/// As above but throws DegenerateWindow when the window (alpha_n, 1/(6n-4)] is empty.
QuadraticWindow quadratic_family_window(int n);

/// The closed form ((18n^2-18n)^{1/2}-3n+1)/(9n^2-12n-1) as an exact number.
AlgebraicNumber alpha_closed_form(int n);

/// Window data for the s = 4 family in dimension 3.
struct QuarticWindow {
  AlgebraicNumber convexity_upper;   // 1/23
  ThresholdCertificate l_quarter;    // q = 1/4, threshold 1/26
  ThresholdCertificate l_half;       // q = 1/2, exact lambda-bar
  Rational stated_bound{1, 28};
  bool half_below_stated_bound = false;   // lambda-bar <= 1/28
  bool stated_bound_below_quarter = false;  // 1/28 < 1/26
  bool quarter_below_convexity = false;     // 1/26 <= 1/23
  bool half_below_quarter = false;          // lambda-bar < 1/26
  AlgebraicNumber window_lower;             // max(lambda-bar, 1/28)
  bool window_nonempty = false;
};

QuarticWindow quartic_family_window();

/// Certificates at lambda = 1/(6n-4) for the s = 2 family: norm, embedding
/// into L_{1/2}, non-embedding into L_1.
struct CounterexampleBundle {
  int n = 0;
  Rational lambda;
  norms::NormDecision norm;
  AlgebraicNumber convexity_lower;
  AlgebraicNumber convexity_upper;
  EmbeddingDecision embed;       // q = 1/2
  EmbeddingDecision non_embed;   // q = 1
  AlgebraicNumber alpha;
};

/// Throws DegenerateWindow for n = 2 and InvalidInput for n < 2.
CounterexampleBundle counterexample_bundle(int n);

}  // namespace lqembed::embed
