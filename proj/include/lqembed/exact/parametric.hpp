#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lqembed/exact/algebraic.hpp"
#include "lqembed/exact/bipoly.hpp"

namespace lqembed::exact {

/// Polynomial condition in the parameter whose real roots are the only
/// places where min over u of P(u, lambda) can change sign.
struct ParameterCondition {
  enum class Kind { LowerEndpoint, UpperEndpoint, InteriorDoubleRoot, LeadingCoefficient };
  Kind kind;
  UniPoly poly;
};

std::string to_string(ParameterCondition::Kind kind);

/// One end of the parameter interval.
struct ParameterEndpoint {
  AlgebraicNumber value;
  /// Conditions vanishing at the endpoint, most specific first.
  std::vector<ParameterCondition::Kind> binding;
  /// Lowest-degree polynomial found that vanishes at the endpoint.
  UniPoly binding_poly;
};

/// Maximal interval around lambda = 0 on which P(., lambda) >= 0 on [a, b].
/// An absent endpoint means the interval is unbounded on that side.
struct ParameterInterval {
  std::optional<ParameterEndpoint> lower;
  std::optional<ParameterEndpoint> upper;
  std::vector<ParameterCondition> conditions;
};

/// Candidate conditions for P on u in [a, b]: P(a, .), P(b, .), the
/// discriminant-type resultant Res_u(P, dP/du) and the u-leading coefficient.
std::vector<ParameterCondition> parameter_conditions(const BivariatePoly& p, const Rational& a, const Rational& b);

/// Walks the sorted real roots of all conditions outward from 0 and returns
/// the first root beyond which non-negativity fails, certified per gap with
/// sturm_nonneg. Throws InvalidInput if P(., 0) is negative somewhere.
ParameterInterval nonneg_parameter_interval(const BivariatePoly& p, const Rational& a, const Rational& b);

/// Rational strictly between x < y.
Rational rational_between(const AlgebraicNumber& x, const AlgebraicNumber& y);

}  // namespace lqembed::exact
