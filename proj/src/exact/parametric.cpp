#include "lqembed/exact/parametric.hpp"

#include <algorithm>

#include "lqembed/errors.hpp"

namespace lqembed::exact {

std::string to_string(ParameterCondition::Kind kind) {
  switch (kind) {
    case ParameterCondition::Kind::LowerEndpoint:
      return "lower-endpoint";
    case ParameterCondition::Kind::UpperEndpoint:
      return "upper-endpoint";
    case ParameterCondition::Kind::InteriorDoubleRoot:
      return "interior-double-root";
    case ParameterCondition::Kind::LeadingCoefficient:
      return "leading-coefficient";
  }
  return "unknown";
}

std::vector<ParameterCondition> parameter_conditions(const BivariatePoly& p, const Rational& a, const Rational& b) {
  using Kind = ParameterCondition::Kind;
  std::vector<ParameterCondition> out;
  out.push_back({Kind::LowerEndpoint, p.at_u(a)});
  out.push_back({Kind::UpperEndpoint, p.at_u(b)});
  const int du = p.degree_u();
  if (du >= 2) out.push_back({Kind::InteriorDoubleRoot, resultant_in_u(p, p.derivative_u())});
  if (du >= 1) out.push_back({Kind::LeadingCoefficient, p.coefficient_in_u(du)});
  return out;
}

Rational rational_between(const AlgebraicNumber& x, const AlgebraicNumber& y) {
  AlgebraicNumber a = x;
  AlgebraicNumber b = y;
  while (!(a.hi() < b.lo())) {
    a = a.refined((a.hi() - a.lo()) / Rational(4));
    b = b.refined((b.hi() - b.lo()) / Rational(4));
  }
  return midpoint(a.hi(), b.lo());
}

namespace {

struct TaggedRoot {
  AlgebraicNumber value;
  std::vector<std::size_t> conditions;  // indices into the condition list
};

bool holds_at(const BivariatePoly& p, const Rational& a, const Rational& b, const Rational& lambda) {
  return sturm_nonneg(p.at_lambda(lambda), a, b).holds;
}

// Distinct roots of all conditions on one side of zero (excluding zero),
// ordered by distance from zero.
std::vector<TaggedRoot> side_roots(const std::vector<ParameterCondition>& conditions, int side) {
  std::vector<TaggedRoot> roots;
  for (std::size_t i = 0; i < conditions.size(); ++i) {
    const UniPoly& c = conditions[i].poly;
    if (c.degree() <= 0) continue;
    for (auto& r : real_roots(c)) {
      const int s = compare(r, Rational(0));
      if (s == side) roots.push_back({std::move(r), {i}});
    }
  }
  std::sort(roots.begin(), roots.end(), [side](const TaggedRoot& l, const TaggedRoot& r) {
    return side > 0 ? l.value < r.value : r.value < l.value;
  });
  std::vector<TaggedRoot> merged;
  for (auto& r : roots) {
    if (!merged.empty() && merged.back().value == r.value) {
      merged.back().conditions.push_back(r.conditions.front());
    } else {
      merged.push_back(std::move(r));
    }
  }
  return merged;
}

ParameterEndpoint make_endpoint(const AlgebraicNumber& value, const std::vector<std::size_t>& indices,
                                const std::vector<ParameterCondition>& conditions) {
  ParameterEndpoint ep{value, {}, {}};
  std::vector<std::size_t> order = indices;
  std::sort(order.begin(), order.end(),
            [&](std::size_t l, std::size_t r) { return conditions[l].kind < conditions[r].kind; });
  UniPoly g;
  for (std::size_t i : order) {
    ep.binding.push_back(conditions[i].kind);
    g = gcd(g, squarefree_part(conditions[i].poly));
  }
  if (value.is_rational()) {
    ep.binding_poly = UniPoly::linear_root(*value.rational()).primitive();
    return ep;
  }
  // Strip rational roots so that quadratic surds get a quadratic polynomial.
  if (g.degree() > 2) {
    for (const auto& r : real_roots(g)) {
      if (auto q = r.rational()) g = divmod(g, UniPoly::linear_root(*q)).first;
    }
  }
  ep.value = AlgebraicNumber::from_isolating_interval(g, value.lo(), value.hi());
  ep.binding_poly = ep.value.defining_poly();
  return ep;
}

std::optional<ParameterEndpoint> walk(const BivariatePoly& p, const Rational& a, const Rational& b,
                                      const std::vector<ParameterCondition>& conditions, int side) {
  const auto roots = side_roots(conditions, side);
  const AlgebraicNumber zero(Rational(0));
  // Gap between 0 and the first root.
  {
    const Rational sample = roots.empty() ? Rational(side)
                            : side > 0    ? rational_between(zero, roots.front().value)
                                          : rational_between(roots.front().value, zero);
    if (!holds_at(p, a, b, sample)) {
      std::vector<std::size_t> at_zero;
      for (std::size_t i = 0; i < conditions.size(); ++i) {
        if (!conditions[i].poly.is_zero() && conditions[i].poly(Rational(0)).is_zero()) at_zero.push_back(i);
      }
      return make_endpoint(zero, at_zero, conditions);
    }
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    Rational sample;
    if (i + 1 < roots.size()) {
      sample = side > 0 ? rational_between(roots[i].value, roots[i + 1].value)
                        : rational_between(roots[i + 1].value, roots[i].value);
    } else {
      sample = side > 0 ? roots[i].value.hi() + Rational(1) : roots[i].value.lo() - Rational(1);
    }
    if (!holds_at(p, a, b, sample)) return make_endpoint(roots[i].value, roots[i].conditions, conditions);
  }
  return std::nullopt;
}

}  // namespace

ParameterInterval nonneg_parameter_interval(const BivariatePoly& p, const Rational& a, const Rational& b) {
  if (!holds_at(p, a, b, Rational(0))) throw InvalidInput("parameter value 0 is not in the non-negative set");
  ParameterInterval out;
  out.conditions = parameter_conditions(p, a, b);
  // A condition that vanishes identically carries no information.
  std::erase_if(out.conditions, [](const ParameterCondition& c) { return c.poly.is_zero(); });
  out.upper = walk(p, a, b, out.conditions, +1);
  out.lower = walk(p, a, b, out.conditions, -1);
  return out;
}

}  // namespace lqembed::exact
