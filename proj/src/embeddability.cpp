#include "lqembed/embeddability.hpp"

#include "lqembed/errors.hpp"
#include "lqembed/exact/parametric.hpp"
#include "lqembed/exact/sturm.hpp"

namespace lqembed::embed {

using exact::compare;
using exact::ParameterCondition;

DensityRepresentation density(const PerturbedNormFamily& family, const Rational& q) {
  family.validate();
  const BivariatePoly expansion = norms::expand_power(family, q);
  const int top = std::max(expansion.degree_u(), 0);
  auto identity = moments::shared_identity_cache().get(family.n, q, 2 * top);

  BivariatePoly b;
  for (int j = 0; j <= top; ++j) {
    const UniPoly e = expansion.coefficient_in_u(j);
    const UniPoly& p = identity->rows[static_cast<std::size_t>(j)].density;
    for (int i = 0; i <= p.degree(); ++i) {
      for (int l = 0; l <= e.degree(); ++l) b.add_term(i, l, p.coeff(i) * e.coeff(l));
    }
  }
  return {family, q, identity->rows.front().prefactor, std::move(b), std::move(identity)};
}

Minimum minimum_on_unit_interval(const UniPoly& p) {
  std::vector<AlgebraicNumber> candidates{Rational(0), Rational(1)};
  if (p.degree() >= 2) {
    for (const auto& r : exact::real_roots(p.derivative())) {
      if (compare(r, Rational(0)) > 0 && compare(r, Rational(1)) < 0) candidates.push_back(r);
    }
  }
  std::optional<Minimum> best;
  for (const auto& c : candidates) {
    Minimum m{c, std::nullopt, 0.0};
    if (auto r = c.rational()) {
      m.value = p(*r);
      m.approx = m.value->to_double();
    } else {
      const auto fine = c.refined(Rational(1, 1000000) * Rational(1, 1000000) * Rational(1, 1000000));
      m.approx = p(exact::midpoint(fine.lo(), fine.hi())).to_double();
    }
    const bool better = !best || (m.value && best->value ? *m.value < *best->value : m.approx < best->approx);
    if (better) best = m;
  }
  return *best;
}

EmbeddingDecision embeds(const DensityRepresentation& rep, const Rational& lambda) {
  const auto norm = norms::is_norm(rep.family, lambda);
  if (!norm.is_norm) {
    throw NotANorm("lambda = " + lambda.str() + " is outside the norm interval of " + rep.family.describe());
  }
  EmbeddingDecision d;
  d.q = rep.q;
  d.lambda = lambda;
  d.density = rep.at(lambda);
  d.minimum = minimum_on_unit_interval(d.density);
  const auto sd = exact::sturm_nonneg(d.density, Rational(0), Rational(1));
  d.embeds = sd.holds;
  if (!sd.holds) {
    d.witness = sd.witness;
    d.witness_value = d.density(*sd.witness);
  }
  return d;
}

EmbeddingDecision embeds(const PerturbedNormFamily& family, const Rational& q, const Rational& lambda) {
  return embeds(density(family, q), lambda);
}

namespace {

std::string binding_label(ParameterCondition::Kind kind) {
  switch (kind) {
    case ParameterCondition::Kind::LowerEndpoint: return "b(0)=0";
    case ParameterCondition::Kind::UpperEndpoint: return "b(1)=0";
    case ParameterCondition::Kind::InteriorDoubleRoot: return "interior minimum b=0";
    case ParameterCondition::Kind::LeadingCoefficient: return "leading coefficient vanishes";
  }
  return "unknown";
}

bool strictly_positive(const UniPoly& p) {
  return p(Rational(0)).sign() > 0 && exact::sturm_nonneg(p, Rational(0), Rational(1)).holds &&
         exact::isolate_roots_in(p, Rational(0), Rational(1)).empty();
}

ThresholdChecks check_threshold(const DensityRepresentation& rep, const ThresholdCertificate& cert) {
  ThresholdChecks c;
  const Rational step(1, 1000000);
  const AlgebraicNumber fine = cert.threshold.refined(step * step);
  const Rational below = fine.lo();
  const Rational above = fine.hi();
  auto nonneg = [&](const Rational& l) { return exact::sturm_nonneg(rep.at(l), Rational(0), Rational(1)).holds; };

  if (auto t = cert.threshold.rational()) {
    const UniPoly slice = rep.at(*t);
    c.zero_at_threshold = nonneg(*t) && !exact::isolate_roots_in(slice, Rational(0), Rational(1)).empty();
  } else {
    c.zero_at_threshold = exact::sign_at(cert.condition, cert.threshold) == 0 && nonneg(below);
  }
  c.nonneg_interior = true;
  for (int k = 1; k <= 10; ++k) c.nonneg_interior = c.nonneg_interior && nonneg(below * Rational(k, 11));
  c.negative_above = cert.convexity_limited || !nonneg(above + step);
  c.positive_below = strictly_positive(rep.at(below - step));
  return c;
}

}  // namespace

ThresholdCertificate lambda_threshold(const PerturbedNormFamily& family, const Rational& q) {
  const DensityRepresentation rep = density(family, q);
  const auto convexity = norms::shared_convexity_interval(family);
  const auto interval = exact::nonneg_parameter_interval(rep.b, Rational(0), Rational(1));

  ThresholdCertificate cert{q, Rational(0), UniPoly{}, {}, false, {}, {}};
  const bool beyond_convexity =
      convexity->upper && (!interval.upper || compare(interval.upper->value, convexity->upper->value) > 0);
  if (beyond_convexity) {
    cert.threshold = convexity->upper->value;
    cert.condition = convexity->upper->binding_poly;
    cert.convexity_limited = true;
    cert.binding.push_back("convexity-limited");
  } else if (interval.upper) {
    cert.threshold = interval.upper->value;
    cert.condition = interval.upper->binding_poly;
    for (auto kind : interval.upper->binding) cert.binding.push_back(binding_label(kind));
  } else {
    throw InvalidInput("the density is non-negative for every lambda > 0; no finite threshold");
  }
  cert.checks = check_threshold(rep, cert);
  cert.decimal = exact::to_decimal(cert.threshold);
  return cert;
}

AlgebraicNumber alpha_closed_form(int n) {
  const Rational den(9L * n * n - 12L * n - 1);
  const auto surd = exact::make_surd(Rational(1 - 3L * n) / den, Rational(1) / den, mpz_class(18L * n * n - 18L * n));
  return exact::to_algebraic(surd);
}

QuadraticWindow quadratic_window_data(int n) {
  if (n < 2) throw InvalidInput("dimension must be at least 2");
  const auto family = PerturbedNormFamily::standard(n, 2);
  const auto convexity = norms::shared_convexity_interval(family);
  QuadraticWindow w{n,
                    lambda_threshold(family, Rational(1)),
                    lambda_threshold(family, Rational(1, 2)),
                    Rational(1, 6L * n - 2),
                    Rational(1, 6L * n - 4),
                    convexity->upper ? convexity->upper->value : AlgebraicNumber(Rational(0))};
  w.alpha_matches_closed_form = compare(w.l1.threshold, alpha_closed_form(n)) == 0;
  w.half_matches_closed_form = compare(w.l_half.threshold, w.one_over_6n_minus_4) == 0;
  w.alpha_below_6n_minus_2 = compare(w.l1.threshold, w.one_over_6n_minus_2) < 0;
  w.between_reciprocals = w.one_over_6n_minus_2 < w.one_over_6n_minus_4;
  w.below_convexity = compare(w.convexity_upper, w.one_over_6n_minus_4) > 0;
  w.window_nonempty = compare(w.l1.threshold, w.l_half.threshold) < 0;
  return w;
}

QuadraticWindow quadratic_family_window(int n) {
  QuadraticWindow w = quadratic_window_data(n);
  if (!w.window_nonempty) {
    throw DegenerateWindow("n = " + std::to_string(n) + ": the L_1 threshold " + w.l1.threshold.str() +
                           " coincides with the L_{1/2} threshold " + w.l_half.threshold.str() +
                           " (both equal the convexity bound); the window is empty");
  }
  return w;
}

QuarticWindow quartic_family_window() {
  const auto family = PerturbedNormFamily::standard(3, 4);
  const auto convexity = norms::shared_convexity_interval(family);
  QuarticWindow w{convexity->upper->value, lambda_threshold(family, Rational(1, 4)),
                  lambda_threshold(family, Rational(1, 2)), Rational(1, 28),
                  false, false, false, false, Rational(0), false};
  w.half_below_stated_bound = compare(w.l_half.threshold, w.stated_bound) <= 0;
  w.stated_bound_below_quarter = compare(w.l_quarter.threshold, w.stated_bound) > 0;
  w.quarter_below_convexity = w.l_quarter.threshold <= w.convexity_upper;
  w.half_below_quarter = w.l_half.threshold < w.l_quarter.threshold;
  w.window_lower = w.half_below_stated_bound ? AlgebraicNumber(w.stated_bound) : w.l_half.threshold;
  w.window_nonempty = w.window_lower < w.l_quarter.threshold && w.quarter_below_convexity;
  return w;
}

CounterexampleBundle counterexample_bundle(int n) {
  if (n < 2) throw InvalidInput("dimension must be at least 2");
  if (n == 2) {
    throw DegenerateWindow("n = 2: alpha_2 = 1/11 coincides with the convexity bound, so no counterexample exists");
  }
  const auto family = PerturbedNormFamily::standard(n, 2);
  const auto convexity = norms::shared_convexity_interval(family);
  CounterexampleBundle b{n,
                         Rational(1, 6L * n - 4),
                         {},
                         convexity->lower->value,
                         convexity->upper->value,
                         {},
                         {},
                         lambda_threshold(family, Rational(1)).threshold};
  b.norm = norms::is_norm(family, *convexity, b.lambda);
  b.embed = embeds(family, Rational(1, 2), b.lambda);
  b.non_embed = embeds(family, Rational(1), b.lambda);
  return b;
}

}  // namespace lqembed::embed
