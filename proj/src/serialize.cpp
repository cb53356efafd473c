#include "lqembed/serialize.hpp"

#include "lqembed/errors.hpp"

namespace lqembed::io {

using exact::Rational;

json to_json(const Rational& r) { return {{"num", r.numerator().get_str()}, {"den", r.denominator().get_str()}}; }

json to_json(const exact::UniPoly& p) {
  json out = json::array();
  for (const auto& c : p.coefficients()) out.push_back(to_json(c));
  return out;
}

json to_json(const exact::BivariatePoly& p) {
  json out = json::array();
  for (const auto& [key, c] : p.terms()) out.push_back({{"u", key.first}, {"lambda", key.second}, {"c", to_json(c)}});
  return out;
}

json to_json(const exact::AlgebraicNumber& x) {
  json out{{"poly", to_json(x.defining_poly())},
           {"interval", json::array({to_json(x.lo()), to_json(x.hi())})},
           {"approx", exact::to_decimal(x)},
           {"exact", x.str()}};
  return out;
}

json to_json(const exact::GammaRatioConstant& c) {
  const auto normal = c.normalized();
  json out{{"scalar", to_json(c.scalar())},
           {"gamma_num", to_json(c.gamma_num())},
           {"gamma_den", to_json(c.gamma_den())},
           {"pi_power", to_json(c.pi_power())},
           {"text", c.str()},
           {"value", c.value()}};
  out["reduced"] = normal.gamma_free() ? json{{"scalar", to_json(normal.scalar())}, {"pi_power", to_json(normal.pi_power())}}
                                       : json(nullptr);
  return out;
}

json to_json(const moments::MomentIdentity& identity) {
  json rows = json::array();
  for (const auto& r : identity.rows) {
    rows.push_back({{"power", 2 * r.power},
                    {"prefactor", to_json(r.prefactor)},
                    {"density", to_json(r.density)},
                    {"density_text", r.density.str("u")},
                    {"raw_derivative", to_json(r.raw_derivative)},
                    {"raw_constant", to_json(r.raw_constant)}});
  }
  json checks = json::array();
  for (const auto& c : moments::reference_form_checks(identity)) {
    checks.push_back({{"form", c.form}, {"expected", c.expected}, {"derived", c.derived}, {"matches", c.matches}});
  }
  return {{"n", identity.n}, {"q", to_json(identity.q)}, {"max_power", identity.max_power}, {"rows", rows},
          {"form_checks", checks}};
}

json to_json(const norms::PerturbedNormFamily& family) {
  return {{"n", family.n}, {"s", family.s}, {"profile", to_json(family.profile)}, {"text", family.describe()}};
}

namespace {

json endpoint_json(const std::optional<exact::ParameterEndpoint>& e) {
  if (!e) return nullptr;
  json binding = json::array();
  for (auto k : e->binding) binding.push_back(exact::to_string(k));
  return {{"value", to_json(e->value)}, {"binding", binding}, {"binding_poly", to_json(e->binding_poly)}};
}

json optional_rational(const std::optional<Rational>& r) { return r ? to_json(*r) : json(nullptr); }

}  // namespace

json to_json(const norms::ConvexityCertificate& cert) {
  json coefficients = json::array();
  for (const auto& c : cert.hessian.coefficients) coefficients.push_back(to_json(c));
  return {{"lower", endpoint_json(cert.lower)},
          {"upper", endpoint_json(cert.upper)},
          {"entire_line", cert.entire_line()},
          {"radial_power", cert.hessian.radial_power},
          {"form_coefficients", coefficients},
          {"quadrant_poly", to_json(cert.hessian.quadrant_poly)},
          {"factored_note", cert.factored_note},
          {"reduction_note", cert.reduction_note}};
}

json to_json(const norms::NormDecision& d) {
  return {{"is_norm", d.is_norm},
          {"convex", d.convex},
          {"profile_positive", d.profile_positive},
          {"direction_witness", optional_rational(d.direction_witness)},
          {"profile_witness", optional_rational(d.profile_witness)}};
}

json to_json(const embed::DensityRepresentation& rep) {
  return {{"family", to_json(rep.family)},
          {"q", to_json(rep.q)},
          {"prefactor", to_json(rep.prefactor)},
          {"b", to_json(rep.b)},
          {"b_text", rep.b.str()}};
}

json to_json(const embed::EmbeddingDecision& d) {
  json min{{"location", to_json(d.minimum.location)},
           {"value", optional_rational(d.minimum.value)},
           {"approx", d.minimum.approx}};
  return {{"embeds", d.embeds},
          {"q", to_json(d.q)},
          {"lambda", to_json(d.lambda)},
          {"density", to_json(d.density)},
          {"density_text", d.density.str("u")},
          {"min", min},
          {"witness", optional_rational(d.witness)},
          {"witness_value", optional_rational(d.witness_value)}};
}

json to_json(const embed::ThresholdCertificate& cert) {
  return {{"q", to_json(cert.q)},
          {"threshold", to_json(cert.threshold)},
          {"condition", to_json(cert.condition)},
          {"binding", cert.binding},
          {"convexity_limited", cert.convexity_limited},
          {"checks",
           {{"zero_at_threshold", cert.checks.zero_at_threshold},
            {"nonneg_interior", cert.checks.nonneg_interior},
            {"negative_above", cert.checks.negative_above},
            {"positive_below", cert.checks.positive_below}}},
          {"decimal", cert.decimal}};
}

json to_json(const embed::QuadraticWindow& w) {
  return {{"n", w.n},
          {"alpha", to_json(w.l1.threshold)},
          {"l1", to_json(w.l1)},
          {"l_half", to_json(w.l_half)},
          {"one_over_6n_minus_2", to_json(w.one_over_6n_minus_2)},
          {"one_over_6n_minus_4", to_json(w.one_over_6n_minus_4)},
          {"convexity_upper", to_json(w.convexity_upper)},
          {"checks",
           {{"alpha_matches_closed_form", w.alpha_matches_closed_form},
            {"half_matches_closed_form", w.half_matches_closed_form},
            {"alpha_below_6n_minus_2", w.alpha_below_6n_minus_2},
            {"between_reciprocals", w.between_reciprocals},
            {"below_convexity", w.below_convexity},
            {"window_nonempty", w.window_nonempty}}},
          {"chain_holds", w.chain_holds()}};
}

json to_json(const embed::QuarticWindow& w) {
  return {{"convexity_upper", to_json(w.convexity_upper)},
          {"l_quarter", to_json(w.l_quarter)},
          {"l_half", to_json(w.l_half)},
          {"stated_bound", to_json(w.stated_bound)},
          {"window_lower", to_json(w.window_lower)},
          {"window_upper", to_json(w.l_quarter.threshold)},
          {"checks",
           {{"half_below_stated_bound", w.half_below_stated_bound},
            {"stated_bound_below_quarter", w.stated_bound_below_quarter},
            {"quarter_below_convexity", w.quarter_below_convexity},
            {"half_below_quarter", w.half_below_quarter},
            {"window_nonempty", w.window_nonempty}}}};
}

json to_json(const embed::CounterexampleBundle& b) {
  json norm = to_json(b.norm);
  norm["interval"] = json::array({to_json(b.convexity_lower), to_json(b.convexity_upper)});
  return {{"n", b.n},
          {"lambda", to_json(b.lambda)},
          {"norm", norm},
          {"embed", to_json(b.embed)},
          {"non_embed", to_json(b.non_embed)},
          {"alpha", to_json(b.alpha)}};
}

json to_json(const numeric::ValidationReport& r) {
  json out{{"name", r.name},
           {"samples", r.samples},
           {"max_rel_error", r.max_rel_error},
           {"tolerance", r.tolerance},
           {"pass", r.pass},
           {"seed", r.seed},
           {"informational", r.informational},
           {"skipped", r.skipped ? json(*r.skipped) : json(nullptr)},
           {"detail", r.detail},
           {"metrics", r.metrics}};
  out["witness"] = r.witness;
  return out;
}

Rational rational_from_json(const json& j) {
  try {
    return Rational(mpz_class(j.at("num").get<std::string>()), mpz_class(j.at("den").get<std::string>()));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed rational record: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw InvalidInput("malformed rational record: " + j.dump());
  } catch (const DomainError&) {
    throw InvalidInput("malformed rational record: " + j.dump());
  }
}

exact::UniPoly unipoly_from_json(const json& j) {
  std::vector<Rational> c;
  for (const auto& item : j) c.push_back(rational_from_json(item));
  return exact::UniPoly(std::move(c));
}

exact::AlgebraicNumber algebraic_from_json(const json& j) {
  const auto& interval = j.at("interval");
  return exact::AlgebraicNumber::from_isolating_interval(unipoly_from_json(j.at("poly")),
                                                         rational_from_json(interval.at(0)),
                                                         rational_from_json(interval.at(1)));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace lqembed::io
