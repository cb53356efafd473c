#pragma once

#include "json.hpp"

#include "lqembed/embeddability.hpp"
#include "lqembed/exact/algebraic.hpp"
#include "lqembed/exact/bipoly.hpp"
#include "lqembed/exact/gamma.hpp"
#include "lqembed/moment_identities.hpp"
#include "lqembed/norm_family.hpp"
#include "lqembed/numeric_validation.hpp"

namespace lqembed::io {

using nlohmann::json;

json to_json(const exact::Rational& r);
json to_json(const exact::UniPoly& p);
json to_json(const exact::BivariatePoly& p);
json to_json(const exact::AlgebraicNumber& x);
json to_json(const exact::GammaRatioConstant& c);
json to_json(const moments::MomentIdentity& identity);
json to_json(const norms::PerturbedNormFamily& family);
json to_json(const norms::ConvexityCertificate& cert);
json to_json(const norms::NormDecision& d);
json to_json(const embed::DensityRepresentation& rep);
json to_json(const embed::EmbeddingDecision& d);
json to_json(const embed::ThresholdCertificate& cert);
json to_json(const embed::QuadraticWindow& w);
json to_json(const embed::QuarticWindow& w);
json to_json(const embed::CounterexampleBundle& b);
json to_json(const numeric::ValidationReport& r);

exact::Rational rational_from_json(const json& j);
exact::UniPoly unipoly_from_json(const json& j);
/// Rebuilds the number from its polynomial and isolating interval.
exact::AlgebraicNumber algebraic_from_json(const json& j);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

}  // namespace lqembed::io
