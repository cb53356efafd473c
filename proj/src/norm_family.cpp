#include "lqembed/norm_family.hpp"

#include <cmath>
#include <mutex>

#include "lqembed/errors.hpp"
#include "lqembed/exact/sturm.hpp"

namespace lqembed::norms {

using exact::ParameterEndpoint;

PerturbedNormFamily PerturbedNormFamily::standard(int n, int s) {
  PerturbedNormFamily f;
  f.n = n;
  f.s = s;
  f.validate();
  return f;
}

void PerturbedNormFamily::validate() const {
  if (n < 2) throw InvalidInput("dimension must be at least 2");
  if (s < 1) throw InvalidInput("profile power s must be a positive integer");
}

std::string PerturbedNormFamily::describe() const {
  return "|x|_2 (1 + lambda*(" + profile.str("u") + "))^" + std::to_string(s) + ", u = x_n^2/|x|^2, n = " +
         std::to_string(n);
}

Rational profile_power(const PerturbedNormFamily& family, const Rational& lambda, const Rational& u) {
  return (Rational(1) + lambda * family.profile(u)).pow(static_cast<unsigned>(family.s));
}

std::optional<Rational> profile_nonpositive_point(const PerturbedNormFamily& family, const Rational& lambda) {
  const UniPoly shifted = UniPoly::constant(Rational(1)) + family.profile * lambda;
  for (const Rational& end : {Rational(0), Rational(1)}) {
    if (shifted(end).sign() <= 0) return end;
  }
  const auto decision = exact::sturm_nonneg(shifted, Rational(0), Rational(1));
  if (!decision.holds) return decision.witness;
  const auto roots = exact::isolate_roots_in(shifted, Rational(0), Rational(1));
  if (!roots.empty()) {
    const exact::UniPoly sf = exact::squarefree_part(shifted);
    return exact::refine(sf, roots.front(), Rational(0)).lo;
  }
  return std::nullopt;
}

PerturbedNorm::PerturbedNorm(const PerturbedNormFamily& family, const Rational& lambda)
    : n_(family.n), s_(family.s), lambda_(lambda) {
  family.validate();
  if (auto u = profile_nonpositive_point(family, lambda)) {
    throw InvalidInput("lambda = " + lambda.str() + " makes 1 + lambda f vanish at u = " + u->str());
  }
  scaled_profile_ = (UniPoly::constant(Rational(1)) + family.profile * lambda).to_double();
}

double PerturbedNorm::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw InvalidInput("point has the wrong dimension");
  double r2 = 0.0;
  for (double c : x) r2 += c * c;
  if (r2 == 0.0) return 0.0;
  const double u = x.back() * x.back() / r2;
  double p = 0.0;
  for (auto it = scaled_profile_.rbegin(); it != scaled_profile_.rend(); ++it) p = p * u + *it;
  return std::sqrt(r2) * std::pow(p, s_);
}

double evaluate(const PerturbedNormFamily& family, const Rational& lambda, std::span<const double> x) {
  return PerturbedNorm(family, lambda)(x);
}

BivariatePoly expand_power(const PerturbedNormFamily& family, const Rational& q) {
  const Rational sq = Rational(family.s) * q;
  if (!sq.is_integer() || sq.sign() <= 0) {
    throw UnsupportedExponent("s*q = " + sq.str() + " is not a positive integer");
  }
  BivariatePoly base = BivariatePoly::constant(Rational(1));
  for (int i = 0; i <= family.profile.degree(); ++i) base.add_term(i, 1, family.profile.coeff(i));
  return base.pow(static_cast<unsigned>(sq.numerator().get_ui()));
}

// ---- PlanePoly --------------------------------------------------------------

void PlanePoly::add_term(int x, int y, int lambda, const Rational& c) {
  if (c.is_zero()) return;
  const Key key{x, y, lambda};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

PlanePoly& PlanePoly::operator+=(const PlanePoly& rhs) {
  for (const auto& [k, c] : rhs.terms_) add_term(k[0], k[1], k[2], c);
  return *this;
}

PlanePoly operator*(const PlanePoly& a, const PlanePoly& b) {
  PlanePoly out;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) out.add_term(ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2], ca * cb);
  }
  return out;
}

PlanePoly operator*(PlanePoly a, const Rational& c) {
  PlanePoly out;
  for (const auto& [k, v] : a.terms_) out.add_term(k[0], k[1], k[2], v * c);
  return out;
}

Rational PlanePoly::operator()(const Rational& x, const Rational& y, const Rational& lambda) const {
  Rational acc(0);
  for (const auto& [k, c] : terms_) {
    acc += c * x.pow(static_cast<unsigned>(k[0])) * y.pow(static_cast<unsigned>(k[1])) *
           lambda.pow(static_cast<unsigned>(k[2]));
  }
  return acc;
}

// ---- Symbolic Hessian -------------------------------------------------------

namespace {

// Sum of c * x^i y^j R^p lambda^l with R = (x^2 + y^2)^{1/2}; p may be negative.
using RadialKey = std::array<int, 4>;
using RadialExpr = std::map<RadialKey, Rational>;

void accumulate(RadialExpr& e, const RadialKey& k, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = e.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) e.erase(it);
  }
}

// d/dx (x^i y^j R^p) = i x^{i-1} y^j R^p + p x^{i+1} y^j R^{p-2}; likewise in y.
RadialExpr differentiate(const RadialExpr& e, int axis) {
  RadialExpr out;
  for (const auto& [k, c] : e) {
    const int own = k[static_cast<std::size_t>(axis)];
    if (own > 0) {
      RadialKey d = k;
      d[static_cast<std::size_t>(axis)] -= 1;
      accumulate(out, d, c * Rational(own));
    }
    if (k[2] != 0) {
      RadialKey d = k;
      d[static_cast<std::size_t>(axis)] += 1;
      d[2] -= 2;
      accumulate(out, d, c * Rational(k[2]));
    }
  }
  return out;
}

// Multiplies by R^shift and expands even powers of R into x, y.
PlanePoly to_plane(const RadialExpr& e, int shift) {
  PlanePoly out;
  for (const auto& [k, c] : e) {
    const int p = k[2] + shift;
    if (p < 0 || p % 2 != 0) throw ConsistencyError("radial power " + std::to_string(p) + " is not polynomial");
    const int half = p / 2;
    Rational binom(1);
    for (int i = 0; i <= half; ++i) {
      out.add_term(k[0] + 2 * i, k[1] + 2 * (half - i), k[3], c * binom);
      binom = binom * Rational(half - i) / Rational(i + 1);
    }
  }
  return out;
}

PlanePoly monomial(int x, int y, const Rational& c) {
  PlanePoly p;
  p.add_term(x, y, 0, c);
  return p;
}

}  // namespace

TangentialHessian hessian_tangential_form(const PerturbedNormFamily& family) {
  family.validate();
  // (1 + lambda f(w))^s with w = y^2/R^2, expanded in (w, lambda).
  BivariatePoly base = BivariatePoly::constant(Rational(1));
  for (int i = 0; i <= family.profile.degree(); ++i) base.add_term(i, 1, family.profile.coeff(i));
  const BivariatePoly powered = base.pow(static_cast<unsigned>(family.s));

  RadialExpr g;
  for (const auto& [key, c] : powered.terms()) {
    const auto [w, l] = key;
    accumulate(g, {0, 2 * w, 1 - 2 * w, l}, c);
  }
  const int top = std::max(powered.degree_u(), 0);
  const int radial = 3 + 2 * top;

  TangentialHessian h;
  h.radial_power = radial;
  const RadialExpr gx = differentiate(g, 0);
  const RadialExpr gy = differentiate(g, 1);
  h.hxx = to_plane(differentiate(gx, 0), radial);
  h.hxy = to_plane(differentiate(gx, 1), radial);
  h.hyy = to_plane(differentiate(gy, 1), radial);

  // Degree-one homogeneity forces H = P * (-y, x)(-y, x)^T: P = hyy / x^2.
  for (const auto& [k, c] : h.hyy.terms()) {
    if (k[0] < 2) throw ConsistencyError("g_yy is not divisible by x^2");
    h.factor.add_term(k[0] - 2, k[1], k[2], c);
  }
  if (!(h.hxx == h.factor * monomial(0, 2, Rational(1)))) {
    throw ConsistencyError("g_xx does not match y^2 P: radial null direction missing");
  }
  if (!(h.hxy == h.factor * monomial(1, 1, Rational(-1)))) {
    throw ConsistencyError("g_xy does not match -xy P: radial null direction missing");
  }

  const int degree = radial - 3;  // total degree of P in (x, y)
  const int half = degree / 2;
  h.coefficients.assign(static_cast<std::size_t>(half) + 1, UniPoly{});
  for (const auto& [k, c] : h.factor.terms()) {
    if (k[0] % 2 != 0 || k[1] % 2 != 0 || k[0] + k[1] != degree) {
      throw ConsistencyError("tangential factor is not an even form of degree " + std::to_string(degree));
    }
    h.coefficients[static_cast<std::size_t>(k[1] / 2)] += UniPoly::monomial(c, k[2]);
  }
  const UniPoly one_minus_t{Rational(1), Rational(-1)};
  const UniPoly t{Rational(0), Rational(1)};
  for (int k = 0; k <= half; ++k) {
    const UniPoly basis = one_minus_t.pow(static_cast<unsigned>(half - k)) * t.pow(static_cast<unsigned>(k));
    const UniPoly& c = h.coefficients[static_cast<std::size_t>(k)];
    for (int i = 0; i <= basis.degree(); ++i) {
      for (int j = 0; j <= c.degree(); ++j) h.quadrant_poly.add_term(i, j, basis.coeff(i) * c.coeff(j));
    }
  }
  return h;
}

bool ConvexityCertificate::contains(const Rational& lambda) const {
  if (lower && exact::compare(lower->value, lambda) > 0) return false;
  if (upper && exact::compare(upper->value, lambda) < 0) return false;
  return true;
}

ConvexityCertificate convexity_interval(const PerturbedNormFamily& family) {
  ConvexityCertificate cert;
  cert.hessian = hessian_tangential_form(family);
  const auto interval = exact::nonneg_parameter_interval(cert.hessian.quadrant_poly, Rational(0), Rational(1));
  cert.lower = interval.lower;
  cert.upper = interval.upper;
  cert.factored_note = "(ay - bx)^2 factored from the Hessian form; remaining factor scaled by (x^2+y^2)^(" +
                       std::to_string(cert.hessian.radial_power) + "/2)";
  cert.reduction_note =
      "convexity in R^n is taken to be equivalent to convexity of the planar reduction g(x, y); this "
      "equivalence is asserted, not derived here";
  return cert;
}

std::shared_ptr<const ConvexityCertificate> shared_convexity_interval(const PerturbedNormFamily& family) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const ConvexityCertificate>> cache;
  // The planar reduction does not depend on n.
  const std::string key = std::to_string(family.s) + "|" + family.profile.str("u");
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto cert = std::make_shared<const ConvexityCertificate>(convexity_interval(family));
  std::lock_guard lock(mutex);
  return cache.try_emplace(key, std::move(cert)).first->second;
}

NormDecision is_norm(const PerturbedNormFamily& family, const ConvexityCertificate& certificate,
                     const Rational& lambda) {
  NormDecision d;
  d.convex = certificate.contains(lambda);
  if (!d.convex) {
    const auto slice = certificate.hessian.quadrant_poly.at_lambda(lambda);
    d.direction_witness = exact::sturm_nonneg(slice, Rational(0), Rational(1)).witness;
  }
  d.profile_witness = profile_nonpositive_point(family, lambda);
  d.profile_positive = !d.profile_witness.has_value();
  d.is_norm = d.convex && d.profile_positive;
  return d;
}

NormDecision is_norm(const PerturbedNormFamily& family, const Rational& lambda) {
  return is_norm(family, *shared_convexity_interval(family), lambda);
}

}  // namespace lqembed::norms
