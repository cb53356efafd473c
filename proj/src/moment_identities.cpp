#include "lqembed/moment_identities.hpp"

#include <utility>

#include "lqembed/errors.hpp"

namespace lqembed::moments {

namespace {

bool is_even_integer(const Rational& x) {
  return x.is_integer() && mpz_even_p(x.raw().get_num_mpz_t()) != 0;
}

void check_order(int m) {
  if (m < 0) throw InvalidInput("derivative order must be non-negative");
  if (m > kMaxDerivativeOrder) {
    throw UnsupportedOrder("derivative order " + std::to_string(m) + " exceeds the supported bound " +
                           std::to_string(kMaxDerivativeOrder));
  }
}

}  // namespace

SphereDerivative sphere_power_derivative(const Rational& k, int m) {
  check_order(m);
  // Terms c * x_n^e * (r^2)^(k - i), keyed by (e, i).
  std::map<std::pair<int, int>, Rational> terms{{{0, 0}, Rational(1)}};
  for (int step = 0; step < m; ++step) {
    std::map<std::pair<int, int>, Rational> next;
    for (const auto& [key, c] : terms) {
      const auto [e, i] = key;
      if (e > 0) next[{e - 1, i}] += c * Rational(e);
      const Rational outer = Rational(2) * (k - Rational(i));
      if (!outer.is_zero()) next[{e + 1, i + 1}] += c * outer;
    }
    terms = std::move(next);
  }
  std::vector<Rational> coeffs(static_cast<std::size_t>(m / 2) + 1);
  for (const auto& [key, c] : terms) {
    const int e = key.first;
    if ((e - m) % 2 != 0) throw ConsistencyError("parity violated in sphere derivative");
    coeffs[static_cast<std::size_t>(e / 2)] += c;  // r^2 = 1 applied here
  }
  return {m, k, UniPoly(std::move(coeffs)), m % 2 == 1};
}

Rational abs_power_derivative_coefficient(const Rational& k, int m) {
  check_order(m);
  if (m % 2 != 0) throw InvalidInput("odd derivative orders only occur as intermediate steps");
  const Rational two_k = Rational(2) * k;
  const Rational q = two_k - Rational(m);
  if (is_even_integer(q) && q.sign() <= 0) {
    throw InvalidInput("exponent 2k - m = " + q.str() + " is a non-positive even integer");
  }
  Rational product(1);
  for (int i = 0; i < m; ++i) product *= two_k - Rational(i);
  if (product.is_zero()) throw InvalidInput("falling factorial vanishes for 2k = " + two_k.str());
  return product;
}

GammaRatioConstant sphere_power_constant(int n, const Rational& k) {
  const Rational two_k = Rational(2) * k;
  return {Rational(1, 2), (Rational(n) + two_k) / Rational(2), (two_k + Rational(1)) / Rational(2),
          -Rational(n - 1) / Rational(2)};
}

MomentIdentity derive_moment_identity(int n, const Rational& q, int max_power) {
  if (n < 2) throw InvalidInput("dimension must be at least 2");
  if (q.sign() <= 0) throw InvalidInput("exponent q must be positive");
  if (is_even_integer(q)) {
    throw InvalidInput("q = " + q.str() + " is an even integer; the representation is not unique");
  }
  if (max_power < 0 || max_power % 2 != 0) throw InvalidInput("max power must be a non-negative even integer");
  check_order(max_power);

  const GammaRatioConstant base = sphere_power_constant(n, q / Rational(2));
  const int rows = max_power / 2;

  // E[j](v) = base * integral |(x,xi)|^q xi_n^{2j}, as a polynomial in v = x_n^2.
  std::vector<UniPoly> moment_polys;
  MomentIdentity identity{n, q, max_power, {}};
  Rational pochhammer_ratio(1);
  for (int j = 0; j <= rows; ++j) {
    const Rational k = q / Rational(2) + Rational(j);
    const SphereDerivative d = sphere_power_derivative(k, 2 * j);
    const Rational falling = abs_power_derivative_coefficient(k, 2 * j);
    if (j > 0) {
      pochhammer_ratio *= ((Rational(n) + q) / Rational(2) + Rational(j - 1)) /
                          ((q + Rational(1)) / Rational(2) + Rational(j - 1));
    }
    UniPoly e = d.restricted * (pochhammer_ratio * falling).inverse();
    if (e.degree() != j) throw ConsistencyError("moment polynomial has the wrong degree");
    moment_polys.push_back(e);

    const GammaRatioConstant raw = sphere_power_constant(n, k).scaled(falling);
    identity.rows.push_back({j, base, UniPoly{}, d.restricted, raw});
  }

  // Back-substitution: v^j = sum_i c_i E[i](v)  =>  density_j(u) = sum_i c_i u^i.
  for (int j = 0; j <= rows; ++j) {
    UniPoly target = UniPoly::monomial(Rational(1), j);
    std::vector<Rational> coeffs(static_cast<std::size_t>(j) + 1);
    for (int i = j; i >= 0; --i) {
      const Rational c = target.coeff(i) / moment_polys[static_cast<std::size_t>(i)].leading();
      coeffs[static_cast<std::size_t>(i)] = c;
      target -= moment_polys[static_cast<std::size_t>(i)] * c;
    }
    if (!target.is_zero()) throw ConsistencyError("triangular solve left a remainder");
    identity.rows[static_cast<std::size_t>(j)].density = UniPoly(std::move(coeffs));
  }
  return identity;
}

std::vector<FormCheck> reference_form_checks(const MomentIdentity& identity) {
  std::vector<FormCheck> checks;
  const Rational n(identity.n);
  const Rational& q = identity.q;
  const auto& rows = identity.rows;
  if (!rows.empty()) {
    const UniPoly expected = UniPoly::constant(Rational(1));
    checks.push_back({"x_n^0 row: constant density 1", expected.str("u"), rows[0].density.str("u"),
                      rows[0].density == expected});
  }
  if (rows.size() > 1) {
    const UniPoly expected{-q.inverse(), (n + q) / q};
    checks.push_back({"x_n^2 row: ((n+q)/q) u - 1/q", expected.str("u"), rows[1].density.str("u"),
                      rows[1].density == expected});
  }
  if (rows.size() > 2 && q == Rational(1)) {
    const UniPoly expected{Rational(-3), Rational(6) * (n + Rational(1)),
                           -(n + Rational(3)) * (n + Rational(1))};
    checks.push_back({"x_n^4 row at q=1: -(n+3)(n+1) u^2 + 6(n+1) u - 3", expected.str("u"),
                      rows[2].density.str("u"), rows[2].density == expected});

    // Quartic raw relation scaled to 3 + 6v - v^2, whose constant is
    // often displayed as 4*Gamma((n+5)/2) with no pi factor.
    const MomentRow& row = rows[2];
    const Rational scale = Rational(3) / row.raw_derivative.coeff(0);
    const GammaRatioConstant derived = row.raw_constant.scaled(scale).normalized();
    const GammaRatioConstant displayed =
        GammaRatioConstant(Rational(4), (n + Rational(5)) / Rational(2), Rational(1), Rational(0)).normalized();
    checks.push_back({"quartic raw relation constant for 3 + 6v - v^2 (displayed as 4*Gamma((n+5)/2))",
                      displayed.str(), derived.str(), derived == displayed});
  }
  return checks;
}

std::shared_ptr<const MomentIdentity> MomentIdentityCache::get(int n, const Rational& q, int max_power) {
  const std::string key = std::to_string(n) + "|" + q.str() + "|" + std::to_string(max_power);
  {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  auto derived = std::make_shared<const MomentIdentity>(derive_moment_identity(n, q, max_power));
  std::lock_guard lock(mutex_);
  return entries_.try_emplace(key, std::move(derived)).first->second;
}

std::size_t MomentIdentityCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

MomentIdentityCache& shared_identity_cache() {
  static MomentIdentityCache cache;
  return cache;
}

}  // namespace lqembed::moments
