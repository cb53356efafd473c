#include "lqembed/exact/bipoly.hpp"

#include <algorithm>

#include "lqembed/errors.hpp"

namespace lqembed::exact {

BivariatePoly BivariatePoly::constant(const Rational& c) {
  BivariatePoly p;
  p.add_term(0, 0, c);
  return p;
}

BivariatePoly BivariatePoly::in_u(const UniPoly& q) {
  BivariatePoly p;
  for (int i = 0; i <= q.degree(); ++i) p.add_term(i, 0, q.coeff(i));
  return p;
}

BivariatePoly BivariatePoly::in_lambda(const UniPoly& q) {
  BivariatePoly p;
  for (int i = 0; i <= q.degree(); ++i) p.add_term(0, i, q.coeff(i));
  return p;
}

BivariatePoly BivariatePoly::from_u_coefficients(const std::vector<UniPoly>& coefficients) {
  BivariatePoly p;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    const UniPoly& c = coefficients[i];
    for (int j = 0; j <= c.degree(); ++j) p.add_term(static_cast<int>(i), j, c.coeff(j));
  }
  return p;
}

void BivariatePoly::add_term(int u_degree, int lambda_degree, const Rational& c) {
  if (c.is_zero()) return;
  const Key key{u_degree, lambda_degree};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

int BivariatePoly::degree_u() const {
  int d = -1;
  for (const auto& [key, c] : terms_) d = std::max(d, key.first);
  return d;
}

int BivariatePoly::degree_lambda() const {
  int d = -1;
  for (const auto& [key, c] : terms_) d = std::max(d, key.second);
  return d;
}

Rational BivariatePoly::operator()(const Rational& u, const Rational& lambda) const {
  Rational acc(0);
  for (const auto& [key, c] : terms_) {
    acc += c * u.pow(static_cast<unsigned>(key.first)) * lambda.pow(static_cast<unsigned>(key.second));
  }
  return acc;
}

UniPoly BivariatePoly::at_lambda(const Rational& lambda) const {
  std::vector<Rational> coeffs(static_cast<std::size_t>(std::max(degree_u(), 0)) + 1);
  for (const auto& [key, c] : terms_) {
    coeffs[static_cast<std::size_t>(key.first)] += c * lambda.pow(static_cast<unsigned>(key.second));
  }
  return UniPoly(std::move(coeffs));
}

UniPoly BivariatePoly::at_u(const Rational& u) const {
  std::vector<Rational> coeffs(static_cast<std::size_t>(std::max(degree_lambda(), 0)) + 1);
  for (const auto& [key, c] : terms_) {
    coeffs[static_cast<std::size_t>(key.second)] += c * u.pow(static_cast<unsigned>(key.first));
  }
  return UniPoly(std::move(coeffs));
}

UniPoly BivariatePoly::coefficient_in_u(int i) const {
  std::vector<Rational> coeffs(static_cast<std::size_t>(std::max(degree_lambda(), 0)) + 1);
  for (const auto& [key, c] : terms_) {
    if (key.first == i) coeffs[static_cast<std::size_t>(key.second)] += c;
  }
  return UniPoly(std::move(coeffs));
}

BivariatePoly BivariatePoly::derivative_u() const {
  BivariatePoly d;
  for (const auto& [key, c] : terms_) {
    if (key.first > 0) d.add_term(key.first - 1, key.second, c * Rational(key.first));
  }
  return d;
}

BivariatePoly& BivariatePoly::operator+=(const BivariatePoly& rhs) {
  for (const auto& [key, c] : rhs.terms_) add_term(key.first, key.second, c);
  return *this;
}

BivariatePoly& BivariatePoly::operator*=(const BivariatePoly& rhs) {
  BivariatePoly out;
  for (const auto& [ka, ca] : terms_) {
    for (const auto& [kb, cb] : rhs.terms_) out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
  }
  *this = std::move(out);
  return *this;
}

BivariatePoly& BivariatePoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, v] : terms_) v *= c;
  return *this;
}

BivariatePoly BivariatePoly::pow(unsigned exponent) const {
  BivariatePoly result = constant(Rational(1));
  for (unsigned i = 0; i < exponent; ++i) result *= *this;
  return result;
}

std::string BivariatePoly::str(const std::string& u, const std::string& lambda) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (int i = degree_u(); i >= 0; --i) {
    const UniPoly c = coefficient_in_u(i);
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + c.str(lambda) + ")";
    if (i > 0) out += "*" + u + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return out;
}

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    const Rational inv = m[col][col].inverse();
    for (std::size_t row = col + 1; row < n; ++row) {
      if (m[row][col].is_zero()) continue;
      const Rational factor = m[row][col] * inv;
      for (std::size_t k = col; k < n; ++k) m[row][k] -= factor * m[col][k];
    }
  }
  return det;
}

namespace {

// Sylvester matrix of two univariate polynomials with formal degrees da, db.
std::vector<std::vector<Rational>> sylvester(const UniPoly& a, int da, const UniPoly& b, int db) {
  const auto size = static_cast<std::size_t>(da + db);
  std::vector<std::vector<Rational>> m(size, std::vector<Rational>(size));
  for (int row = 0; row < db; ++row) {
    for (int i = 0; i <= da; ++i) m[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + i)] = a.coeff(da - i);
  }
  for (int row = 0; row < da; ++row) {
    for (int i = 0; i <= db; ++i) {
      m[static_cast<std::size_t>(db + row)][static_cast<std::size_t>(row + i)] = b.coeff(db - i);
    }
  }
  return m;
}

}  // namespace

UniPoly resultant_in_u(const BivariatePoly& a, const BivariatePoly& b) {
  const int da = a.degree_u();
  const int db = b.degree_u();
  if (da < 0 || db < 0) return {};
  if (da == 0 && db == 0) return UniPoly::constant(Rational(1));
  if (da == 0) return a.coefficient_in_u(0).pow(static_cast<unsigned>(db));
  if (db == 0) return b.coefficient_in_u(0).pow(static_cast<unsigned>(da));

  const int bound = da * std::max(b.degree_lambda(), 0) + db * std::max(a.degree_lambda(), 0);
  std::vector<Rational> xs;
  std::vector<Rational> ys;
  for (int i = 0; i <= bound; ++i) {
    const Rational lam(i);
    xs.push_back(lam);
    ys.push_back(determinant(sylvester(a.at_lambda(lam), da, b.at_lambda(lam), db)));
  }
  // Newton divided differences.
  std::vector<Rational> dd = ys;
  for (std::size_t level = 1; level < dd.size(); ++level) {
    for (std::size_t i = dd.size() - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
    }
  }
  UniPoly result;
  for (std::size_t i = dd.size(); i-- > 0;) {
    result *= UniPoly::linear_root(xs[i]);
    result += UniPoly::constant(dd[i]);
  }
  return result;
}

}  // namespace lqembed::exact
