#include "lqembed/exact/algebraic.hpp"

#include <cmath>
#include <sstream>

#include "lqembed/errors.hpp"

namespace lqembed::exact {

namespace {

mpz_class pow10(unsigned e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

Rational pow10_rational(long e) {
  return e >= 0 ? Rational(pow10(static_cast<unsigned>(e))) : Rational(mpz_class(1), pow10(static_cast<unsigned>(-e)));
}

// Round-half-even of a non-negative rational to an integer.
mpz_class round_half_even(const Rational& x) {
  const mpz_class fl = x.floor();
  const Rational frac = x - Rational(fl);
  const Rational half(1, 2);
  if (frac < half) return fl;
  if (frac > half) return fl + 1;
  return mpz_odd_p(fl.get_mpz_t()) ? mpz_class(fl + 1) : fl;
}

// Digits and decimal exponent of |r| rounded to `sig` significant digits.
std::pair<std::string, long> significant_digits(const Rational& r, int sig) {
  const Rational v = r.abs();
  long e = static_cast<long>(std::floor(std::log10(v.to_double())));
  while (pow10_rational(e) > v) --e;
  while (pow10_rational(e + 1) <= v) ++e;
  mpz_class n = round_half_even(v * pow10_rational(sig - 1 - e));
  if (n == pow10(static_cast<unsigned>(sig))) {
    n /= 10;
    ++e;
  }
  return {n.get_str(), e};
}

std::string format_digits(const std::string& digits, long e, bool negative) {
  std::string out = negative ? "-" : "";
  const long sig = static_cast<long>(digits.size());
  if (e >= -6 && e < sig) {
    if (e >= 0) {
      out += digits.substr(0, static_cast<std::size_t>(e + 1));
      if (e + 1 < sig) out += "." + digits.substr(static_cast<std::size_t>(e + 1));
    } else {
      out += "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + digits;
    }
    return out;
  }
  out += digits.substr(0, 1);
  if (sig > 1) out += "." + digits.substr(1);
  std::ostringstream os;
  os << (e < 0 ? "e-" : "e+") << (std::abs(e) < 10 ? "0" : "") << std::abs(e);
  return out + os.str();
}

mpz_class isqrt(const mpz_class& x) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

}  // namespace

// ---- QuadraticSurd ----------------------------------------------------------

QuadraticSurd make_surd(const Rational& a, const Rational& b, const mpz_class& radicand) {
  if (radicand < 0) throw DomainError("square root of a negative number");
  mpz_class d = radicand;
  mpz_class f = 1;
  if (mpz_perfect_square_p(d.get_mpz_t())) {
    return {a + b * Rational(isqrt(d)), Rational(0), mpz_class(1)};
  }
  for (unsigned long p = 2; p <= 1000000UL; ++p) {
    const mpz_class pp = mpz_class(p) * p;
    if (pp > d) break;
    while (mpz_divisible_p(d.get_mpz_t(), pp.get_mpz_t())) {
      d /= pp;
      f *= p;
    }
  }
  if (mpz_perfect_square_p(d.get_mpz_t())) {
    return {a + b * Rational(mpz_class(f * isqrt(d))), Rational(0), mpz_class(1)};
  }
  return {a, b * Rational(f), d};
}

double QuadraticSurd::to_double() const { return a.to_double() + b.to_double() * std::sqrt(d.get_d()); }

std::string QuadraticSurd::str() const {
  if (b.is_zero() || d == 1) return (a + b).str();
  mpz_class den;
  mpz_lcm(den.get_mpz_t(), a.raw().get_den_mpz_t(), b.raw().get_den_mpz_t());
  const mpz_class an = (a * Rational(den)).numerator();
  const mpz_class bn = (b * Rational(den)).numerator();
  std::string root = "sqrt(" + d.get_str() + ")";
  std::string bpart;
  const mpz_class babs = abs(bn);
  bpart = (babs == 1 ? "" : babs.get_str() + "*") + root;
  std::string body;
  if (an == 0) {
    body = (bn < 0 ? "-" : "") + bpart;
  } else {
    body = an.get_str() + (bn < 0 ? " - " : " + ") + bpart;
  }
  if (den == 1) return body;
  return "(" + body + ")/" + den.get_str();
}

int compare(const QuadraticSurd& s, const Rational& r) {
  // sign(a + b*sqrt(d) - r) = sign(b*sqrt(d) - t) with t = r - a.
  const Rational t = r - s.a;
  if (s.b.is_zero()) return -t.sign();
  const Rational lhs_sq = s.b * s.b * Rational(s.d);
  const Rational rhs_sq = t * t;
  if (s.b.sign() > 0) {
    if (t.sign() < 0) return 1;
    return lhs_sq > rhs_sq ? 1 : (lhs_sq == rhs_sq ? 0 : -1);
  }
  if (t.sign() > 0) return -1;
  return lhs_sq > rhs_sq ? -1 : (lhs_sq == rhs_sq ? 0 : 1);
}

// ---- AlgebraicNumber --------------------------------------------------------

AlgebraicNumber::AlgebraicNumber(const Rational& r)
    : poly_(UniPoly::linear_root(r).primitive()), lo_(r), hi_(r) {}

AlgebraicNumber::AlgebraicNumber(UniPoly poly, Rational lo, Rational hi)
    : poly_(std::move(poly)), lo_(std::move(lo)), hi_(std::move(hi)) {}

AlgebraicNumber AlgebraicNumber::from_isolating_interval(const UniPoly& poly, const Rational& lo,
                                                         const Rational& hi) {
  if (poly.is_zero()) throw DomainError("algebraic number with zero defining polynomial");
  if (hi < lo) return from_isolating_interval(poly, hi, lo);
  UniPoly s = squarefree_part(poly);
  if (lo == hi) {
    if (!s(lo).is_zero()) throw ConsistencyError("degenerate isolating interval is not a root");
    return AlgebraicNumber(lo);
  }
  const SturmSequence sturm(s);
  const int inside = sturm.count_roots(lo, hi) + (s(lo).is_zero() ? 1 : 0);
  if (inside != 1) throw ConsistencyError("isolating interval holds " + std::to_string(inside) + " roots");
  if (s(lo).is_zero()) return AlgebraicNumber(lo);
  if (s(hi).is_zero()) return AlgebraicNumber(hi);
  if (s.degree() == 1) return AlgebraicNumber(-s.coeff(0) / s.coeff(1));

  // Any rational root has a denominator dividing the leading coefficient L,
  // and two such rationals are at least 1/L^2 apart: once the interval is
  // narrower than that, the simplest rational inside is the only candidate.
  const Rational lead = s.leading().abs();
  RootInterval r = refine(s, {lo, hi}, (lead * lead * Rational(2)).inverse());
  if (r.exact()) return AlgebraicNumber(r.lo);
  const Rational candidate = simplest_between(r.lo, r.hi);
  if (s(candidate).is_zero()) return AlgebraicNumber(candidate);
  if (s.leading().sign() < 0) s = -s;
  return AlgebraicNumber(std::move(s), lo, hi);
}

std::optional<Rational> AlgebraicNumber::rational() const {
  if (is_rational()) return lo_;
  return std::nullopt;
}

AlgebraicNumber AlgebraicNumber::refined(const Rational& width) const {
  if (is_rational()) return *this;
  const RootInterval r = refine(poly_, {lo_, hi_}, width);
  if (r.exact()) return AlgebraicNumber(r.lo);
  return AlgebraicNumber(poly_, r.lo, r.hi);
}

double AlgebraicNumber::to_double() const {
  if (is_rational()) return lo_.to_double();
  const AlgebraicNumber fine = refined(Rational(1, 1L << 62) / Rational(1L << 20));
  return midpoint(fine.lo_, fine.hi_).to_double();
}

std::optional<QuadraticSurd> AlgebraicNumber::closed_form() const {
  if (is_rational()) return QuadraticSurd{lo_, Rational(0), mpz_class(1)};
  if (poly_.degree() != 2) return std::nullopt;
  const Rational& A = poly_.coeff(2);
  const Rational& B = poly_.coeff(1);
  const Rational& C = poly_.coeff(0);
  const Rational disc = B * B - Rational(4) * A * C;
  const Rational centre = -B / (Rational(2) * A);
  const int side = compare(*this, centre);
  // roots = centre +/- sqrt(disc) / (2|A|); disc is an integer here.
  const Rational scale = Rational(side) / (Rational(2) * A.abs());
  return make_surd(centre, scale, disc.numerator());
}

std::string AlgebraicNumber::str() const {
  if (auto cf = closed_form()) return cf->str();
  return "root of " + poly_.str("x") + " in [" + lo_.str() + ", " + hi_.str() + "]";
}

int compare(const AlgebraicNumber& x, const Rational& r) {
  if (x.is_rational()) return (x.lo() <=> r) < 0 ? -1 : (x.lo() == r ? 0 : 1);
  if (r <= x.lo()) return 1;  // endpoints are never roots
  if (r >= x.hi()) return -1;
  if (x.defining_poly()(r).is_zero()) return 0;
  // Exactly one sign change in (lo, hi): the root lies above r iff p keeps
  // the sign it has at lo up to r.
  const UniPoly& p = x.defining_poly();
  return p(r).sign() == p(x.lo()).sign() ? 1 : -1;
}

int sign_at(const UniPoly& h, const AlgebraicNumber& x) {
  if (x.is_rational()) return h(x.lo()).sign();
  if (h.is_zero()) return 0;
  const UniPoly g = gcd(h, x.defining_poly());
  if (g.degree() > 0) {
    const SturmSequence sg(g);
    if (sg.count_roots(x.lo(), x.hi()) == 1) return 0;
  }
  // h has no root at x; shrink until h has no root in the interval.
  const UniPoly hs = squarefree_part(h);
  const SturmSequence sh(hs);
  AlgebraicNumber y = x;
  while (sh.count_roots(y.lo(), y.hi()) > 0 || hs(y.lo()).is_zero()) {
    y = y.refined((y.hi() - y.lo()) / Rational(4));
    if (y.is_rational()) return h(y.lo()).sign();
  }
  return h(y.lo()).sign();
}

int compare(const AlgebraicNumber& x, const AlgebraicNumber& y) {
  if (x.is_rational()) return -compare(y, x.lo());
  if (y.is_rational()) return compare(x, y.lo());
  AlgebraicNumber a = x;
  AlgebraicNumber b = y;
  // Equal iff the gcd of the defining polynomials has a root in the overlap.
  for (int round = 0;; ++round) {
    if (a.hi() <= b.lo()) return -1;
    if (b.hi() <= a.lo()) return 1;
    if (round == 0 || round % 8 == 7) {
      const UniPoly g = gcd(a.defining_poly(), b.defining_poly());
      if (g.degree() > 0) {
        const Rational lo = std::max(a.lo(), b.lo());
        const Rational hi = std::min(a.hi(), b.hi());
        const UniPoly gs = squarefree_part(g);
        const int common = SturmSequence(gs).count_roots(lo, hi) + (gs(lo).is_zero() ? 1 : 0);
        if (common > 0) return 0;
      }
    }
    a = a.refined((a.hi() - a.lo()) / Rational(16));
    b = b.refined((b.hi() - b.lo()) / Rational(16));
    if (a.is_rational()) return -compare(b, a.lo());
    if (b.is_rational()) return compare(a, b.lo());
  }
}

std::vector<AlgebraicNumber> real_roots(const UniPoly& p) {
  std::vector<AlgebraicNumber> out;
  const UniPoly s = squarefree_part(p);
  const auto intervals = isolate_roots(s);
  std::vector<std::optional<AlgebraicNumber>> found;
  UniPoly reduced = s;
  for (const auto& r : intervals) {
    AlgebraicNumber x = AlgebraicNumber::from_isolating_interval(s, r.lo, r.hi);
    if (x.is_rational()) reduced = divmod(reduced, UniPoly::linear_root(x.lo())).first;
    found.emplace_back(std::move(x));
  }
  reduced = reduced.primitive();
  if (reduced.leading().sign() < 0) reduced = -reduced;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (found[i]->is_rational() || reduced.degree() == s.degree()) {
      out.push_back(*found[i]);
    } else {
      out.push_back(AlgebraicNumber::from_isolating_interval(reduced, intervals[i].lo, intervals[i].hi));
    }
  }
  return out;
}

AlgebraicNumber to_algebraic(const QuadraticSurd& s) {
  if (s.b.is_zero() || s.d == 1) return AlgebraicNumber(s.a + s.b);
  const UniPoly poly{s.a * s.a - s.b * s.b * Rational(mpz_class(s.d), mpz_class(1)), Rational(-2) * s.a, Rational(1)};
  const auto roots = real_roots(poly);
  return s.b.sign() > 0 ? roots.back() : roots.front();
}

AlgebraicNumber solve_quadratic_positive_root(const UniPoly& p) {
  if (p.degree() < 1 || p.degree() > 2) throw InvalidInput("expected a polynomial of degree 1 or 2");
  for (const AlgebraicNumber& r : real_roots(p)) {
    if (compare(r, Rational(0)) > 0) return r;
  }
  throw DomainError("no positive real root of " + p.str("x"));
}

std::string to_decimal(const Rational& r, int significant) {
  if (r.is_zero()) {
    return significant > 1 ? "0." + std::string(static_cast<std::size_t>(significant - 1), '0') : "0";
  }
  const auto [digits, e] = significant_digits(r, significant);
  return format_digits(digits, e, r.sign() < 0);
}

std::string to_decimal(const AlgebraicNumber& x, int significant) {
  if (x.is_rational()) return to_decimal(x.lo(), significant);
  AlgebraicNumber y = x;
  for (int i = 0; i < 400; ++i) {
    if (y.lo().sign() == y.hi().sign() && !y.lo().is_zero()) {
      const std::string lo = to_decimal(y.lo(), significant);
      if (lo == to_decimal(y.hi(), significant)) return lo;
    }
    y = y.refined((y.hi() - y.lo()) / Rational(1L << 20));
    if (y.is_rational()) return to_decimal(y.lo(), significant);
  }
  throw ConsistencyError("decimal rendering did not stabilise");
}

}  // namespace lqembed::exact
