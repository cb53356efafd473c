#include <doctest.h>

#include <cmath>

#include "lqembed/errors.hpp"
#include "lqembed/norm_family.hpp"
#include "lqembed/numeric_validation.hpp"
#include "support.hpp"

using namespace lqembed::norms;
using lqembed::exact::BivariatePoly;
using lqembed::exact::Rational;
using lqembed::exact::UniPoly;

namespace {

// Rational point on the unit sphere in R^3 by inverse stereographic projection.
std::vector<Rational> sphere_point(const Rational& a, const Rational& b) {
  const Rational d = a * a + b * b + Rational(1);
  return {Rational(2) * a / d, Rational(2) * b / d, (a * a + b * b - Rational(1)) / d};
}

std::vector<double> to_double(const std::vector<Rational>& v) {
  std::vector<double> out;
  for (const auto& c : v) out.push_back(c.to_double());
  return out;
}

double planar(const PerturbedNormFamily& f, double lambda, double x, double y) {
  const double r2 = x * x + y * y;
  const double u = y * y / r2;
  double p = 0.0;
  const auto c = f.profile.to_double();
  for (auto it = c.rbegin(); it != c.rend(); ++it) p = p * u + *it;
  return std::sqrt(r2) * std::pow(1.0 + lambda * p, f.s);
}

}  // namespace

TEST_SUITE("norm_family") {
  TEST_CASE("evaluation at poles and equator") {
    const auto f = PerturbedNormFamily::standard(3, 2);
    const std::vector<double> e3{0, 0, 1};
    const std::vector<double> e1{1, 0, 0};
    CHECK(evaluate(f, Rational(1, 14), e3) == doctest::Approx(36.0 / 49.0).epsilon(1e-15));
    CHECK(evaluate(f, Rational(1, 14), e1) == doctest::Approx(225.0 / 196.0).epsilon(1e-15));
    CHECK(profile_power(f, Rational(1, 14), Rational(1)) == Rational(36, 49));
    CHECK(profile_power(f, Rational(1, 14), Rational(0)) == Rational(225, 196));
    const std::vector<double> x{3, -4, 12};
    CHECK(evaluate(f, Rational(0), x) == doctest::Approx(13.0));
    const std::vector<double> zero{0, 0, 0};
    CHECK(evaluate(f, Rational(1, 14), zero) == 0.0);
  }

  TEST_CASE("vanishing profile is rejected") {
    const auto f = PerturbedNormFamily::standard(3, 2);
    CHECK_THROWS_AS(PerturbedNorm(f, Rational(1, 2)), lqembed::InvalidInput);
    CHECK_THROWS_AS(PerturbedNorm(f, Rational(-1)), lqembed::InvalidInput);
    CHECK_NOTHROW(PerturbedNorm(f, Rational(49, 100)));
    CHECK(profile_nonpositive_point(f, Rational(1, 2)) == Rational(1));
    CHECK_THROWS_AS(PerturbedNormFamily::standard(1, 2), lqembed::InvalidInput);
  }

  TEST_CASE("homogeneity") {
    std::mt19937_64 rng(7);
    for (int s : {2, 4}) {
      const auto f = PerturbedNormFamily::standard(3, s);
      for (int i = 0; i < 50; ++i) {
        const Rational lambda = testsupport::random_rational(rng, 0, 1, 40) * Rational(1, 12);
        std::vector<Rational> x{testsupport::random_rational(rng, -5, 5), testsupport::random_rational(rng, -5, 5),
                                testsupport::random_rational(rng, -5, 5) + Rational(1, 3)};
        Rational c = testsupport::random_rational(rng, -4, 4);
        if (c.is_zero()) c = Rational(2, 3);
        std::vector<Rational> cx;
        for (const auto& v : x) cx.push_back(c * v);
        auto u = [](const std::vector<Rational>& v) {
          return v[2] * v[2] / (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        };
        // N(cx) / N(x) = |cx| / |x| exactly because the profile factor is scale free.
        CHECK(profile_power(f, lambda, u(cx)) == profile_power(f, lambda, u(x)));
        const double lhs = evaluate(f, lambda, to_double(cx));
        const double rhs = std::abs(c.to_double()) * evaluate(f, lambda, to_double(x));
        CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
      }
    }
  }

  TEST_CASE("expansion of N^q on the sphere") {
    const auto f2 = PerturbedNormFamily::standard(3, 2);
    BivariatePoly half = BivariatePoly::constant(Rational(1));
    half.add_term(0, 1, Rational(1));
    half.add_term(1, 1, Rational(-3));
    CHECK(expand_power(f2, Rational(1, 2)) == half);
    BivariatePoly one = BivariatePoly::constant(Rational(1));
    one.add_term(0, 1, Rational(2));
    one.add_term(1, 1, Rational(-6));
    one.add_term(0, 2, Rational(1));
    one.add_term(1, 2, Rational(-6));
    one.add_term(2, 2, Rational(9));
    CHECK(expand_power(f2, Rational(1)) == one);
    CHECK(expand_power(PerturbedNormFamily::standard(3, 4), Rational(1, 4)) == half);
    CHECK_THROWS_AS(expand_power(f2, Rational(1, 4)), lqembed::UnsupportedExponent);
    CHECK_THROWS_AS(expand_power(f2, Rational(3, 4)), lqembed::UnsupportedExponent);
  }

  TEST_CASE("expansion agrees with evaluation at sphere points") {
    std::mt19937_64 rng(13);
    for (int s : {2, 4}) {
      const auto f = PerturbedNormFamily::standard(3, s);
      for (const Rational q : {Rational(1, 2), Rational(1)}) {
        const BivariatePoly e = expand_power(f, q);
        const Rational lambda(1, 30);
        const long sq = (Rational(s) * q).numerator().get_si();
        for (int i = 0; i < 100; ++i) {
          const auto x = sphere_point(testsupport::random_rational(rng, -3, 3), testsupport::random_rational(rng, -3, 3));
          const Rational u = x[2] * x[2];
          CHECK((Rational(1) + lambda * f.profile(u)).pow(static_cast<unsigned>(sq)) == e(u, lambda));
          const double numeric = std::pow(evaluate(f, lambda, to_double(x)), q.to_double());
          CHECK(std::abs(numeric - e(u, lambda).to_double()) <= 1e-12 * numeric);
        }
      }
    }
  }

  TEST_CASE("tangential form for s = 2") {
    const auto h = hessian_tangential_form(PerturbedNormFamily::standard(3, 2));
    CHECK(h.radial_power == 7);
    REQUIRE(h.coefficients.size() == 3);
    CHECK(h.coefficients[0] == UniPoly{Rational(1), Rational(-10), Rational(-11)});
    CHECK(h.coefficients[1] == UniPoly{Rational(2), Rational(-2), Rational(104)});
    CHECK(h.coefficients[2] == UniPoly{Rational(1), Rational(8), Rational(-20)});
  }

  TEST_CASE("Euclidean slice gives binomial coefficients") {
    for (int s : {1, 2, 3, 4}) {
      const auto h = hessian_tangential_form(PerturbedNormFamily::standard(3, s));
      const int d = static_cast<int>(h.coefficients.size()) - 1;
      CHECK(d == s);
      Rational binom(1);
      for (int k = 0; k <= d; ++k) {
        CHECK(h.coefficients[static_cast<std::size_t>(k)](Rational(0)) == binom);
        binom = binom * Rational(d - k) / Rational(k + 1);
      }
    }
  }

  TEST_CASE("factorisation reassembles the Hessian form exactly") {
    std::mt19937_64 rng(19);
    for (int s : {2, 4}) {
      const auto h = hessian_tangential_form(PerturbedNormFamily::standard(3, s));
      for (int i = 0; i < 40; ++i) {
        const Rational a = testsupport::random_rational(rng, -3, 3);
        const Rational b = testsupport::random_rational(rng, -3, 3);
        const Rational x = testsupport::random_rational(rng, -3, 3);
        const Rational y = testsupport::random_rational(rng, -3, 3);
        const Rational l = testsupport::random_rational(rng, -1, 1);
        const Rational form = a * a * h.hxx(x, y, l) + Rational(2) * a * b * h.hxy(x, y, l) + b * b * h.hyy(x, y, l);
        const Rational t = a * y - b * x;
        CHECK(form == t * t * h.factor(x, y, l));
      }
    }
  }

  TEST_CASE("factor matches a finite-difference Hessian") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> angle(0.05, 1.5);
    for (int s : {2, 4}) {
      const auto f = PerturbedNormFamily::standard(3, s);
      const auto h = hessian_tangential_form(f);
      for (int i = 0; i < 20; ++i) {
        const double th = angle(rng);
        const double x = std::cos(th);
        const double y = std::sin(th);
        const double l = 0.03;
        const double e = 1e-4;
        auto g = [&](double a, double b) { return planar(f, l, a, b); };
        const double gyy = (g(x, y + e) - 2 * g(x, y) + g(x, y - e)) / (e * e);
        // On the unit circle R = 1, so g_yy = x^2 P.
        const double t = y * y;
        const double p = h.quadrant_poly(Rational(static_cast<long>(std::llround(t * 1e9)), 1000000000L),
                                         Rational(3, 100)).to_double();
        CHECK(gyy == doctest::Approx(x * x * p).epsilon(1e-5));
      }
    }
  }

  TEST_CASE("convexity intervals") {
    const auto c2 = convexity_interval(PerturbedNormFamily::standard(3, 2));
    REQUIRE(c2.lower);
    REQUIRE(c2.upper);
    CHECK(c2.lower->value == Rational(-1, 10));
    CHECK(c2.upper->value == Rational(1, 11));
    CHECK(convexity_interval(PerturbedNormFamily::standard(7, 2)).upper->value == Rational(1, 11));
    const auto c4 = convexity_interval(PerturbedNormFamily::standard(3, 4));
    REQUIRE(c4.upper);
    CHECK(c4.upper->value == Rational(1, 23));
    PerturbedNormFamily flat;
    flat.profile = UniPoly{};
    CHECK(convexity_interval(flat).entire_line());
    CHECK(c2.reduction_note.find("asserted") != std::string::npos);
  }

  TEST_CASE("certificate: non-negative inside, witness outside") {
    std::mt19937_64 rng(37);
    const auto c = convexity_interval(PerturbedNormFamily::standard(3, 2));
    for (int i = 0; i < 40; ++i) {
      const Rational l = testsupport::random_rational(rng, -1, 1, 200) * Rational(1, 5);
      const UniPoly slice = c.hessian.quadrant_poly.at_lambda(l);
      const auto d = lqembed::exact::sturm_nonneg(slice, Rational(0), Rational(1));
      CHECK(d.holds == c.contains(l));
      if (!d.holds) CHECK(slice(*d.witness).sign() < 0);
    }
  }

  TEST_CASE("norm decisions") {
    const auto f = PerturbedNormFamily::standard(3, 2);
    CHECK(is_norm(f, Rational(1, 14)).is_norm);
    CHECK(is_norm(f, Rational(1, 11)).is_norm);
    CHECK(is_norm(f, Rational(0)).is_norm);
    const auto no = is_norm(f, Rational(1, 10));
    CHECK_FALSE(no.is_norm);
    REQUIRE(no.direction_witness);
    const auto cert = convexity_interval(f);
    CHECK(cert.hessian.quadrant_poly(*no.direction_witness, Rational(1, 10)).sign() < 0);
    const auto bad_profile = is_norm(f, Rational(1, 2));
    CHECK_FALSE(bad_profile.profile_positive);
  }

  TEST_CASE("midpoint convexity inside the certified interval") {
    std::mt19937_64 rng(43);
    const auto f = PerturbedNormFamily::standard(3, 2);
    for (int i = 0; i < 20; ++i) {
      const Rational l = Rational(-1, 10) + testsupport::random_rational(rng, 0, 1, 500) * Rational(21, 110);
      const auto r = lqembed::numeric::finite_difference_convexity(f, l, 10000, 100 + static_cast<unsigned>(i));
      CHECK(r.pass);
      CHECK_FALSE(r.informational);
    }
    for (const Rational l : {Rational(1, 11) + Rational(1, 1000), Rational(-1, 10) - Rational(1, 1000)}) {
      const auto r = lqembed::numeric::finite_difference_convexity(f, l, 30, 1);
      CHECK(r.name.find("directed") != std::string::npos);
      CHECK(r.pass);
    }
  }
}
