#include <doctest.h>

#include <cmath>

#include "lqembed/errors.hpp"
#include "lqembed/exact/algebraic.hpp"
#include "support.hpp"

using lqembed::exact::AlgebraicNumber;
using lqembed::exact::compare;
using lqembed::exact::Rational;
using lqembed::exact::UniPoly;
using lqembed::exact::solve_quadratic_positive_root;

TEST_SUITE("algebraic") {
  TEST_CASE("smallest positive root of the L_1 boundary condition") {
    // 1 + (2 - 6n) lambda + (1 + 12n - 9n^2) lambda^2
    auto condition = [](long n) {
      return UniPoly{Rational(1), Rational(2 - 6 * n), Rational(1 + 12 * n - 9 * n * n)};
    };
    const AlgebraicNumber a2 = solve_quadratic_positive_root(condition(2));
    REQUIRE(a2.is_rational());
    CHECK(*a2.rational() == Rational(1, 11));

    const AlgebraicNumber a3 = solve_quadratic_positive_root(condition(3));
    CHECK_FALSE(a3.is_rational());
    CHECK(a3.str() == "(-4 + 3*sqrt(3))/22");
    CHECK(a3.to_double() == doctest::Approx((3 * std::sqrt(3.0) - 4) / 22).epsilon(1e-15));
    CHECK(lqembed::exact::to_decimal(a3) == "0.0543705646685");

    const AlgebraicNumber unit = solve_quadratic_positive_root(UniPoly{Rational(-1), Rational(0), Rational(1)});
    CHECK(*unit.rational() == Rational(1));
    CHECK_THROWS_AS(solve_quadratic_positive_root(UniPoly{Rational(1), Rational(0), Rational(1)}),
                    lqembed::DomainError);
  }

  TEST_CASE("bisection oracle for the n = 3 root") {
    const UniPoly p{Rational(1), Rational(-16), Rational(-44)};
    double lo = 0.0;
    double hi = 0.1;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (p.eval(mid) > 0 ? lo : hi) = mid;
    }
    CHECK(solve_quadratic_positive_root(p).to_double() == doctest::Approx(lo).epsilon(1e-14));
  }

  TEST_CASE("exact comparisons") {
    const AlgebraicNumber a3 = solve_quadratic_positive_root(UniPoly{Rational(1), Rational(-16), Rational(-44)});
    CHECK(compare(a3, Rational(1, 16)) < 0);
    CHECK(compare(a3, Rational(1, 19)) > 0);
    CHECK(a3 < AlgebraicNumber(Rational(1, 14)));
    const auto surd = lqembed::exact::make_surd(Rational(-4, 22), Rational(3, 22), mpz_class(27));
    CHECK(surd.str() == "(-4 + 9*sqrt(3))/22");
    CHECK(lqembed::exact::to_algebraic(lqembed::exact::make_surd(Rational(-4, 22), Rational(1, 22), mpz_class(27))) ==
          a3);
    CHECK(compare(surd, Rational(1)) < 0);
  }

  TEST_CASE("rational roots are recognised") {
    // (7x - 3)(x^2 - 2)
    const UniPoly p = UniPoly{Rational(-3), Rational(7)} * UniPoly{Rational(-2), Rational(0), Rational(1)};
    const auto roots = lqembed::exact::real_roots(p);
    REQUIRE(roots.size() == 3);
    CHECK(roots[1].is_rational());
    CHECK(*roots[1].rational() == Rational(3, 7));
    CHECK_FALSE(roots[0].is_rational());
    REQUIRE(roots[2].closed_form());
    CHECK(roots[2].closed_form()->str() == "sqrt(2)");
  }

  TEST_CASE("approximation lies inside the interval and nearly annihilates the polynomial") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
      const UniPoly p = testsupport::random_poly(rng, 2, 20);
      if (p.degree() < 1) continue;
      for (const auto& r : lqembed::exact::real_roots(p)) {
        const double x = r.to_double();
        const UniPoly& d = r.defining_poly();
        const double scale = std::abs(d.leading().to_double());
        CHECK(std::abs(d.eval(x)) / scale < 1e-10);
        CHECK(r.lo().to_double() <= x + 1e-15);
        CHECK(x <= r.hi().to_double() + 1e-15);
      }
    }
  }
}
