#include <doctest.h>

#include <cmath>

#include "lqembed/embeddability.hpp"
#include "lqembed/errors.hpp"
#include "support.hpp"

using namespace lqembed::embed;
using lqembed::exact::compare;
using lqembed::exact::sturm_nonneg;

namespace {

// Density for s = 2, q = 1/2 written out by hand: 1 + 7 lambda - 3(2n+1) lambda u.
Rational half_density(int n, const Rational& u, const Rational& l) {
  return Rational(1) + Rational(7) * l - Rational(3 * (2 * n + 1)) * l * u;
}

// Density for s = 2, q = 1 from the rows 1, (n+1)u - 1, -(n+3)(n+1)u^2 + 6(n+1)u - 3.
Rational one_density(int n, const Rational& u, const Rational& l) {
  const Rational m(n);
  const Rational row1 = (m + Rational(1)) * u - Rational(1);
  const Rational row2 = -(m + Rational(3)) * (m + Rational(1)) * u * u + Rational(6) * (m + Rational(1)) * u - Rational(3);
  return Rational(1) + Rational(2) * l + l * l - (Rational(6) * l + Rational(6) * l * l) * row1 +
         Rational(9) * l * l * row2;
}

double alpha_double(int n) {
  const double m = n;
  return (std::sqrt(18 * m * m - 18 * m) - 3 * m + 1) / (9 * m * m - 12 * m - 1);
}

// Minimum of b(., l) on a fine grid, in double precision.
double grid_min(const UniPoly& b) {
  double m = b.eval(0.0);
  for (int i = 1; i <= 4000; ++i) m = std::min(m, b.eval(i / 4000.0));
  return m;
}

}  // namespace

TEST_SUITE("embeddability") {
  TEST_CASE("density matches the hand-written forms") {
    std::mt19937_64 rng(3);
    for (int n = 2; n <= 12; ++n) {
      const auto f = PerturbedNormFamily::standard(n, 2);
      const auto half = density(f, Rational(1, 2));
      const auto one = density(f, Rational(1));
      for (int i = 0; i < 20; ++i) {
        const Rational u = testsupport::random_rational(rng, 0, 1, 30);
        const Rational l = testsupport::random_rational(rng, -1, 1, 30);
        CHECK(half.b(u, l) == half_density(n, u, l));
        CHECK(one.b(u, l) == one_density(n, u, l));
      }
    }
  }

  TEST_CASE("prefactor is Gamma((n+q)/2) / (2 pi^((n-1)/2) Gamma((q+1)/2))") {
    const auto rep = density(PerturbedNormFamily::standard(3, 2), Rational(1));
    // n = 3, q = 1: Gamma(2) / (2 pi Gamma(1)) = 1/(2 pi).
    CHECK(rep.prefactor.value() == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-14));
    const auto rep_half = density(PerturbedNormFamily::standard(3, 2), Rational(1, 2));
    CHECK(rep_half.prefactor.value() ==
          doctest::Approx(std::tgamma(1.75) / (2.0 * M_PI * std::tgamma(0.75))).epsilon(1e-13));
  }

  TEST_CASE("density errors") {
    const auto f = PerturbedNormFamily::standard(3, 2);
    CHECK_THROWS_AS(density(f, Rational(1, 4)), lqembed::UnsupportedExponent);
    CHECK_THROWS_AS(density(PerturbedNormFamily::standard(3, 1), Rational(2)), lqembed::InvalidInput);
  }

  TEST_CASE("Euclidean slice is a positive constant") {
    for (int n = 2; n <= 10; ++n) {
      for (int s : {2, 4}) {
        for (const Rational q : {Rational(1, 2), Rational(1)}) {
          const auto rep = density(PerturbedNormFamily::standard(n, s), q);
          const UniPoly b0 = rep.at(Rational(0));
          CHECK(b0 == UniPoly::constant(Rational(1)));
        }
      }
    }
  }

  TEST_CASE("embedding examples in dimension 3") {
    const auto f = PerturbedNormFamily::standard(3, 2);
    const auto in_half = embeds(f, Rational(1, 2), Rational(1, 14));
    CHECK(in_half.embeds);
    REQUIRE(in_half.minimum.value);
    CHECK(*in_half.minimum.value == Rational(0));
    CHECK(in_half.minimum.location == AlgebraicNumber(Rational(1)));

    const auto in_one = embeds(f, Rational(1), Rational(1, 14));
    CHECK_FALSE(in_one.embeds);
    REQUIRE(in_one.witness);
    REQUIRE(in_one.witness_value);
    CHECK(in_one.witness_value->sign() < 0);
    CHECK(in_one.density(Rational(1)) == Rational(-18, 49));
    CHECK(one_density(3, Rational(1), Rational(1, 14)) == Rational(-18, 49));

    CHECK(embeds(f, Rational(1), Rational(0)).embeds);
    CHECK(embeds(f, Rational(1), Rational(1, 20)).embeds);
    CHECK_THROWS_AS(embeds(f, Rational(1, 2), Rational(1, 10)), lqembed::NotANorm);
  }

  TEST_CASE("minimum on the unit interval") {
    const auto m = minimum_on_unit_interval(UniPoly{Rational(1), Rational(-4), Rational(4)});
    REQUIRE(m.value);
    CHECK(*m.value == Rational(0));
    CHECK(m.location == AlgebraicNumber(Rational(1, 2)));
    const auto irr = minimum_on_unit_interval(UniPoly{Rational(0), Rational(-2), Rational(0), Rational(1)});
    CHECK_FALSE(irr.value);
    CHECK(irr.location.to_double() == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
    CHECK(irr.approx == doctest::Approx(std::pow(2.0 / 3.0, 1.5) - 2 * std::sqrt(2.0 / 3.0)).epsilon(1e-12));
  }

  TEST_CASE("quadratic family thresholds for n = 3..50") {
    for (int n = 3; n <= 50; ++n) {
      const auto f = PerturbedNormFamily::standard(n, 2);
      const auto half = lambda_threshold(f, Rational(1, 2));
      CHECK(half.threshold == AlgebraicNumber(Rational(1, 6 * n - 4)));
      CHECK(half.checks.all());
      const auto one = lambda_threshold(f, Rational(1));
      CHECK(one.threshold == alpha_closed_form(n));
      CHECK(one.threshold.to_double() == doctest::Approx(alpha_double(n)).epsilon(1e-12));
      CHECK(one.checks.all());
      CHECK(one.threshold <= half.threshold);
    }
  }

  TEST_CASE("double-precision oracle brackets the thresholds") {
    for (int n : {3, 5, 10}) {
      const auto f = PerturbedNormFamily::standard(n, 2);
      const auto rep = density(f, Rational(1));
      const double a = alpha_double(n);
      const Rational below(static_cast<long>(std::floor(a * 1e6 - 1)), 1000000L);
      const Rational above(static_cast<long>(std::ceil(a * 1e6 + 1)), 1000000L);
      CHECK(grid_min(rep.at(below)) > 0.0);
      CHECK(grid_min(rep.at(above)) < 0.0);
    }
  }

  TEST_CASE("closed form values") {
    CHECK(alpha_closed_form(9) == AlgebraicNumber(Rational(1, 62)));
    CHECK(alpha_closed_form(3).to_double() == doctest::Approx((3 * std::sqrt(3.0) - 4) / 22).epsilon(1e-14));
    CHECK(alpha_closed_form(2) == AlgebraicNumber(Rational(1, 11)));
    const auto t2 = lambda_threshold(PerturbedNormFamily::standard(2, 2), Rational(1));
    CHECK(t2.threshold == AlgebraicNumber(Rational(1, 11)));
  }

  TEST_CASE("window chain for n = 3..50") {
    for (int n = 3; n <= 50; ++n) {
      const auto w = quadratic_family_window(n);
      CHECK(w.chain_holds());
      CHECK(w.one_over_6n_minus_4 == Rational(1, 6 * n - 4));
      CHECK(w.convexity_upper == AlgebraicNumber(Rational(1, 11)));
    }
  }

  TEST_CASE("dimension two has no window") {
    CHECK_THROWS_AS(quadratic_family_window(2), lqembed::DegenerateWindow);
    const auto w = quadratic_window_data(2);
    CHECK_FALSE(w.window_nonempty);
    CHECK(w.l_half.convexity_limited);
    CHECK(w.l_half.threshold == AlgebraicNumber(Rational(1, 11)));
    CHECK_THROWS_AS(counterexample_bundle(2), lqembed::DegenerateWindow);
    CHECK_THROWS_AS(counterexample_bundle(1), lqembed::InvalidInput);
  }

  TEST_CASE("quartic family window") {
    const auto w = quartic_family_window();
    CHECK(w.convexity_upper == AlgebraicNumber(Rational(1, 23)));
    CHECK(w.l_quarter.threshold == AlgebraicNumber(Rational(1, 26)));
    CHECK(w.half_below_stated_bound);
    CHECK(w.stated_bound_below_quarter);
    CHECK(w.quarter_below_convexity);
    CHECK(w.half_below_quarter);
    CHECK(w.window_nonempty);
    CHECK(w.l_half.threshold.to_double() == doctest::Approx((2 * std::sqrt(15.0) - 7) / 22).epsilon(1e-13));
    CHECK(compare(w.l_half.threshold, Rational(1, 28)) < 0);
    CHECK(w.window_lower == AlgebraicNumber(Rational(1, 28)));
  }

  TEST_CASE("thresholds decrease as q grows") {
    const auto f2 = PerturbedNormFamily::standard(3, 2);
    CHECK(lambda_threshold(f2, Rational(1)).threshold <= lambda_threshold(f2, Rational(1, 2)).threshold);
    const auto f4 = PerturbedNormFamily::standard(3, 4);
    CHECK(lambda_threshold(f4, Rational(1, 2)).threshold <= lambda_threshold(f4, Rational(1, 4)).threshold);
    CHECK(lambda_threshold(f4, Rational(1)).threshold <= lambda_threshold(f4, Rational(1, 2)).threshold);
  }

  TEST_CASE("threshold is the edge of non-negativity") {
    std::mt19937_64 rng(11);
    const auto f = PerturbedNormFamily::standard(4, 2);
    const auto rep = density(f, Rational(1));
    const auto t = lambda_threshold(f, Rational(1));
    for (int i = 0; i < 30; ++i) {
      const Rational l = testsupport::random_rational(rng, 0, 1, 200) * Rational(1, 10);
      const bool nonneg = sturm_nonneg(rep.at(l), Rational(0), Rational(1)).holds;
      CHECK(nonneg == (compare(t.threshold, l) >= 0));
    }
  }

  TEST_CASE("counterexample bundles") {
    for (int n : {3, 4, 7}) {
      const auto b = counterexample_bundle(n);
      CHECK(b.lambda == Rational(1, 6 * n - 4));
      CHECK(b.norm.is_norm);
      CHECK(b.embed.embeds);
      CHECK_FALSE(b.non_embed.embeds);
      CHECK(b.alpha < AlgebraicNumber(b.lambda));
    }
    const auto b3 = counterexample_bundle(3);
    CHECK(b3.lambda == Rational(1, 14));
    CHECK(*b3.non_embed.witness_value < Rational(0));
  }
}
