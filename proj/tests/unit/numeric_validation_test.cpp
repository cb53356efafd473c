#include <doctest.h>

#include <cmath>

#include "lqembed/errors.hpp"
#include "lqembed/numeric_validation.hpp"

using namespace lqembed::numeric;
using lqembed::embed::density;
using lqembed::norms::PerturbedNormFamily;

TEST_SUITE("numeric_validation") {
  TEST_CASE("sphere areas") {
    CHECK(sphere_area(2) == doctest::Approx(2 * M_PI).epsilon(1e-15));
    CHECK(sphere_area(3) == doctest::Approx(4 * M_PI).epsilon(1e-15));
    CHECK(sphere_area(4) == doctest::Approx(2 * M_PI * M_PI).epsilon(1e-15));
  }

  TEST_CASE("product grid moments in dimension 3") {
    const auto g = build_quadrature(3);
    CHECK(g.scheme == Scheme::ProductGrid);
    CHECK(std::abs(g.total_weight - 4 * M_PI) < 1e-10);
    for (int j = 0; j <= 10; ++j) {
      const double v = g.integrate([j](std::span<const double> x) { return std::pow(x[2], 2 * j); });
      CHECK(std::abs(v - 4 * M_PI / (2 * j + 1)) < 1e-10);
    }
    const double half = g.integrate([](std::span<const double> x) { return std::sqrt(std::abs(x[2])); });
    CHECK(std::abs(half - 8 * M_PI / 3) < 1e-6);
    for (std::size_t i = 0; i < g.size(); i += 997) {
      const auto p = g.point(i);
      CHECK(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] == doctest::Approx(1.0).epsilon(1e-14));
    }
  }

  TEST_CASE("circle rule in dimension 2") {
    const auto g = build_quadrature(2);
    CHECK(g.scheme == Scheme::Circle);
    CHECK(std::abs(g.total_weight - 2 * M_PI) < 1e-12);
    // integral of |cos|^{1/2} over the circle = 4 * B(3/4, 1/2) / 2
    const double expect = 2.0 * std::tgamma(0.75) * std::tgamma(0.5) / std::tgamma(1.25);
    const double v = g.integrate([](std::span<const double> x) { return std::sqrt(std::abs(x[1])); });
    CHECK(v == doctest::Approx(expect).epsilon(1e-6));
  }

  TEST_CASE("Monte Carlo in higher dimension is seeded") {
    QuadratureResolution r;
    r.monte_carlo_points = 20000;
    r.monte_carlo_seed = 5;
    const auto a = build_quadrature(5, r);
    const auto b = build_quadrature(5, r);
    CHECK(a.scheme == Scheme::MonteCarlo);
    CHECK(a.nodes == b.nodes);
    CHECK(a.total_weight == doctest::Approx(sphere_area(5)).epsilon(1e-12));
    const double second = a.integrate([](std::span<const double> x) { return x[4] * x[4]; });
    CHECK(second == doctest::Approx(sphere_area(5) / 5).epsilon(0.03));
  }

  TEST_CASE("resolution limits") {
    QuadratureResolution r;
    r.theta = 4;
    CHECK_THROWS_AS(build_quadrature(3, r), lqembed::InvalidInput);
    CHECK_THROWS_AS(build_quadrature(1), lqembed::InvalidInput);
    CHECK_THROWS_AS(build_quadrature(kMaxDimension + 1), lqembed::InvalidInput);
    QuadratureResolution big;
    big.phi = 100000;
    CHECK_THROWS_AS(build_quadrature(3, big), lqembed::InvalidInput);
  }

  TEST_CASE("representation passes for certified densities") {
    struct Case {
      int s;
      Rational q;
      Rational lambda;
    };
    const Case cases[] = {{2, Rational(1, 2), Rational(0)},     {2, Rational(1, 2), Rational(1, 20)},
                          {2, Rational(1, 2), Rational(1, 14)}, {2, Rational(1), Rational(0)},
                          {2, Rational(1), Rational(1, 20)},    {2, Rational(1), Rational(1, 14)},
                          {4, Rational(1, 4), Rational(1, 26)}};
    for (const auto& c : cases) {
      const auto rep = density(PerturbedNormFamily::standard(3, c.s), c.q);
      const auto r = validate_representation(rep, c.lambda, 5, 42);
      CHECK_MESSAGE(r.pass, r.name, " error ", r.max_rel_error);
      CHECK(r.tolerance == (c.q < Rational(1) ? 1e-3 : 1e-5));
      CHECK_FALSE(r.informational);
    }
  }

  TEST_CASE("representation is deterministic per seed") {
    const auto rep = density(PerturbedNormFamily::standard(3, 2), Rational(1));
    const auto a = validate_representation(rep, Rational(1, 20), 3, 9);
    const auto b = validate_representation(rep, Rational(1, 20), 3, 9);
    CHECK(a.max_rel_error == b.max_rel_error);
    CHECK(a.witness == b.witness);
  }

  TEST_CASE("representation detects a wrong lambda") {
    // Density for lambda = 1/14 used against the norm for lambda = 1/20 gives a visible mismatch.
    auto rep = density(PerturbedNormFamily::standard(3, 2), Rational(1));
    auto shifted = rep;
    shifted.b = lqembed::exact::BivariatePoly::in_u(rep.at(Rational(1, 14)));
    const auto r = validate_representation(shifted, Rational(1, 20), 3, 1);
    CHECK_FALSE(r.pass);
  }

  TEST_CASE("representation in dimension 2 and 4") {
    const auto rep2 = density(PerturbedNormFamily::standard(2, 2), Rational(1));
    CHECK(validate_representation(rep2, Rational(1, 20), 5, 3).pass);
    QuadratureResolution r;
    r.monte_carlo_points = 200000;
    const auto rep4 = density(PerturbedNormFamily::standard(4, 2), Rational(1));
    const auto mc = validate_representation(rep4, Rational(1, 30), 3, 3, r);
    CHECK(mc.informational);
    CHECK(mc.max_rel_error < 5e-2);
  }

  TEST_CASE("representation outside the norm interval") {
    const auto rep = density(PerturbedNormFamily::standard(3, 2), Rational(1));
    CHECK_THROWS_AS(validate_representation(rep, Rational(1, 5), 3, 1), lqembed::NotANorm);
  }

  TEST_CASE("Gram matrices") {
    const auto f = PerturbedNormFamily::standard(3, 2);
    const auto ok = gram_psd_check(f, Rational(1, 2), Rational(1, 14), 12, 20, 1);
    CHECK(ok.pass);
    CHECK_FALSE(ok.informational);
    const auto euclid = gram_psd_check(f, Rational(1), Rational(0), 12, 20, 1);
    CHECK(euclid.pass);
    CHECK_FALSE(euclid.informational);
    const auto uncertified = gram_psd_check(f, Rational(1), Rational(1, 14), 12, 5, 1);
    CHECK(uncertified.informational);
    CHECK_FALSE(uncertified.required_failure());
    const auto a = gram_psd_check(f, Rational(1, 2), Rational(1, 20), 8, 3, 77);
    const auto b = gram_psd_check(f, Rational(1, 2), Rational(1, 20), 8, 3, 77);
    CHECK(a.max_rel_error == b.max_rel_error);
  }

  TEST_CASE("convexity probes") {
    const auto f = PerturbedNormFamily::standard(3, 2);
    for (const Rational l : {Rational(0), Rational(1, 14), Rational(1, 11)}) {
      const auto r = finite_difference_convexity(f, l, 5000, 4);
      CHECK(r.pass);
      CHECK(r.max_rel_error <= 1e-12);
    }
    const auto out = finite_difference_convexity(f, Rational(95, 1000), 100, 4);
    CHECK(out.pass);
    CHECK_FALSE(out.witness.empty());
    const auto near = finite_difference_convexity(f, Rational(1, 11) + Rational(1, 100000), 100, 4);
    CHECK(near.informational);
  }
}
