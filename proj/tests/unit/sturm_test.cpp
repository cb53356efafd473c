#include <doctest.h>

#include "lqembed/exact/sturm.hpp"
#include "support.hpp"

using lqembed::exact::Rational;
using lqembed::exact::UniPoly;
using lqembed::exact::isolate_roots;
using lqembed::exact::sturm_nonneg;

namespace {

// Dense rational sampling plus exact values at the refined critical points.
bool sampled_nonneg(const UniPoly& p) {
  for (int i = 0; i <= 10000; ++i) {
    if (p(Rational(i, 10000)).sign() < 0) return false;
  }
  if (p.degree() >= 2) {
    const UniPoly d = lqembed::exact::squarefree_part(p.derivative());
    for (auto r : lqembed::exact::isolate_roots_in(d, Rational(0), Rational(1))) {
      r = lqembed::exact::refine(d, r, Rational(1, 1000000000));
      if (p(r.lo).sign() < 0 || p(r.hi).sign() < 0) return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("sturm") {
  TEST_CASE("density slices") {
    // 1 + 7 lambda - 21 lambda u at lambda = 1/14
    const UniPoly at_14{Rational(3, 2), Rational(-3, 2)};
    const auto yes = sturm_nonneg(at_14, Rational(0), Rational(1));
    CHECK(yes.holds);
    const UniPoly at_13{Rational(20, 13), Rational(-21, 13)};
    const auto no = sturm_nonneg(at_13, Rational(0), Rational(1));
    CHECK_FALSE(no.holds);
    REQUIRE(no.witness);
    CHECK(at_13(*no.witness).sign() < 0);
    CHECK(sturm_nonneg(UniPoly{Rational(0), Rational(0), Rational(1)}, Rational(0), Rational(1)).holds);
    const auto zero = sturm_nonneg(UniPoly{}, Rational(0), Rational(1));
    CHECK(zero.holds);
    CHECK(zero.note == "identically zero");
  }

  TEST_CASE("root isolation") {
    const auto r1 = isolate_roots(UniPoly{Rational(1), Rational(-10), Rational(-11)});
    REQUIRE(r1.size() == 2);
    CHECK(r1[0].lo <= Rational(-1));
    CHECK(Rational(-1) <= r1[0].hi);
    CHECK(r1[1].lo <= Rational(1, 11));
    CHECK(Rational(1, 11) <= r1[1].hi);
    const auto r2 = isolate_roots(UniPoly{Rational(1), Rational(8), Rational(-20)});
    REQUIRE(r2.size() == 2);
    CHECK(r2[0].lo <= Rational(-1, 10));
    CHECK(Rational(1, 2) <= r2[1].hi);
    const auto r3 = isolate_roots(UniPoly{Rational(0), Rational(0), Rational(1)});
    REQUIRE(r3.size() == 1);
    CHECK(r3[0].lo <= Rational(0));
    CHECK(Rational(0) <= r3[0].hi);
  }

  TEST_CASE("isolating intervals are sound") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      const UniPoly p = testsupport::random_poly(rng, 6, 10);
      if (p.degree() < 1) continue;
      const UniPoly s = lqembed::exact::squarefree_part(p);
      const auto roots = isolate_roots(p);
      CHECK(static_cast<int>(roots.size()) == lqembed::exact::SturmSequence(s).count_all_roots());
      for (std::size_t i = 0; i < roots.size(); ++i) {
        const auto& r = roots[i];
        if (r.exact()) {
          CHECK(p(r.lo).is_zero());
        } else {
          CHECK(s(r.lo).sign() * s(r.hi).sign() < 0);
        }
        if (i + 1 < roots.size()) {
          const auto& next = roots[i + 1];
          CHECK(r.hi <= next.lo);
          if (r.hi == next.lo) CHECK_FALSE(p(r.hi).is_zero());
        }
      }
    }
  }

  TEST_CASE("agrees with sampling oracle on random polynomials") {
    std::mt19937_64 rng(2024);
    int disagreements = 0;
    for (int trial = 0; trial < 500; ++trial) {
      const UniPoly p = testsupport::random_poly(rng, 6, 10);
      const auto d = sturm_nonneg(p, Rational(0), Rational(1));
      if (d.holds != sampled_nonneg(p)) ++disagreements;
      if (!d.holds) {
        REQUIRE(d.witness);
        CHECK(p(*d.witness).sign() < 0);
      }
    }
    CHECK(disagreements == 0);
  }

  TEST_CASE("touching zero inside the interval counts as non-negative") {
    // (3u - 1)^2 (u + 1)
    const UniPoly p = UniPoly{Rational(-1), Rational(3)}.pow(2) * UniPoly{Rational(1), Rational(1)};
    CHECK(sturm_nonneg(p, Rational(0), Rational(1)).holds);
    CHECK_FALSE(sturm_nonneg(-p + UniPoly::constant(Rational(1, 1000000)), Rational(0), Rational(1)).holds);
  }
}
