#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lqembed/exact/rational.hpp"
#include "lqembed/exact/unipoly.hpp"

namespace lqembed::exact {

/// Signed remainder sequence of a nonzero polynomial. Each member is scaled
/// by a positive constant to keep coefficients integral and small.
class SturmSequence {
 public:
  explicit SturmSequence(const UniPoly& p);

  int variations_at(const Rational& x) const;
  int variations_at_plus_infinity() const;
  int variations_at_minus_infinity() const;
  /// Number of distinct real roots in the half-open interval (a, b].
  int count_roots(const Rational& a, const Rational& b) const;
  int count_all_roots() const;

  const std::vector<UniPoly>& members() const { return seq_; }

 private:
  std::vector<UniPoly> seq_;
};

/// Isolating interval of one real root of a square-free polynomial.
/// Either lo == hi (the root itself), or p(lo) * p(hi) < 0 with exactly one
/// root strictly inside.
struct RootInterval {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
};

/// All distinct real roots of p, ascending. p must be nonzero.
std::vector<RootInterval> isolate_roots(const UniPoly& p);
/// Distinct roots of p in the closed interval [a, b], ascending.
std::vector<RootInterval> isolate_roots_in(const UniPoly& p, const Rational& a, const Rational& b);
/// Bisection on a square-free polynomial until the width is at most `width`.
RootInterval refine(const UniPoly& squarefree, RootInterval root, const Rational& width);

/// Positive bound strictly exceeding the modulus of every root.
Rational root_bound(const UniPoly& p);

/// Outcome of an exact non-negativity test on an interval.
struct SturmDecision {
  bool holds = true;
  /// Rational point with p(witness) < 0 when holds == false.
  std::optional<Rational> witness;
  std::string note;
};

/// TRUE iff p(u) >= 0 for every u in [a, b]. Exact: roots are isolated with
/// Sturm counts and p is sampled once per sign-constant gap.
SturmDecision sturm_nonneg(const UniPoly& p, const Rational& a, const Rational& b);

}  // namespace lqembed::exact
