#include "lqembed/exact/sturm.hpp"

#include <algorithm>

#include "lqembed/errors.hpp"

namespace lqembed::exact {

namespace {

int sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

SturmSequence::SturmSequence(const UniPoly& p) {
  if (p.is_zero()) throw DomainError("Sturm sequence of the zero polynomial");
  seq_.push_back(p.primitive());
  if (p.degree() == 0) return;
  seq_.push_back(p.derivative().primitive());
  while (true) {
    UniPoly r = divmod(seq_[seq_.size() - 2], seq_.back()).second;
    if (r.is_zero()) break;
    seq_.push_back((-r).primitive());
  }
}

int SturmSequence::variations_at(const Rational& x) const {
  std::vector<int> signs;
  signs.reserve(seq_.size());
  for (const auto& s : seq_) signs.push_back(s(x).sign());
  return sign_changes(signs);
}

int SturmSequence::variations_at_plus_infinity() const {
  std::vector<int> signs;
  for (const auto& s : seq_) signs.push_back(s.leading().sign());
  return sign_changes(signs);
}

int SturmSequence::variations_at_minus_infinity() const {
  std::vector<int> signs;
  for (const auto& s : seq_) signs.push_back(s.leading().sign() * ((s.degree() % 2 == 0) ? 1 : -1));
  return sign_changes(signs);
}

int SturmSequence::count_roots(const Rational& a, const Rational& b) const {
  if (b < a) return 0;
  return variations_at(a) - variations_at(b);
}

int SturmSequence::count_all_roots() const {
  return variations_at_minus_infinity() - variations_at_plus_infinity();
}

Rational root_bound(const UniPoly& p) {
  if (p.degree() <= 0) return Rational(1);
  Rational max_ratio(0);
  const Rational lead = p.leading().abs();
  for (int i = 0; i < p.degree(); ++i) max_ratio = std::max(max_ratio, p.coeff(i).abs() / lead);
  // Cauchy bound, rounded up to an integer to keep the bisection dyadic.
  return Rational(mpz_class((max_ratio + Rational(1)).floor() + 1));
}

RootInterval refine(const UniPoly& squarefree, RootInterval root, const Rational& width) {
  if (root.exact()) return root;
  int lo_sign = squarefree(root.lo).sign();
  while (root.hi - root.lo > width) {
    const Rational mid = midpoint(root.lo, root.hi);
    const int s = squarefree(mid).sign();
    if (s == 0) return {mid, mid};
    if (s == lo_sign) {
      root.lo = mid;
    } else {
      root.hi = mid;
    }
  }
  return root;
}

namespace {

class Isolator {
 public:
  explicit Isolator(const UniPoly& squarefree) : p_(squarefree), sturm_(squarefree) {}

  // Isolates the roots in (lo, hi].
  void run(const Rational& lo, const Rational& hi, std::vector<RootInterval>& out) const {
    const int count = sturm_.count_roots(lo, hi);
    if (count == 0) return;
    if (count == 1) {
      out.push_back(single(lo, hi));
      return;
    }
    const Rational mid = midpoint(lo, hi);
    run(lo, mid, out);
    run(mid, hi, out);
  }

  const UniPoly& poly() const { return p_; }

 private:
  // Exactly one root in (lo, hi]; returns an interval whose endpoints are
  // not roots, or the exact root.
  RootInterval single(Rational lo, Rational hi) const {
    if (p_(hi).is_zero()) return {hi, hi};
    while (p_(lo).is_zero()) {
      const Rational mid = midpoint(lo, hi);
      if (p_(mid).is_zero()) return {mid, mid};
      if (sturm_.count_roots(lo, mid) == 1) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return {lo, hi};
  }

  UniPoly p_;
  SturmSequence sturm_;
};

}  // namespace

std::vector<RootInterval> isolate_roots(const UniPoly& p) {
  if (p.is_zero()) throw DomainError("root isolation of the zero polynomial");
  const UniPoly s = squarefree_part(p);
  if (s.degree() <= 0) return {};
  const Rational bound = root_bound(s);
  std::vector<RootInterval> out;
  Isolator(s).run(-bound, bound, out);
  return out;
}

std::vector<RootInterval> isolate_roots_in(const UniPoly& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw DomainError("root isolation of the zero polynomial");
  if (b < a) return {};
  const UniPoly s = squarefree_part(p);
  if (s.degree() <= 0) return {};
  std::vector<RootInterval> out;
  if (s(a).is_zero()) out.push_back({a, a});
  if (a < b) Isolator(s).run(a, b, out);
  return out;
}

SturmDecision sturm_nonneg(const UniPoly& p, const Rational& a, const Rational& b) {
  if (!(a < b)) throw InvalidInput("sturm_nonneg needs a non-degenerate interval");
  if (p.is_zero()) return {true, std::nullopt, "identically zero"};

  // Endpoints first so that witnesses prefer the interval ends.
  for (const Rational& end : {a, b}) {
    if (p(end).sign() < 0) return {false, end, "negative at interval endpoint"};
  }
  const auto roots = isolate_roots_in(p, a, b);
  std::vector<Rational> samples;
  Rational left = a;
  bool left_is_root = false;
  for (const auto& r : roots) {
    if (!(left_is_root && r.lo == left) && !(r.exact() && r.lo == a)) samples.push_back(midpoint(left, r.lo));
    left = r.hi;
    left_is_root = r.exact();
  }
  if (left < b) samples.push_back(midpoint(left, b));
  for (const auto& x : samples) {
    if (p(x).sign() < 0) return {false, x, "negative between real roots"};
  }
  return {true, std::nullopt, roots.empty() ? "no roots in interval" : "sign-constant gaps all non-negative"};
}

}  // namespace lqembed::exact
