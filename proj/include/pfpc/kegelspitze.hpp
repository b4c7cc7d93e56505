#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pfpc/law_report.hpp"
#include "pfpc/rational.hpp"
#include "pfpc/valuations.hpp"

namespace pfpc {

// A pointed barycentric algebra with an order: a +_r b, a least element, and
// exact equality. Continuity is vacuous on the rational carriers used here.
template <class K>
concept Kegelspitze = requires(const K& k, const typename K::Element& a, const Rational& r) {
  { k.combine(a, r, a) } -> std::same_as<typename K::Element>;
  { k.bottom() } -> std::same_as<typename K::Element>;
  { k.leq(a, a) } -> std::same_as<bool>;
  { k.equal(a, a) } -> std::same_as<bool>;
  { k.show(a) } -> std::same_as<std::string>;
};

/// [0,1] with r a + (1 - r) b and bottom 0.
struct UnitInterval {
  using Element = Rational;
  Element combine(const Element& a, const Rational& r, const Element& b) const;
  Element bottom() const { return Rational(0); }
  bool leq(const Element& a, const Element& b) const { return a <= b; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  std::string show(const Element& a) const { return to_string(a); }
  std::string name() const { return "unit-interval"; }
};

/// Subprobability valuations on a fixed finite poset, ordered stochastically.
class ValuationSpace {
 public:
  using Element = Valuation;
  explicit ValuationSpace(PosetRef poset) : poset_(std::move(poset)) {}
  Element combine(const Element& a, const Rational& r, const Element& b) const;
  Element bottom() const { return Valuation::zero(poset_); }
  bool leq(const Element& a, const Element& b) const { return stochastic_leq(a, b); }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  std::string show(const Element& a) const { return to_string(a); }
  std::string name() const { return "valuations(" + poset_->name() + ")"; }
  const PosetRef& poset() const { return poset_; }

 private:
  PosetRef poset_;
};

/// Maps from an n-element discrete set into K, with the pointwise structure.
template <Kegelspitze K>
class PointwiseFunctions {
 public:
  using Element = std::vector<typename K::Element>;
  PointwiseFunctions(K codomain, std::size_t domain_size) : codomain_(std::move(codomain)), n_(domain_size) {}

  Element combine(const Element& a, const Rational& r, const Element& b) const {
    Element out;
    for (std::size_t i = 0; i < n_; ++i) out.push_back(codomain_.combine(a.at(i), r, b.at(i)));
    return out;
  }
  Element bottom() const { return Element(n_, codomain_.bottom()); }
  bool leq(const Element& a, const Element& b) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (!codomain_.leq(a.at(i), b.at(i))) return false;
    return true;
  }
  bool equal(const Element& a, const Element& b) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (!codomain_.equal(a.at(i), b.at(i))) return false;
    return true;
  }
  std::string show(const Element& a) const {
    std::string out = "[";
    for (std::size_t i = 0; i < n_; ++i) out += (i ? "; " : "") + codomain_.show(a.at(i));
    return out + "]";
  }
  const K& codomain() const { return codomain_; }
  std::size_t domain_size() const { return n_; }

 private:
  K codomain_;
  std::size_t n_;
};

/// The one-point algebra {bottom}.
struct TrivialKegelspitze {
  struct Element {
    bool operator==(const Element&) const = default;
  };
  Element combine(const Element&, const Rational&, const Element&) const { return {}; }
  Element bottom() const { return {}; }
  bool leq(const Element&, const Element&) const { return true; }
  bool equal(const Element&, const Element&) const { return true; }
  std::string show(const Element&) const { return "bot"; }
  std::string name() const { return "trivial"; }
};

/// A finite formal sum r_1 d(x_1) + ... + r_n d(x_n) over a carrier.
template <class E>
using SimpleValuation = std::vector<std::pair<Rational, E>>;

/// r . a = a +_r bottom
template <Kegelspitze K>
typename K::Element scale(const K& k, const Rational& r, const typename K::Element& a) {
  return k.combine(a, r, k.bottom());
}

/// a_1 if r_1 = 1, else a_1 +_{r_1} (sum_{i>1} r_i / (1 - r_1) a_i); the empty sum is bottom.
template <Kegelspitze K>
typename K::Element convex_sum(const K& k, const SimpleValuation<typename K::Element>& entries) {
  Rational total = 0;
  for (const auto& [r, a] : entries) {
    if (!is_probability(r)) throw std::invalid_argument("convex_sum coefficient outside [0,1]");
    total += r;
  }
  if (total > 1) throw std::invalid_argument("convex_sum coefficients sum above 1");
  if (entries.empty()) return k.bottom();
  struct Rec {
    const K& k;
    // xs[i..] with coefficients divided by mass_scale, the product of (1 - r_j) so far.
    typename K::Element operator()(const SimpleValuation<typename K::Element>& xs, std::size_t i,
                                   const Rational& mass_scale) const {
      if (i == xs.size()) return k.bottom();
      Rational r = xs[i].first / mass_scale;
      if (r == 1) return xs[i].second;
      Rational rest = mass_scale * (1 - r);
      return k.combine(xs[i].second, r, (*this)(xs, i + 1, rest));
    }
  };
  return Rec{k}(entries, 0, Rational(1));
}

/// beta(sum r_i d(x_i)) = sum r_i x_i
template <Kegelspitze K>
typename K::Element barycenter(const K& k, const SimpleValuation<typename K::Element>& s) {
  return convex_sum(k, s);
}

/// A countable convex sum sum_i r_i x_i in [0,1], as the supremum of its
/// partial sums. `term(i)` gives (r_i, x_i) and `tail_mass(n)` an upper bound
/// on sum_{i >= n} r_i, which also bounds how far the partial sum after n terms
/// is from the limit. Stops when that bound is <= tol or after max_terms.
struct CountableSumResult {
  Rational value;
  std::size_t terms = 0;
  bool converged = false;
};
CountableSumResult countable_convex_sum(const std::function<std::pair<Rational, Rational>(std::size_t)>& term,
                                        const std::function<Rational(std::size_t)>& tail_mass, const Rational& tol,
                                        std::size_t max_terms);

// Samplers for the provided carriers.
Rational random_unit_point(std::mt19937_64& rng);
Rational random_coefficient(std::mt19937_64& rng);

/// The four barycentric-algebra equations, bottom least, scale(0) = bottom,
/// combine monotone, convex-sum permutation invariance and linearity of the
/// barycenter, each on `cases` random instances.
template <Kegelspitze K>
LawReport axiom_suite(const K& k, const std::string& subject,
                      const std::function<typename K::Element(std::mt19937_64&)>& sample, std::uint64_t seed,
                      unsigned cases);

/// beta . eta = id and beta . mu = beta . M(beta) on random simple-over-simple valuations.
template <Kegelspitze K>
LawReport em_law_suite(const K& k, const std::string& subject,
                       const std::function<typename K::Element(std::mt19937_64&)>& sample, std::uint64_t seed,
                       unsigned cases);

/// The convex structure of Kleisli homs is preserved by composition on either
/// side and by the Kleisli product and coproduct on either side; random posets
/// of size <= max_size.
LawReport kleisli_convexity_suite(std::uint64_t seed, unsigned cases, unsigned max_size = 3);

/// Pointwise convex combination of two Kleisli maps with the same type.
KleisliMap combine_maps(const KleisliMap& f, const Rational& r, const KleisliMap& g);
/// (f x h)(a, c) = f(a) (x) h(c)
KleisliMap kleisli_product(const KleisliMap& f, const KleisliMap& h);
/// f + h = [M(in1) . f, M(in2) . h]
KleisliMap kleisli_coproduct(const KleisliMap& f, const KleisliMap& h);

/// Every provided carrier through axiom_suite and em_law_suite, plus the
/// barycenter/multiply coherence and the Kleisli convexity suite.
std::vector<LawReport> kegelspitze_suites(std::uint64_t seed, unsigned cases);

// ---------------------------------------------------------------------------

namespace detail {

template <class E>
SimpleValuation<E> random_simple(std::mt19937_64& rng, const std::function<E(std::mt19937_64&)>& sample) {
  std::size_t n = 1 + std::uniform_int_distribution<std::size_t>(0, 3)(rng);
  Rational budget = std::uniform_int_distribution<int>(0, 1)(rng) == 0 ? Rational(1) : random_coefficient(rng);
  SimpleValuation<E> out;
  for (std::size_t i = 0; i < n; ++i) {
    Rational r = i + 1 == n ? budget : budget * random_coefficient(rng);
    budget -= r;
    out.emplace_back(r, sample(rng));
  }
  return out;
}

}  // namespace detail

template <Kegelspitze K>
LawReport axiom_suite(const K& k, const std::string& subject,
                      const std::function<typename K::Element(std::mt19937_64&)>& sample, std::uint64_t seed,
                      unsigned cases) {
  using E = typename K::Element;
  std::mt19937_64 rng(seed);
  LawReport report;
  report.suite = "barycentric axioms";
  report.subject = subject;
  report.seed = seed;
  report.cases = cases;
  for (unsigned c = 0; c < cases; ++c) {
    E a = sample(rng), b = sample(rng), d = sample(rng);
    Rational r = random_coefficient(rng);
    Rational p = random_coefficient(rng);
    std::string tag = "case " + std::to_string(c) + ": a = " + k.show(a) + ", b = " + k.show(b) + ", r = " +
                      to_string(r) + ", p = " + to_string(p);

    report.check("a +1 b = a").record(k.equal(k.combine(a, Rational(1), b), a), tag);
    report.check("a +r b = b +(1-r) a").record(k.equal(k.combine(a, r, b), k.combine(b, 1 - r, a)), tag);
    report.check("a +r a = a").record(k.equal(k.combine(a, r, a), a), tag);
    if (r < 1 && p < 1) {
      Rational pr = p * r;
      Rational inner = (r - pr) / (1 - pr);
      report.check("(a +p b) +r c = a +pr (b +((r-pr)/(1-pr)) c)")
          .record(k.equal(k.combine(k.combine(a, p, b), r, d), k.combine(a, pr, k.combine(b, inner, d))), tag);
    }
    report.check("scale(0, a) = bottom").record(k.equal(scale(k, Rational(0), a), k.bottom()), tag);
    report.check("bottom <= a").record(k.leq(k.bottom(), a), tag);
    // r . a <= a gives a sampled chain; combine must respect it in each argument.
    E lower = scale(k, p, a);
    report.check("combine monotone")
        .record(k.leq(lower, a) && k.leq(k.combine(lower, r, b), k.combine(a, r, b)) &&
                    k.leq(k.combine(b, r, lower), k.combine(b, r, a)),
                tag);

    SimpleValuation<E> s = detail::random_simple<E>(rng, sample);
    SimpleValuation<E> t = s;
    std::shuffle(t.begin(), t.end(), rng);
    report.check("convex sum permutation invariance").record(k.equal(convex_sum(k, s), convex_sum(k, t)), tag);

    SimpleValuation<E> s2 = detail::random_simple<E>(rng, sample);
    SimpleValuation<E> mixed;
    for (const auto& [w, x] : s) mixed.emplace_back(r * w, x);
    for (const auto& [w, x] : s2) mixed.emplace_back((1 - r) * w, x);
    report.check("barycenter linear")
        .record(k.equal(barycenter(k, mixed), k.combine(barycenter(k, s), r, barycenter(k, s2))), tag);
  }
  return report;
}

template <Kegelspitze K>
LawReport em_law_suite(const K& k, const std::string& subject,
                       const std::function<typename K::Element(std::mt19937_64&)>& sample, std::uint64_t seed,
                       unsigned cases) {
  using E = typename K::Element;
  std::mt19937_64 rng(seed);
  LawReport report;
  report.suite = "algebra laws";
  report.subject = subject;
  report.seed = seed;
  report.cases = cases;
  for (unsigned c = 0; c < cases; ++c) {
    E a = sample(rng);
    report.check("beta . eta = id").record(k.equal(barycenter(k, SimpleValuation<E>{{Rational(1), a}}), a),
                                           "a = " + k.show(a));

    // Outer mixture over inner simple valuations.
    std::function<SimpleValuation<E>(std::mt19937_64&)> inner = [&](std::mt19937_64& g) {
      return detail::random_simple<E>(g, sample);
    };
    SimpleValuation<SimpleValuation<E>> outer = detail::random_simple<SimpleValuation<E>>(rng, inner);
    SimpleValuation<E> flattened;  // mu
    SimpleValuation<E> images;     // M(beta)
    for (const auto& [r, nu] : outer) {
      for (const auto& [s, x] : nu) flattened.emplace_back(r * s, x);
      images.emplace_back(r, barycenter(k, nu));
    }
    E lhs = barycenter(k, flattened);
    E rhs = barycenter(k, images);
    report.check("beta . mu = beta . M(beta)")
        .record(k.equal(lhs, rhs), "case " + std::to_string(c) + ": " + k.show(lhs) + " vs " + k.show(rhs));
  }
  return report;
}

}  // namespace pfpc
