#include <doctest.h>

#include "pfpc/kegelspitze.hpp"

using namespace pfpc;

namespace {

Rational q(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

PosetRef chain(unsigned n) { return make_poset(FinitePoset::chain(n)); }

void require_passed(const LawReport& r) {
  INFO(r.suite << " on " << r.subject);
  for (const LawCheck& c : r.checks) {
    INFO(c.law << ": " << c.counterexample.value_or(""));
    CHECK(c.failed == 0);
    CHECK(c.checked > 0);
  }
}

}  // namespace

TEST_CASE("unit interval combine and scale") {
  UnitInterval k;
  CHECK(k.combine(q(1, 3), 1, q(5, 7)) == q(1, 3));
  CHECK(k.combine(q(1, 2), q(1, 2), q(1, 2)) == q(1, 2));
  CHECK(k.combine(1, q(1, 4), 0) == q(1, 4));
  CHECK(scale(k, 1, q(2, 3)) == q(2, 3));
  CHECK(scale(k, 0, q(2, 3)) == 0);
  CHECK(scale(k, q(1, 2), 1) == q(1, 2));
  CHECK_THROWS_AS(k.combine(0, q(3, 2), 1), std::invalid_argument);
}

TEST_CASE("convex sums follow the inductive unfolding") {
  UnitInterval k;
  CHECK(convex_sum(k, {{1, q(3, 8)}}) == q(3, 8));
  // 0 +_{1/2} (1/2 . 1) = 0/2 + 1/4
  CHECK(convex_sum(k, {{q(1, 2), 0}, {q(1, 4), 1}}) == q(1, 4));
  CHECK(convex_sum(k, {}) == 0);
  // r_1 = 1 ends the recursion before any division
  CHECK(convex_sum(k, {{1, q(1, 5)}, {0, 1}}) == q(1, 5));
  CHECK(convex_sum(k, {{0, 1}, {1, q(1, 5)}}) == q(1, 5));
  CHECK(convex_sum(k, {{q(1, 3), 1}, {q(1, 3), q(1, 2)}, {q(1, 3), 0}}) == q(1, 2));
  CHECK_THROWS_AS(convex_sum(k, {{q(2, 3), 1}, {q(2, 3), 1}}), std::invalid_argument);
  CHECK_THROWS_AS(convex_sum(k, {{q(-1, 3), 1}}), std::invalid_argument);
}

TEST_CASE("barycenter on the unit interval") {
  UnitInterval k;
  CHECK(barycenter(k, {{1, q(4, 9)}}) == q(4, 9));
  CHECK(barycenter(k, {{q(1, 2), 0}, {q(1, 4), 1}}) == q(1, 4));
}

TEST_CASE("valuation space combine and barycenter") {
  PosetRef p = make_poset(FinitePoset::antichain(2));
  ValuationSpace k(p);
  Valuation a = unit(p, 0), b = unit(p, 1);
  CHECK(k.combine(a, q(1, 2), b) == Valuation(p, {q(1, 2), q(1, 2)}));
  CHECK(scale(k, 0, a) == Valuation::zero(p));
  CHECK(k.leq(k.bottom(), a));
  CHECK_FALSE(k.leq(a, b));

  Valuation n1(p, {q(1, 3), q(1, 3)}), n2(p, {0, q(1, 2)});
  CHECK(barycenter(k, {{q(1, 2), n1}, {q(1, 2), n2}}) == Valuation(p, {q(1, 6), q(5, 12)}));
  ValuationMixture m = {{q(1, 2), n1}, {q(1, 2), n2}};
  CHECK(barycenter(k, m) == multiply(m));

  CHECK_THROWS_AS(k.combine(unit(chain(2), 0), q(1, 2), a), PosetMismatch);
}

TEST_CASE("pointwise functions combine coordinatewise") {
  PointwiseFunctions<UnitInterval> k(UnitInterval{}, 2);
  std::vector<Rational> f = {0, 1}, g = {1, q(1, 2)};
  CHECK(k.equal(k.combine(f, q(1, 4), g), {q(3, 4), q(5, 8)}));
  CHECK(k.equal(k.bottom(), {0, 0}));
  CHECK(k.leq(k.bottom(), g));
  CHECK_FALSE(k.leq(f, g));
  CHECK(k.show(f) == "[0/1; 1/1]");
}

TEST_CASE("countable convex sums converge from below") {
  // sum_i 2^-(i+1) * 1 = 1
  auto term = [](std::size_t i) { return std::pair<Rational, Rational>(pow2_inverse(static_cast<unsigned>(i + 1)), 1); };
  auto tail = [](std::size_t n) { return pow2_inverse(static_cast<unsigned>(n)); };
  CountableSumResult r = countable_convex_sum(term, tail, q(1, 1000000), 100);
  CHECK(r.converged);
  CHECK(r.terms == 20);
  CHECK(r.value == 1 - pow2_inverse(20));

  CountableSumResult capped = countable_convex_sum(term, tail, q(1, 1000000), 5);
  CHECK_FALSE(capped.converged);
  CHECK(capped.value == 1 - pow2_inverse(5));
}

TEST_CASE("kleisli product and coproduct images") {
  PosetRef c2 = chain(2);
  PosetRef one = chain(1);
  // f(0) = 1/2 d(c0), f(1) = d(c1);  h(0) = 1/3 d(c0)
  KleisliMap f(c2, c2, {Valuation(c2, {q(1, 2), 0}), unit(c2, 1)});
  KleisliMap h(one, one, {Valuation(one, {q(1, 3)})});

  KleisliMap prod = kleisli_product(f, h);
  CHECK(prod.domain()->size() == 2);
  CHECK(prod(0).weights() == std::vector<Rational>{q(1, 6), 0});
  CHECK(prod(1).weights() == std::vector<Rational>{0, q(1, 3)});

  KleisliMap sum = kleisli_coproduct(f, h);
  CHECK(sum.domain()->size() == 3);
  CHECK(sum(0).weights() == std::vector<Rational>{q(1, 2), 0, 0});
  CHECK(sum(1).weights() == std::vector<Rational>{0, 1, 0});
  CHECK(sum(2).weights() == std::vector<Rational>{0, 0, q(1, 3)});

  KleisliMap zero(c2, c2, {Valuation::zero(c2), Valuation::zero(c2)});
  CHECK(combine_maps(zero, q(1, 3), zero) == zero);
  CHECK(combine_maps(f, 1, zero) == f);
  CHECK(kleisli_compose(f, combine_maps(zero, q(1, 2), zero)) == zero);
}

TEST_CASE("barycentric axioms hold on the provided carriers") {
  require_passed(axiom_suite<UnitInterval>(UnitInterval{}, "unit-interval", random_unit_point, 11, 500));
  require_passed(em_law_suite<UnitInterval>(UnitInterval{}, "unit-interval", random_unit_point, 12, 500));
  PosetRef c2 = chain(2);
  std::function<Valuation(std::mt19937_64&)> sample = [c2](std::mt19937_64& g) { return random_valuation(c2, g); };
  require_passed(axiom_suite(ValuationSpace(c2), "2-chain", sample, 13, 200));
  require_passed(em_law_suite(ValuationSpace(c2), "2-chain", sample, 14, 200));
  std::function<TrivialKegelspitze::Element(std::mt19937_64&)> bot = [](std::mt19937_64&) {
    return TrivialKegelspitze::Element{};
  };
  require_passed(em_law_suite(TrivialKegelspitze{}, "trivial", bot, 15, 20));
}

TEST_CASE("kleisli homs respect the convex structure") {
  LawReport r = kleisli_convexity_suite(21, 300, 2);
  require_passed(r);
  CHECK(r.checks.size() == 6);
}

TEST_CASE("all kegelspitze suites pass") {
  std::vector<LawReport> reports = kegelspitze_suites(7, 60);
  CHECK(reports.size() > 10);
  for (const LawReport& r : reports) require_passed(r);
}
