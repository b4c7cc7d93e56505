#include <doctest.h>

#include <map>

#include "pfpc/valuations.hpp"

using namespace pfpc;

namespace {

PosetRef chain(unsigned n) { return make_poset(FinitePoset::chain(n)); }
PosetRef antichain(unsigned n) { return make_poset(FinitePoset::antichain(n)); }

Valuation val(const PosetRef& p, std::vector<Rational> w) { return Valuation(p, std::move(w)); }

Rational q(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Finite distributions over integers: the discrete case written out directly.
using Dist = std::map<std::size_t, Rational>;

Dist dist_bind(const Dist& d, const std::vector<Dist>& k) {
  Dist out;
  for (const auto& [x, p] : d)
    for (const auto& [y, r] : k[x]) {
      Rational w = p * r;
      out[y] += w;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

Dist as_dist(const Valuation& nu) {
  Dist d;
  for (std::size_t i = 0; i < nu.weights().size(); ++i)
    if (nu.weight(i) != 0) d[i] = nu.weight(i);
  return d;
}

}  // namespace

TEST_CASE("posets") {
  CHECK_THROWS_AS(FinitePoset("bad", {"a", "b"}, {{true, true}, {true, true}}), std::invalid_argument);
  CHECK_THROWS_AS(FinitePoset("bad", {"a"}, {{false}}), std::invalid_argument);
  CHECK_THROWS_AS(FinitePoset("bad", {"a", "b", "c"}, {{true, true, false}, {false, true, true}, {false, false, true}}),
                  std::invalid_argument);
  CHECK(FinitePoset::parse("chain:3") == FinitePoset::chain(3));
  CHECK(FinitePoset::parse("diamond").size() == 4);
  CHECK_THROWS_AS(FinitePoset::parse("tree:3"), std::invalid_argument);
  CHECK_THROWS_AS(FinitePoset::parse("chain:x"), std::invalid_argument);

  // 1, 2 and 5 posets up to isomorphism.
  CHECK(FinitePoset::all_up_to_iso(1).size() == 1);
  CHECK(FinitePoset::all_up_to_iso(2).size() == 2);
  CHECK(FinitePoset::all_up_to_iso(3).size() == 5);
  CHECK(FinitePoset::all_up_to_iso(4).size() == 16);
}

TEST_CASE("scott opens") {
  CHECK(scott_opens(FinitePoset::antichain(2)).size() == 4);
  CHECK(scott_opens(FinitePoset::chain(2)).size() == 3);
  CHECK(scott_opens(FinitePoset::chain(1)).size() == 2);
  CHECK(scott_opens(FinitePoset::diamond()).size() == 6);
  auto opens = scott_opens(FinitePoset::chain(2));
  CHECK(opens.front().members == 0);
  CHECK(opens.back().members == 3);
  CHECK_THROWS_AS(scott_opens(FinitePoset::antichain(17)), SizeGuard);
}

TEST_CASE("eval_open") {
  PosetRef ab = antichain(2);
  CHECK(eval_open(unit(ab, 0), {3}) == 1);
  CHECK(eval_open(unit(ab, 0), {0}) == 0);
  CHECK(eval_open(val(ab, {q(1, 2), q(1, 4)}), {2}) == q(1, 4));
  CHECK_THROWS_AS(eval_open(unit(chain(2), 0), {1}), std::invalid_argument);
}

TEST_CASE("from_open_map") {
  PosetRef ab = antichain(2);
  std::map<UpperSet, Rational> dirac{{{0}, 0}, {{1}, 1}, {{2}, 0}, {{3}, 1}};
  CHECK(from_open_map(ab, dirac) == unit(ab, 0));

  std::map<UpperSet, Rational> bad{{{0}, 0}, {{1}, q(1, 2)}, {{2}, q(1, 2)}, {{3}, q(3, 4)}};
  try {
    from_open_map(ab, bad);
    FAIL("accepted a non-modular map");
  } catch (const NotAValuation& e) {
    CHECK(e.axiom() == "modularity");
  }

  std::map<UpperSet, Rational> not_strict{{{0}, q(1, 8)}, {{1}, q(1, 2)}, {{2}, q(1, 2)}, {{3}, 1}};
  CHECK_THROWS_AS(from_open_map(ab, not_strict), NotAValuation);
  std::map<UpperSet, Rational> partial{{{0}, 0}, {{1}, 1}};
  CHECK_THROWS_AS(from_open_map(ab, partial), NotAValuation);
  std::map<UpperSet, Rational> heavy{{{0}, 0}, {{1}, 1}, {{2}, 1}, {{3}, 2}};
  try {
    from_open_map(ab, heavy);
    FAIL("accepted mass 2");
  } catch (const NotAValuation& e) {
    CHECK(e.axiom() == "subprobability");
  }
  PosetRef c2 = chain(2);
  std::map<UpperSet, Rational> decreasing{{{0}, 0}, {{2}, q(3, 4)}, {{3}, q(1, 2)}};
  try {
    from_open_map(c2, decreasing);
    FAIL("accepted a decreasing map");
  } catch (const NotAValuation& e) {
    CHECK(e.axiom() == "monotonicity");
  }
}

TEST_CASE("open-map round trip and valuation axioms") {
  std::mt19937_64 rng(3);
  for (const char* shape : {"chain:3", "antichain:3", "diamond", "antichain:5"}) {
    PosetRef p = make_poset(FinitePoset::parse(shape));
    auto opens = scott_opens(*p);
    for (int i = 0; i < 250; ++i) {
      Valuation nu = random_valuation(p, rng);
      std::map<UpperSet, Rational> m;
      for (const UpperSet& u : opens) m[u] = eval_open(nu, u);
      CHECK(from_open_map(p, m) == nu);
      CHECK(valuation_axiom_violation(nu).empty());
    }
  }
}

TEST_CASE("choquet integral") {
  PosetRef c2 = chain(2);
  ScottFunction f(c2, {q(1, 4), q(3, 4)});
  Valuation nu = val(c2, {q(1, 2), q(1, 2)});
  CHECK(choquet(f, nu) == q(1, 2));
  CHECK(weight_integral(f, nu) == q(1, 2));
  CHECK(choquet(ScottFunction(c2, {1, 1}), unit(c2, 0)) == 1);
  CHECK_THROWS_AS(ScottFunction(c2, {q(3, 4), q(1, 4)}), std::invalid_argument);
  CHECK_THROWS_AS(choquet(f, unit(antichain(3), 0)), PosetMismatch);

  // Threshold formula equals the weight sum on random monotone data.
  std::mt19937_64 rng(5);
  for (const char* shape : {"chain:4", "diamond", "antichain:3"}) {
    PosetRef p = make_poset(FinitePoset::parse(shape));
    for (int i = 0; i < 300; ++i) {
      Valuation v = random_valuation(p, rng);
      // Monotone functions as integrals of random Kleisli maps over a fixed open.
      KleisliMap k = random_kleisli_map(p, p, rng);
      std::vector<Rational> values;
      for (std::size_t x = 0; x < p->size(); ++x) values.push_back(k(x).mass());
      ScottFunction g(p, values);
      CHECK(choquet(g, v) == weight_integral(g, v));
    }
  }
}

TEST_CASE("unit and Kleisli extension") {
  PosetRef ab = antichain(2);
  PosetRef uv = make_poset(FinitePoset("uv", {"u", "v"}, {{true, false}, {false, true}}));
  KleisliMap f(ab, uv, {unit(uv, 0), val(uv, {q(1, 2), q(1, 2)})});
  Valuation nu = val(ab, {q(1, 2), q(1, 2)});
  CHECK(kleisli_ext(f, nu) == val(uv, {q(3, 4), q(1, 4)}));
  CHECK(kleisli_ext_via_integrals(f, nu) == val(uv, {q(3, 4), q(1, 4)}));
  CHECK(kleisli_ext(f, unit(ab, 1)) == f(1));
  CHECK(kleisli_ext(unit_map(ab), nu) == nu);
  CHECK(eval_open(unit(chain(3), 1), {chain(3)->up(1)}) == 1);

  // Non-monotone maps are refused.
  PosetRef c2 = chain(2);
  CHECK_THROWS_AS(KleisliMap(c2, c2, {unit(c2, 1), unit(c2, 0)}), std::invalid_argument);
}

TEST_CASE("multiply") {
  PosetRef ab = antichain(2);
  Valuation nu = val(ab, {q(1, 3), q(1, 3)});
  CHECK(multiply({{1, nu}}) == nu);
  CHECK(multiply({{q(1, 2), unit(ab, 0)}, {q(1, 2), unit(ab, 1)}}) == val(ab, {q(1, 2), q(1, 2)}));
  std::mt19937_64 rng(8);
  PosetRef c3 = chain(3);
  for (int i = 0; i < 500; ++i) {
    ValuationMixture m = random_mixture(c3, rng);
    CHECK(multiply(m) == multiply_via_extension(m));
  }
}

TEST_CASE("strength and tensor") {
  PosetRef c2 = chain(2);
  PosetRef ab = antichain(2);
  PosetRef prod = product_of(c2, ab);
  CHECK(strength(c2, 0, unit(ab, 1)) == unit(prod, 1));
  CHECK(strength(c2, 1, Valuation::zero(ab)) == Valuation::zero(prod));
  CHECK(tensor(unit(c2, 1), unit(ab, 0)) == unit(prod, 2));
  CHECK(tensor(unit(c2, 1), Valuation::zero(ab)) == Valuation::zero(prod));

  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    Valuation nu = random_valuation(c2, rng);
    Valuation xi = random_valuation(ab, rng);
    CHECK(strength(c2, 1, xi).mass() == xi.mass());
    CHECK(strength(c2, 1, xi) == strength_via_integral(c2, 1, xi));
    CHECK(tensor(nu, xi) == tensor_via_integrals(nu, xi));
    CHECK(tensor(nu, xi) == tensor_left_first(nu, xi));
    CHECK(tensor(nu, xi) == tensor_right_first(nu, xi));
  }
}

TEST_CASE("fubini on the non-rectangular open of the square") {
  PosetRef a = chain(2);
  PosetRef b = chain(2);
  // (0,1), (1,0), (1,1) in index i*2+j.
  UpperSet u{(1U << 1) | (1U << 2) | (1U << 3)};
  Valuation nu = val(a, {q(1, 2), q(1, 2)});
  Valuation xi = val(b, {q(1, 2), q(1, 2)});
  auto [left, right] = fubini_sides(nu, xi, u);
  CHECK(left == q(3, 4));
  CHECK(right == q(3, 4));
  CHECK(check_fubini(nu, xi, u));
  CHECK(check_fubini(unit(a, 0), unit(b, 1), u));
  CHECK(fubini_sides(unit(a, 0), unit(b, 1), u).first == 1);
  CHECK(fubini_sides(unit(a, 0), unit(b, 0), u).first == 0);
}

TEST_CASE("stochastic order") {
  std::mt19937_64 rng(21);
  PosetRef d = make_poset(FinitePoset::diamond());
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y) CHECK(stochastic_leq(unit(d, x), unit(d, y)) == d->leq(x, y));
  std::vector<Valuation> sample;
  for (int i = 0; i < 40; ++i) sample.push_back(random_valuation(d, rng));
  for (int i = 0; i < 6; ++i) sample.push_back(unit(d, 3));
  for (const Valuation& v : sample) {
    CHECK(stochastic_leq(Valuation::zero(d), v));
    CHECK(stochastic_leq(v, v));
  }
  for (const Valuation& a : sample)
    for (const Valuation& b : sample) {
      if (stochastic_leq(a, b) && stochastic_leq(b, a)) CHECK(a == b);
      for (const Valuation& c : sample)
        if (stochastic_leq(a, b) && stochastic_leq(b, c)) CHECK(stochastic_leq(a, c));
    }
}

TEST_CASE("law suite") {
  for (const char* shape : {"chain:1", "chain:2", "antichain:3", "diamond", "chain:6"}) {
    CAPTURE(shape);
    LawReport r = law_suite(make_poset(FinitePoset::parse(shape)), 7, shape == std::string("chain:2") ? 500 : 60);
    for (const LawCheck& c : r.checks) {
      CAPTURE(c.law);
      CHECK(c.failed == 0);
      CHECK(c.checked > 0);
    }
  }
  CHECK_THROWS_AS(law_suite(make_poset(FinitePoset::chain(7)), 1, 1), SizeGuard);
}

TEST_CASE("on an antichain the monad is the finite distribution monad") {
  PosetRef p = antichain(3);
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    KleisliMap f = random_kleisli_map(p, p, rng);
    KleisliMap g = random_kleisli_map(p, p, rng);
    Valuation nu = random_valuation(p, rng);
    std::vector<Dist> fk, gk;
    for (std::size_t x = 0; x < 3; ++x) {
      fk.push_back(as_dist(f(x)));
      gk.push_back(as_dist(g(x)));
    }
    CHECK(as_dist(kleisli_ext(f, nu)) == dist_bind(as_dist(nu), fk));
    CHECK(as_dist(kleisli_ext(g, kleisli_ext(f, nu))) == dist_bind(dist_bind(as_dist(nu), fk), gk));
    std::size_t x = static_cast<std::size_t>(i % 3);
    CHECK(as_dist(kleisli_ext(f, unit(p, x))) == dist_bind(Dist{{x, Rational(1)}}, fk));
  }
}

TEST_CASE("fubini suite on small posets") {
  LawReport r = fubini_suite(2, 30, 10, 4);
  CHECK(r.passed());
  CHECK(r.total_checked() > 0);
}
