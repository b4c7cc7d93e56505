#include <doctest.h>

#include "pfpc/denotational.hpp"
#include "pfpc/derived.hpp"
#include "pfpc/generator.hpp"
#include "pfpc/syntax.hpp"
#include "pfpc/typecheck.hpp"

using namespace pfpc;

namespace {

Rational q(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

const Fuel plenty{1000000};

Term coins_run() { return Term::app(derived::coins(), derived::unit_value()); }
Term geometric_run() { return Term::app(derived::geometric_counter(), derived::zero()); }

Rational mass_of(const SemDist& d, const Term& v) { return d.at(denote_value(v).key()); }

// Completed coin rounds within n small steps: the first round takes 6 steps, later ones 7.
unsigned coin_rounds(unsigned n) { return n < 6 ? 0 : (n - 6) / 7 + 1; }

}  // namespace

TEST_CASE("values denote points") {
  CHECK(denote_value(derived::unit_value()).as<sem::Unit>());
  SemValue z = denote_value(derived::zero());
  const sem::Fold* f = z.as<sem::Fold>();
  REQUIRE(f);
  const sem::Inj* i = f->arg.as<sem::Inj>();
  REQUIRE(i);
  CHECK(i->index == 1);
  CHECK(i->arg.as<sem::Unit>());

  SemValue id = denote_value(parse_term("fn x : 1 => x"));
  const sem::Closure* c = id.as<sem::Closure>();
  REQUIRE(c);
  CHECK(c->env.empty());
  CHECK(c->binder == "x");
  CHECK(c->body.as<tm::Var>());

  CHECK(denote_value(parse_term("fn y : 1 => y")) == id);
  CHECK_FALSE(denote_value(parse_term("fn y : Bool => y")) == id);
  CHECK_THROWS_AS(denote_value(parse_term("(fn x : 1 => x) ()")), std::invalid_argument);
  CHECK_THROWS_AS(denote_value(parse_term("x")), std::invalid_argument);
}

TEST_CASE("basic denotations") {
  for (std::uint64_t f : {0, 1, 5}) {
    SemDist d = denote(derived::unit_value(), Fuel{f});
    CHECK(d.entries.size() == 1);
    CHECK(mass_of(d, derived::unit_value()) == 1);
  }
  SemDist fair = denote(parse_term("tt or[1/3] ff"), Fuel{0});
  CHECK(fair.entries.size() == 2);
  CHECK(fair.at("in2(())") == q(1, 3));
  CHECK(fair.at("in1(())") == q(2, 3));
  CHECK(mass_of(fair, derived::tt()) == q(1, 3));

  SemDist pair = denote(parse_term("(tt or[1/2] ff, tt or[1/4] ff)"), Fuel{0});
  CHECK(pair.entries.size() == 4);
  CHECK(mass_of(pair, parse_term("(tt, ff)")) == q(3, 8));

  // one beta: nothing at fuel 0
  Term beta = parse_term("(fn x : 1 => x) ()");
  CHECK(denote(beta, Fuel{0}).mass() == 0);
  CHECK(mass_of(denote(beta, Fuel{1}), derived::unit_value()) == 1);

  CHECK(denote(derived::omega(), Fuel{500}).mass() == 0);
}

TEST_CASE("closures capture only their free variables") {
  SemDist d = denote(parse_term("let y = tt in let z = ff in fn u : 1 => y"), Fuel{5});
  REQUIRE(d.entries.size() == 1);
  const sem::Closure* c = d.entries.begin()->second.value.as<sem::Closure>();
  REQUIRE(c);
  CHECK(c->env.size() == 1);
  CHECK(c->env.count("y") == 1);
  // Equal to the syntactic value the operational side would reach.
  Term reached = explore(parse_term("let y = tt in let z = ff in fn u : 1 => y"), 10).values.begin()->second.value;
  CHECK(d.entries.begin()->second.value == denote_value(reached));
}

TEST_CASE("coins at fuel 4k has unit mass 1 - 2^-k") {
  Term m = coins_run();
  for (unsigned f = 0; f <= 120; ++f) {
    CAPTURE(f);
    SemDist d = denote(m, Fuel{f});
    CHECK(d.entries.size() <= 1);
    CHECK(mass_of(d, derived::unit_value()) == 1 - pow2_inverse(f / 4));
  }
}

TEST_CASE("denotation and halting agree round by round on coins") {
  // Unit mass at a fuel and halting mass at a step count that complete the same rounds.
  for (unsigned k = 1; k <= 20; ++k) {
    CAPTURE(k);
    unsigned n = 6 + 7 * (k - 1);
    REQUIRE(coin_rounds(n) == k);
    CHECK(mass_of(denote(coins_run(), Fuel{4 * k}), derived::unit_value()) ==
          halt_lower_bound(coins_run(), n));
  }
}

TEST_CASE("geometric counter denotes 2^-n on n") {
  SemDist d = denote(geometric_run(), Fuel{200});
  for (unsigned n = 1; n <= 8; ++n) {
    CAPTURE(n);
    CHECK(mass_of(d, derived::numeral(n)) == pow2_inverse(n));
  }
  CHECK(mass_of(d, derived::zero()) == 0);
}

TEST_CASE("fuel monotonicity") {
  std::vector<Term> programs = {coins_run(), geometric_run(), derived::omega(), parse_term("tt or[1/3] ff"),
                                parse_term("(fn x : Bool => case x of inl u => ff | inr u => tt) (tt or[1/5] ff)")};
  for (const Term& m : programs) {
    SemDist prev = denote(m, Fuel{0});
    for (std::uint64_t f = 1; f <= 60; ++f) {
      SemDist next = denote(m, Fuel{f});
      CHECK(pointwise_leq(prev, next));
      CHECK(next.mass() <= 1);
      prev = next;
    }
  }
}

TEST_CASE("one-step soundness") {
  SoundnessReport coin = soundness_check(parse_term("tt or[1/2] ff"), Fuel{0});
  CHECK(coin.rule == RedexKind::Choice);
  CHECK(coin.equal);
  CHECK(coin.lhs.at("in2(())") == q(1, 2));

  SoundnessReport beta = soundness_check(parse_term("(fn x : 1 => x) ()"), Fuel{1});
  CHECK(beta.rule == RedexKind::Beta);
  CHECK(beta.equal);
  CHECK(beta.lhs.mass() == 1);
  CHECK(soundness_check(parse_term("(fn x : 1 => x) ()"), Fuel{0}).equal);

  // recursive terms too, at every budget: both sides spend the same betas
  for (std::uint64_t f = 0; f < 30; ++f) {
    CHECK(soundness_check(coins_run(), Fuel{f}).equal);
    CHECK(soundness_check(geometric_run(), Fuel{f}).equal);
  }

  TermGenerator gen(31);
  int checked = 0;
  while (checked < 200) {
    Term m = gen.closed_program().first;
    if (is_value(m)) continue;
    REQUIRE(is_recursion_free(m));
    SoundnessReport r = soundness_check(m, plenty);
    INFO(pretty(m));
    CHECK(r.equal);
    ++checked;
  }
}

TEST_CASE("one-step soundness on generated recursive programs") {
  TermGenerator gen(32, {30, 6, true});
  for (int i = 0; i < 100; ++i) {
    Term m = gen.closed_program().first;
    if (is_value(m)) continue;
    INFO(pretty(m));
    CHECK(soundness_check(m, Fuel{12}).equal);
  }
}

TEST_CASE("adequacy on recursion-free programs is exact") {
  AdequacyReport unit = adequacy_check(derived::unit_value(), Fuel{0}, 0, 0);
  CHECK(unit.exact_mode);
  CHECK(unit.pass);

  TermGenerator gen(33);
  for (int i = 0; i < 200; ++i) {
    Term m = gen.closed_program().first;
    INFO(pretty(m));
    AdequacyReport r = adequacy_check(m, plenty, 100000, 0);
    CHECK(r.exact_mode);
    CHECK(r.live_mass == 0);
    CHECK(r.denotational.mass() == 1);
    CHECK(r.max_pointwise_gap == 0);
    CHECK(r.pass);
  }
}

TEST_CASE("adequacy on recursive programs within a tolerance") {
  Rational tol = q(1, 1000000);
  AdequacyReport coins = adequacy_check(coins_run(), Fuel{100}, 200, tol);
  CHECK_FALSE(coins.exact_mode);
  CHECK(coins.denotational_monotone);
  CHECK(coins.operational_monotone);
  CHECK(coins.max_pointwise_gap <= tol);
  CHECK(coins.denotational.mass() >= 1 - tol);
  CHECK(coins.pass);

  AdequacyReport geo = adequacy_check(geometric_run(), Fuel{200}, 300, tol);
  CHECK(geo.pass);

  // too small a budget on one side shows up as a gap
  AdequacyReport short_run = adequacy_check(coins_run(), Fuel{100}, 20, tol);
  CHECK_FALSE(short_run.pass);

  AdequacyReport omega = adequacy_check(derived::omega(), Fuel{100}, 100, tol);
  CHECK(omega.denotational.mass() == 0);
  CHECK(omega.pass);
}

TEST_CASE("let bindings commute") {
  Term m1 = parse_term("tt or[1/2] ff");
  Term m2 = parse_term("tt or[1/3] ff");
  LetCommutativityReport r = let_commutativity_check(m1, m2, "a", "b", parse_term("(a, b)"), plenty);
  CHECK(r.equal);
  CHECK(r.first_dist.entries.size() == 4);
  CHECK(mass_of(r.first_dist, parse_term("(tt, tt)")) == q(1, 6));
  CHECK(mass_of(r.first_dist, parse_term("(tt, ff)")) == q(1, 3));
  CHECK(mass_of(r.first_dist, parse_term("(ff, tt)")) == q(1, 6));
  CHECK(mass_of(r.first_dist, parse_term("(ff, ff)")) == q(1, 3));

  CHECK(let_commutativity_check(derived::unit_value(), derived::unit_value(), "a", "b", parse_term("a"), plenty)
            .equal);
  CHECK_THROWS_AS(let_commutativity_check(m1, m2, "a", "a", parse_term("a"), plenty), std::invalid_argument);

  TermGenerator gen(34);
  for (int i = 0; i < 100; ++i) {
    Type a1 = gen.random_type(), a2 = gen.random_type(), b = gen.random_type();
    Term t1 = gen.closed_term(a1), t2 = gen.closed_term(a2);
    Term n = gen.term({{"y1", a1}, {"y2", a2}}, b);
    LetCommutativityReport lr = let_commutativity_check(t1, t2, "y1", "y2", n, plenty);
    INFO(pretty(lr.first));
    CHECK(lr.equal);
    CHECK(try_check_program(lr.first).has_value());
    // still equal when the budget runs out part way
    CHECK(let_commutativity_check(t1, t2, "y1", "y2", n, Fuel{3}).equal);
  }
}

TEST_CASE("total mass is one when exploration finishes") {
  TermGenerator gen(35, {30, 6, true});
  for (int i = 0; i < 60; ++i) {
    Term m = gen.closed_program().first;
    DistReport r = explore(m, 60);
    SemDist d = denote(m, Fuel{40});
    CHECK(d.mass() <= 1);
    if (r.live_mass == 0) CHECK(operational_dist(r).mass() == 1);
  }
}
