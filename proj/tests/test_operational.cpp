#include <doctest.h>

#include <cmath>

#include "pfpc/derived.hpp"
#include "pfpc/distribution.hpp"
#include "pfpc/generator.hpp"
#include "pfpc/operational.hpp"
#include "pfpc/syntax.hpp"
#include "pfpc/typecheck.hpp"

using namespace pfpc;

namespace {

Term coins_run() { return Term::app(derived::coins(), derived::unit_value()); }

// Completed coin rounds within n steps. Traced by hand on the fix encoding:
// 3 steps unroll fix, then each round is beta, choice, case (6 to the first
// possible halt) and a failed round costs 4 more to re-enter the body.
unsigned coin_rounds(unsigned n) { return n < 6 ? 0 : (n - 6) / 7 + 1; }

Rational mass_of(const DistReport& r, const Term& v) {
  auto it = r.values.find(alpha_key(v));
  return it == r.values.end() ? Rational(0) : it->second.probability;
}

}  // namespace

TEST_CASE("values do not step and do not decompose") {
  CHECK_FALSE(decompose(derived::unit_value()));
  CHECK_THROWS_AS(step(derived::tt()), std::invalid_argument);
}

TEST_CASE("each redex contracts as specified") {
  auto only = [](const char* src) {
    WeightedSuccessors s = step(parse_term(src));
    REQUIRE(s.branches.size() == 1);
    CHECK(s.branches[0].probability == 1);
    return s;
  };
  auto s = only("fst (tt, ff)");
  CHECK(s.rule == RedexKind::Projection);
  CHECK(alpha_equivalent(s.branches[0].term, derived::tt()));

  s = only("case tt of inl a => fold[Nat] (inl a) | inr b => fold[Nat] (inl b)");
  CHECK(s.rule == RedexKind::Case);

  s = only("unfold (fold[Nat] (inl ()))");
  CHECK(s.rule == RedexKind::Unfold);
  CHECK(pretty(s.branches[0].term) == "inl ()");

  s = only("(fn x : 1 => x) ()");
  CHECK(s.rule == RedexKind::Beta);
  CHECK(alpha_equivalent(s.branches[0].term, derived::unit_value()));

  s = only("tt or[1] ff");
  CHECK(alpha_equivalent(s.branches[0].term, derived::tt()));
  s = only("tt or[0] ff");
  CHECK(alpha_equivalent(s.branches[0].term, derived::ff()));

  WeightedSuccessors c = step(parse_term("tt or[1/3] ff"));
  REQUIRE(c.branches.size() == 2);
  CHECK(c.branches[0].probability == Rational(1, 3));
  CHECK(c.branches[1].probability == Rational(2, 3));
}

TEST_CASE("evaluation is left to right and call by value") {
  Term m = parse_term("((fn x : 1 => x) (), (fn y : 1 => y) ())");
  auto d = decompose(m);
  REQUIRE(d);
  REQUIRE(d->context.size() == 1);
  CHECK(std::holds_alternative<frame::PairLeft>(d->context[0]));
  CHECK(alpha_equivalent(plug(d->context, d->redex), m));

  // The argument is evaluated before the beta step.
  Term app = parse_term("(fn b : Bool => b) (tt or[1/2] ff)");
  CHECK(step(app).rule == RedexKind::Choice);
}

TEST_CASE("stuck terms are reported") {
  CHECK_THROWS_AS(step(Term::proj(1, derived::tt())), StuckTerm);
  CHECK_THROWS_AS(step(Term::app(derived::tt(), derived::tt())), StuckTerm);
  CHECK_THROWS_AS(step(Term::app(Term::var("f"), derived::tt())), StuckTerm);
}

TEST_CASE("explore on small programs") {
  DistReport unit = explore(derived::unit_value(), 5);
  CHECK(unit.live_mass == 0);
  CHECK(mass_of(unit, derived::unit_value()) == 1);
  CHECK(halt_lower_bound(derived::unit_value(), 0) == 1);

  DistReport fair = explore(parse_term("tt or[1/3] ff"), 1);
  CHECK(mass_of(fair, derived::tt()) == Rational(1, 3));
  CHECK(mass_of(fair, derived::ff()) == Rational(2, 3));
  CHECK(fair.live_mass == 0);
}

TEST_CASE("omega never halts") {
  DistReport r = explore(derived::omega(), 200);
  CHECK(r.halted_mass() == 0);
  CHECK(r.live_mass == 1);
  CHECK(r.frontier_size == 1);
}

TEST_CASE("coins halts with probability 1 - 2^-k after k rounds") {
  DistReport r = explore(coins_run(), 80);
  REQUIRE(r.per_depth_halt.size() == 81);
  for (unsigned n = 0; n <= 80; ++n) {
    CAPTURE(n);
    CHECK(r.per_depth_halt[n] == 1 - pow2_inverse(coin_rounds(n)));
  }
  CHECK(halt_lower_bound(coins_run(), 139) >= Rational(999999, 1000000));
  CHECK(halt_lower_bound(coins_run(), 138) < Rational(999999, 1000000));
}

TEST_CASE("geometric counter puts mass 2^-n on n") {
  DistReport r = explore(Term::app(derived::geometric_counter(), derived::zero()), 200);
  for (unsigned n = 1; n <= 8; ++n) {
    CAPTURE(n);
    CHECK(mass_of(r, derived::numeral(n)) == pow2_inverse(n));
  }
  CHECK(mass_of(r, derived::zero()) == 0);
  CHECK(r.halted_mass() + r.live_mass == 1);
}

TEST_CASE("conservation and monotonicity on generated programs") {
  TermGenerator gen(5, {30, 6, true});
  for (int i = 0; i < 150; ++i) {
    Term m = gen.closed_program().first;
    DistReport r = explore(m, 25);
    CHECK(r.halted_mass() + r.live_mass == 1);
    for (std::size_t d = 1; d < r.per_depth_halt.size(); ++d) CHECK(r.per_depth_halt[d - 1] <= r.per_depth_halt[d]);
  }
}

TEST_CASE("value mass grows pointwise with the depth") {
  Term m = Term::app(derived::geometric_counter(), derived::zero());
  DistReport small = explore(m, 30);
  DistReport large = explore(m, 31);
  for (const auto& [key, vm] : small.values) CHECK(vm.probability <= large.values.at(key).probability);
}

TEST_CASE("merging does not change value mass") {
  TermGenerator gen(17, {24, 6, true});
  for (int i = 0; i < 100; ++i) {
    Term m = gen.closed_program().first;
    DistReport a = explore(m, 12, {default_max_frontier(), true});
    DistReport b = explore(m, 12, {default_max_frontier(), false});
    REQUIRE(a.values.size() == b.values.size());
    for (const auto& [key, vm] : a.values) CHECK(b.values.at(key).probability == vm.probability);
    CHECK(a.live_mass == b.live_mass);
  }
}

TEST_CASE("frontier cap raises instead of truncating") {
  Term flips = parse_term(
      "let a = tt or[1/2] ff in let b = tt or[1/2] ff in let c = tt or[1/2] ff in (a, (b, c))");
  CHECK_THROWS_AS(explore(flips, 20, {2, false}), ResourceLimit);
}

TEST_CASE("sampling") {
  Outcome o = sample_run(derived::unit_value(), 10, 1);
  REQUIRE(o.value);
  CHECK(o.steps == 0);

  for (std::uint64_t s = 0; s < 20; ++s) {
    Outcome d = sample_run(parse_term("tt or[1] ff"), 10, s);
    REQUIRE(d.value);
    CHECK(alpha_equivalent(*d.value, derived::tt()));
    CHECK(d.steps == 1);
  }

  CHECK_FALSE(sample_run(derived::omega(), 50, 3).value);

  // Runs are reproducible.
  Term coins = coins_run();
  CHECK(sample_run(coins, 500, 42).steps == sample_run(coins, 500, 42).steps);
}

TEST_CASE("empirical frequencies stay within three standard errors") {
  const unsigned trials = 100000;
  DistReport e = estimate(parse_term("tt or[1/3] ff"), trials, 5, 2024);
  double p = 1.0 / 3.0;
  double sigma = std::sqrt(p * (1 - p) / trials);
  double freq = to_double(mass_of(e, derived::tt()));
  CHECK(std::abs(freq - p) <= 3 * sigma);

  DistReport c = estimate(coins_run(), 10000, 500, 7);
  CHECK(to_double(c.halted_mass()) >= 0.999);

  DistReport v = estimate(derived::tt(), 50, 5, 1);
  CHECK(mass_of(v, derived::tt()) == 1);
}

TEST_CASE("sampled traces record each step") {
  Term m = parse_term("tt or[1/3] ff");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SampledTrace t = sample_trace(m, 5, seed);
    REQUIRE(t.steps.size() == 1);
    CHECK(t.halted);
    CHECK(t.steps[0].rule == RedexKind::Choice);
    bool left = alpha_equivalent(t.steps[0].term, derived::tt());
    CHECK(t.steps[0].probability == (left ? Rational(1, 3) : Rational(2, 3)));
    Outcome o = sample_run(m, 5, seed);
    REQUIRE(o.value);
    CHECK(alpha_equivalent(*o.value, t.steps[0].term));
  }
  SampledTrace stopped = sample_trace(derived::omega(), 7, 1);
  CHECK_FALSE(stopped.halted);
  CHECK(stopped.steps.size() == 7);
  SampledTrace at_once = sample_trace(derived::unit_value(), 7, 1);
  CHECK(at_once.halted);
  CHECK(at_once.steps.empty());
}
