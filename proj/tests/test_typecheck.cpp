#include <doctest.h>

#include "pfpc/derived.hpp"
#include "pfpc/generator.hpp"
#include "pfpc/syntax.hpp"
#include "pfpc/typecheck.hpp"

using namespace pfpc;

namespace {
std::string type_of(const char* src) { return pretty(check_program(parse_term(src))); }

TypeErrorKind kind_of(const char* src) {
  try {
    check_program(parse_term(src));
  } catch (const TypeError& e) {
    return e.kind();
  }
  FAIL("expected a type error for " << src);
  return TypeErrorKind::Mismatch;
}
}  // namespace

TEST_CASE("basic programs get their types") {
  CHECK(type_of("()") == "1");
  CHECK(type_of("tt or[1/3] ff") == "Bool");
  CHECK(type_of("fn x : 1 => x") == "1 -> 1");
  CHECK(type_of("fold[Nat] (inl ())") == "Nat");
  CHECK(type_of("(tt, fold[Nat] (inl ()))") == "Bool * Nat");
  CHECK(type_of("let x = tt in case x of inl a => ff | inr b => tt") == "Bool");
  CHECK(type_of("unfold (fold[Nat] (inl ()))") == "1 + Nat");
  CHECK(type_of("fn p : Bool * Nat => snd p") == "Bool * Nat -> Nat");
}

TEST_CASE("derived programs") {
  CHECK(pretty(check_program(derived::coins())) == "1 -> 1");
  CHECK(pretty(check_program(Term::app(derived::coins(), derived::unit_value()))) == "1");
  CHECK(pretty(check_program(Term::app(derived::geometric_counter(), derived::zero()))) == "Nat");
  CHECK(pretty(check_program(derived::omega())) == "1");
  CHECK(pretty(check_program(derived::fix(bool_type(), nat_type()))) ==
        "((Bool -> Nat) -> Bool -> Nat) -> Bool -> Nat");
}

TEST_CASE("error kinds") {
  CHECK(kind_of("x") == TypeErrorKind::UnboundVariable);
  CHECK(kind_of("fst ()") == TypeErrorKind::Mismatch);
  CHECK(kind_of("tt ()") == TypeErrorKind::Mismatch);
  CHECK(kind_of("(fn x : Bool => x) ()") == TypeErrorKind::Mismatch);
  CHECK(kind_of("inl ()") == TypeErrorKind::AnnotationMismatch);
  CHECK(kind_of("fn x : X => x") == TypeErrorKind::NonClosedType);
  CHECK(kind_of("fold[Bool] ()") == TypeErrorKind::AnnotationMismatch);
  CHECK(kind_of("tt or[1/2] ()") == TypeErrorKind::Mismatch);

  CHECK_THROWS_AS(infer({{"x", unit_type()}, {"x", bool_type()}}, Term::var("x")), TypeError);
  CHECK_THROWS_AS(infer({{"x", Type::var("X")}}, Term::var("x")), TypeError);
}

TEST_CASE("type errors name the rule and the types") {
  try {
    check_program(parse_term("(fn x : Bool => x) ()"));
    FAIL("no error");
  } catch (const TypeError& e) {
    CHECK(e.rule() == "application");
    REQUIRE(e.expected());
    REQUIRE(e.actual());
    CHECK(pretty(*e.expected()) == "Bool");
    CHECK(pretty(*e.actual()) == "1");
    CHECK(std::string(e.what()).find("application") != std::string::npos);
  }
}

TEST_CASE("unannotated injections check against context") {
  CHECK(type_of("fold[Nat] (inr (fold[Nat] (inl ())))") == "Nat");
  CHECK(type_of("(fn b : Bool => b) (inl ())") == "Bool");
  CHECK(type_of("tt or[1/2] inl ()") == "Bool");
}

TEST_CASE("well-formed types") {
  CHECK_NOTHROW(wf_type({}, parse_type("mu X. X -> 1")));
  CHECK_NOTHROW(wf_type({"X"}, Type::var("X")));
  CHECK_THROWS_AS(wf_type({}, Type::var("X")), TypeError);
  CHECK_THROWS_AS(wf_type({"X", "X"}, unit_type()), TypeError);
}

TEST_CASE("generated terms have the type they were generated at") {
  for (bool recursive : {false, true}) {
    TermGenerator gen(recursive ? 11 : 12, {40, 8, recursive});
    for (int i = 0; i < 500; ++i) {
      auto [m, a] = gen.closed_program();
      CAPTURE(pretty(m));
      Type got = check_program(m);
      CHECK(alpha_equal(got, a));
      if (!recursive) CHECK(is_recursion_free(m));
      CHECK(alpha_equivalent(parse_term(pretty(m)), m));
    }
  }
}

TEST_CASE("inference is deterministic and unique up to alpha") {
  TermGenerator gen(99);
  for (int i = 0; i < 200; ++i) {
    auto [m, a] = gen.closed_program();
    CHECK(type_key(check_program(m)) == type_key(check_program(parse_term(pretty(m)))));
  }
}
