#include "pfpc/derived.hpp"

namespace pfpc::derived {

Term unit_value() { return Term::lam("x", empty_type(), Term::var("x")); }
Term ff() { return Term::inj(1, unit_value(), bool_type()); }
Term tt() { return Term::inj(2, unit_value(), bool_type()); }
Term zero() { return Term::fold(nat_type(), Term::inj(1, unit_value())); }
Term succ() { return Term::lam("n", nat_type(), Term::fold(nat_type(), Term::inj(2, Term::var("n")))); }

Term numeral(unsigned n) {
  Term out = zero();
  for (unsigned i = 0; i < n; ++i) out = Term::fold(nat_type(), Term::inj(2, out));
  return out;
}

Term let(std::string x, Term bound, Term body) {
  return Term::app(Term::lam(std::move(x), std::nullopt, std::move(body)), std::move(bound));
}

Type fix_carrier(const Type& domain, const Type& codomain) {
  std::string x = "X";
  auto taken = free_type_vars(domain);
  auto more = free_type_vars(codomain);
  taken.insert(more.begin(), more.end());
  for (int i = 1; taken.contains(x); ++i) x = "X" + std::to_string(i);
  return Type::mu(x, Type::arrow(Type::var(x), Type::arrow(domain, codomain)));
}

Term fix(const Type& domain, const Type& codomain) {
  Type fn_type = Type::arrow(domain, codomain);
  Type carrier = fix_carrier(domain, codomain);
  // fn a : A => unfold x x a
  Term delayed = Term::lam(
      "a", domain,
      Term::app(Term::app(Term::unfold(Term::var("x")), Term::var("x")), Term::var("a")));
  Term self = Term::lam("x", carrier, Term::app(Term::var("f"), delayed));
  Term body = Term::app(self, Term::fold(carrier, self));
  return Term::lam("f", Type::arrow(fn_type, fn_type), body);
}

std::optional<std::pair<Type, Type>> match_fix(const Term& m) {
  auto lam = m.as<tm::Lam>();
  if (!lam || !lam->domain) return std::nullopt;
  auto outer = lam->domain->as<ty::Arrow>();
  if (!outer) return std::nullopt;
  auto fn = outer->domain.as<ty::Arrow>();
  if (!fn || !alpha_equal(outer->domain, outer->codomain)) return std::nullopt;
  if (alpha_key(m) != alpha_key(fix(fn->domain, fn->codomain))) return std::nullopt;
  return std::make_pair(fn->domain, fn->codomain);
}

Term coins() {
  Type u = unit_type();
  Term step = Term::case_of(Term::choice(Rational(1, 2), ff(), tt()), "z", unit_value(), "z",
                            Term::app(Term::var("f"), Term::var("x")));
  Term functional = Term::lam("f", Type::arrow(u, u), Term::lam("x", u, step));
  return Term::app(fix(u, u), functional);
}

Term geometric_counter() {
  Type n = nat_type();
  Term next = Term::app(succ(), Term::var("n"));
  Term step = Term::case_of(Term::choice(Rational(1, 2), ff(), tt()), "z", next, "z",
                            Term::app(Term::var("f"), next));
  Term functional = Term::lam("f", Type::arrow(n, n), Term::lam("n", n, step));
  return Term::app(fix(n, n), functional);
}

Term omega() {
  Type carrier = Type::mu("X", Type::arrow(Type::var("X"), unit_type()));
  Term self_apply = Term::lam("x", carrier, Term::app(Term::unfold(Term::var("x")), Term::var("x")));
  return Term::app(self_apply, Term::fold(carrier, self_apply));
}

}  // namespace pfpc::derived
