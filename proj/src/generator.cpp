#include "pfpc/generator.hpp"

#include "pfpc/derived.hpp"

namespace pfpc {

TermGenerator::TermGenerator(std::uint64_t seed, GeneratorConfig config) : rng_(seed), config_(config) {
  Type one = unit_type();
  Type b = bool_type();
  Type n = nat_type();
  small_pool_ = {one, b, n, Type::prod(b, b), Type::arrow(b, b)};
  pool_ = {one,
           b,
           n,
           Type::prod(one, b),
           Type::prod(b, b),
           Type::sum(b, n),
           Type::arrow(b, b),
           Type::arrow(one, n),
           Type::arrow(n, b),
           Type::arrow(Type::arrow(b, b), b),
           Type::prod(b, Type::arrow(one, b)),
           list_type(b)};
}

int TermGenerator::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

std::string TermGenerator::fresh() { return "x" + std::to_string(counter_++); }

Rational TermGenerator::random_probability() {
  static const Rational choices[] = {Rational(0), Rational(1, 4), Rational(1, 3), Rational(1, 2),
                                     Rational(2, 3), Rational(3, 4), Rational(1)};
  return choices[uniform(0, 6)];
}

Type TermGenerator::random_type() { return pool_[uniform(0, static_cast<int>(pool_.size()) - 1)]; }

Term TermGenerator::closed_term(const Type& a) {
  TermCtx gamma;
  return gen(gamma, a, config_.max_size, 0);
}

Term TermGenerator::term(const TermCtx& gamma, const Type& a) {
  TermCtx scope = gamma;
  return gen(scope, a, config_.max_size, 0);
}

std::pair<Term, Type> TermGenerator::closed_program() {
  Type a = random_type();
  return {closed_term(a), a};
}

std::optional<Term> TermGenerator::pick_var(const TermCtx& gamma, const Type& a) {
  std::vector<std::string> hits;
  for (auto it = gamma.rbegin(); it != gamma.rend(); ++it) {
    bool shadowed = false;
    for (auto jt = gamma.rbegin(); jt != it; ++jt)
      if (jt->first == it->first) shadowed = true;
    if (!shadowed && alpha_equal(it->second, a)) hits.push_back(it->first);
  }
  if (hits.empty()) return std::nullopt;
  return Term::var(hits[uniform(0, static_cast<int>(hits.size()) - 1)]);
}

std::optional<Term> TermGenerator::minimal(TermCtx& gamma, const Type& a, int guard) {
  if (auto v = pick_var(gamma, a)) return v;
  if (alpha_equal(a, unit_type())) return derived::unit_value();
  if (auto f = a.as<ty::Arrow>()) {
    std::string x = fresh();
    gamma.emplace_back(x, f->domain);
    auto body = minimal(gamma, f->codomain, guard);
    gamma.pop_back();
    if (!body) return std::nullopt;
    return Term::lam(x, f->domain, *body);
  }
  if (auto p = a.as<ty::Prod>()) {
    auto l = minimal(gamma, p->left, guard);
    auto r = minimal(gamma, p->right, guard);
    if (!l || !r) return std::nullopt;
    return Term::pair(*l, *r);
  }
  if (auto s = a.as<ty::Sum>()) {
    if (auto l = minimal(gamma, s->left, guard)) return Term::inj(1, *l, a);
    if (auto r = minimal(gamma, s->right, guard)) return Term::inj(2, *r, a);
    return std::nullopt;
  }
  if (a.as<ty::Mu>() && guard > 0) {
    if (auto inner = minimal(gamma, unfold_mu(a), guard - 1)) return Term::fold(a, *inner);
  }
  return std::nullopt;
}

Term TermGenerator::with_bound(TermCtx& gamma, const std::string& x, const Type& a, const Type& b, int budget,
                               int depth) {
  gamma.emplace_back(x, a);
  Term body = gen(gamma, b, budget, depth);
  gamma.pop_back();
  return body;
}

Term TermGenerator::intro(TermCtx& gamma, const Type& a, int budget, int depth) {
  if (alpha_equal(a, unit_type())) return derived::unit_value();
  if (auto f = a.as<ty::Arrow>()) {
    std::string x = fresh();
    return Term::lam(x, f->domain, with_bound(gamma, x, f->domain, f->codomain, budget - 1, depth));
  }
  if (auto p = a.as<ty::Prod>()) {
    int left = uniform(0, budget - 1);
    return Term::pair(gen(gamma, p->left, left, depth), gen(gamma, p->right, budget - 1 - left, depth));
  }
  if (auto s = a.as<ty::Sum>()) {
    int i = uniform(1, 2);
    return Term::inj(i, gen(gamma, i == 1 ? s->left : s->right, budget - 1, depth), a);
  }
  if (a.as<ty::Mu>()) return Term::fold(a, gen(gamma, unfold_mu(a), budget - 1, depth));
  auto fallback = minimal(gamma, a, 4);
  if (!fallback) throw std::logic_error("generator asked for an uninhabited type " + pretty(a));
  return *fallback;
}

Term TermGenerator::gen(TermCtx& gamma, const Type& a, int budget, int depth) {
  if (budget <= 1 || depth >= config_.max_depth) {
    auto m = minimal(gamma, a, 4);
    if (!m) throw std::logic_error("generator asked for an uninhabited type " + pretty(a));
    return *m;
  }
  // Type 0 only ever arises under the binder of (); the variable is the only inhabitant.
  if (alpha_equal(a, empty_type())) return *minimal(gamma, a, 0);

  int rest = budget - 1;
  int split = uniform(0, rest);
  switch (uniform(0, 11)) {
    case 0:
    case 1:
      if (auto v = pick_var(gamma, a)) return *v;
      return intro(gamma, a, budget, depth);
    case 2:
    case 3:
    case 4:
      return intro(gamma, a, budget, depth);
    case 5:
      return Term::choice(random_probability(), gen(gamma, a, split, depth + 1),
                          gen(gamma, a, rest - split, depth + 1));
    case 6: {
      Type dom = small_pool_[uniform(0, static_cast<int>(small_pool_.size()) - 1)];
      return Term::app(gen(gamma, Type::arrow(dom, a), split, depth + 1), gen(gamma, dom, rest - split, depth + 1));
    }
    case 7: {
      Type b = bool_type();
      Type scrutinee_type = uniform(0, 1) == 0 ? Type::sum(b, nat_type()) : b;
      Term scrutinee = gen(gamma, scrutinee_type, split / 2, depth + 1);
      if (config_.allow_recursion && uniform(0, 2) == 0) {
        scrutinee_type = unfold_mu(nat_type());
        scrutinee = Term::unfold(gen(gamma, nat_type(), split / 2, depth + 1));
      }
      auto sum = scrutinee_type.as<ty::Sum>();
      std::string x = fresh();
      std::string y = fresh();
      int side = rest - split / 2;
      return Term::case_of(scrutinee, x, with_bound(gamma, x, sum->left, a, side / 2, depth + 1), y,
                           with_bound(gamma, y, sum->right, a, side - side / 2, depth + 1));
    }
    case 8: {
      Type bound_type = small_pool_[uniform(0, static_cast<int>(small_pool_.size()) - 1)];
      std::string x = fresh();
      Term bound = gen(gamma, bound_type, split, depth + 1);
      return derived::let(x, bound, with_bound(gamma, x, bound_type, a, rest - split, depth + 1));
    }
    case 9: {
      Type other = small_pool_[uniform(0, static_cast<int>(small_pool_.size()) - 1)];
      if (uniform(0, 1) == 0) return Term::proj(1, gen(gamma, Type::prod(a, other), rest, depth + 1));
      return Term::proj(2, gen(gamma, Type::prod(other, a), rest, depth + 1));
    }
    case 10:
      if (config_.allow_recursion) {
        if (auto f = a.as<ty::Arrow>()) {
          // fix[A->B] (fn g : A -> B => fn x : A => body), the body may call g.
          std::string g = fresh();
          std::string x = fresh();
          gamma.emplace_back(g, a);
          Term body = with_bound(gamma, x, f->domain, f->codomain, rest - 2, depth + 1);
          gamma.pop_back();
          Term functional = Term::lam(g, a, Term::lam(x, f->domain, body));
          return Term::app(derived::fix(f->domain, f->codomain), functional);
        }
        if (alpha_equal(a, unfold_mu(nat_type())))
          return Term::unfold(gen(gamma, nat_type(), rest, depth + 1));
      }
      return intro(gamma, a, budget, depth);
    default:
      if (auto v = pick_var(gamma, a)) return *v;
      return intro(gamma, a, budget, depth);
  }
}

}  // namespace pfpc
